use std::fmt;

use crate::exactalg::{image_basis, kernel_basis, Echelon, QMatrix, Rational, SparseVec};
use crate::{Error, Result};

use super::{block_layout, scalar_matrix, unit_images, GammaSheaf, ImageAlgorithm, LOWER, UPPER};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurityViolation {
    /// 1: free stalks, 2: down-edge quotients, 3: matching images.
    pub axiom: u8,
    pub vertex: String,
    pub degree: Option<usize>,
    pub detail: String,
}

impl fmt::Display for PurityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom ({}) fails at {}", self.axiom, self.vertex)?;
        if let Some(d) = self.degree {
            write!(f, " in degree {d}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Clone, Debug, Default)]
pub struct PurityReport {
    pub violations: Vec<PurityViolation>,
    /// Number of (vertex, degree) image comparisons made.
    pub comparisons: usize,
}

impl PurityReport {
    pub fn is_pure(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&PurityViolation> {
        self.violations.first()
    }
}

fn same_space(a: &Echelon, b: &Echelon) -> bool {
    a.rank() == b.rank() && a.basis().iter().all(|v| b.contains(v))
}

/// Image of `M_x -> M(U_x)` in degree `d`.
fn stalk_image(sheaf: &GammaSheaf, x: usize, d: usize) -> Echelon {
    let up = sheaf.graph().up_edges(x);
    let total: usize = up.iter().map(|&e| sheaf.edge_dim(e, d)).sum();
    let mut rows = Vec::with_capacity(total);
    for &e in up {
        rows.extend(sheaf.rho_matrix(x, e, d).rows().iter().cloned());
    }
    let m = QMatrix::from_rows(sheaf.vertex_dim(x, d), rows);
    Echelon::from_vectors(total, image_basis(&m))
}

/// Checks the three purity axioms, the image comparison up to one degree
/// past each vertex's bound.
pub fn verify_pure(sheaf: &GammaSheaf) -> PurityReport {
    let g = sheaf.graph();
    let mut report = PurityReport::default();
    let mut order = g.linear_extension();
    order.reverse();
    for &x in &order {
        let gens = sheaf.vertex_generators(x);
        let incident = g.incident_edges(x);
        if let Some(&e) = incident.iter().find(|&&e| sheaf.rho(x, e).images.len() != gens.len()) {
            report.violations.push(PurityViolation {
                axiom: 1,
                vertex: g.label(x).to_string(),
                degree: None,
                detail: format!("restriction to edge {e} does not match the stalk's generators"),
            });
            continue;
        }
        if !sheaf.has_quotient_down_edges(x) {
            report.violations.push(PurityViolation {
                axiom: 2,
                vertex: g.label(x).to_string(),
                degree: None,
                detail: "an edge below is not the quotient of the stalk by its direction".into(),
            });
        }
    }
    for &x in &order {
        if g.up_edges(x).is_empty() {
            continue;
        }
        for d in 0..=sheaf.degree_bound(x) + 1 {
            report.comparisons += 1;
            let boundary = super::boundary_image(sheaf, x, d, ImageAlgorithm::Sections);
            let stalk = stalk_image(sheaf, x, d);
            if !same_space(&boundary, &stalk) {
                report.violations.push(PurityViolation {
                    axiom: 3,
                    vertex: g.label(x).to_string(),
                    degree: Some(d),
                    detail: format!(
                        "stalk image has dimension {} but the boundary image has dimension {}",
                        stalk.rank(),
                        boundary.rank()
                    ),
                });
                break;
            }
        }
    }
    report
}

/// Removes block `i` from an element of a free module laid out in degree `deg`.
fn drop_block(vars: usize, gens: &[usize], i: usize, v: &SparseVec, deg: usize) -> SparseVec {
    let (offs, _) = block_layout(vars, gens, deg);
    let blocks: Vec<(SparseVec, usize)> = gens
        .iter()
        .enumerate()
        .filter(|&(k, &g)| k != i && g <= deg)
        .map(|(k, &g)| {
            let len = crate::exactalg::graded_dim(vars, deg - g);
            (v.slice(offs[k].unwrap(), len), len)
        })
        .collect();
    SparseVec::concat(blocks.iter().map(|(b, n)| (b, *n)))
}

/// A copy of `sheaf` with generator `i` of the stalk at `x` removed, along
/// with the matching generator of every edge below `x`.
pub fn drop_generator(sheaf: &GammaSheaf, x: usize, i: usize) -> Result<GammaSheaf> {
    if i >= sheaf.vertex_gens[x].len() {
        return Err(Error::Validation(format!("stalk at {} has no generator {i}", sheaf.graph().label(x))));
    }
    let mut out = sheaf.clone();
    out.vertex_gens[x].remove(i);
    for &e in sheaf.graph().up_edges(x) {
        out.rho[e][LOWER].images.remove(i);
    }
    for &e in sheaf.graph().down_edges(x) {
        let vars = sheaf.edge_rings[e].nvars();
        let old = &sheaf.edge_gens[e];
        let lower = sheaf.graph().edge(e).lower;
        out.rho[e][LOWER].images = sheaf.rho[e][LOWER]
            .images
            .iter()
            .zip(&sheaf.vertex_gens[lower])
            .map(|(v, &deg)| drop_block(vars, old, i, v, deg))
            .collect();
        out.edge_gens[e].remove(i);
        out.rho[e][UPPER].images = unit_images(vars, &out.edge_gens[e]);
    }
    Ok(out)
}

/// Whether the only degree-0 endomorphism of the sheaf that commutes with
/// every restriction map and vanishes on the stalk at the top is zero.
pub fn rigidity_check(sheaf: &GammaSheaf) -> Result<bool> {
    let g = sheaf.graph();
    let top = g.unique_maximal()?;
    // Unknown blocks: one per vertex generator, then one per edge generator.
    let mut vertex_off: Vec<Vec<usize>> = Vec::new();
    let mut total = 0;
    for x in 0..g.num_vertices() {
        let offs = sheaf.vertex_gens[x]
            .iter()
            .map(|&d| {
                let o = total;
                total += sheaf.vertex_dim(x, d);
                o
            })
            .collect();
        vertex_off.push(offs);
    }
    let mut edge_off: Vec<Vec<usize>> = Vec::new();
    for e in 0..g.num_edges() {
        let offs = sheaf.edge_gens[e]
            .iter()
            .map(|&d| {
                let o = total;
                total += sheaf.edge_dim(e, d);
                o
            })
            .collect();
        edge_off.push(offs);
    }
    let minus = -Rational::ONE;
    let mut rows = Vec::new();
    for (j, &o) in vertex_off[top].iter().enumerate() {
        for k in 0..sheaf.vertex_dim(top, sheaf.vertex_gens[top][j]) {
            rows.push(SparseVec::unit(o + k));
        }
    }
    for e in 0..g.num_edges() {
        let ring = &sheaf.edge_rings[e];
        let egens = &sheaf.edge_gens[e];
        let edge = g.edge(e);
        for z in [edge.lower, edge.upper] {
            for (j, &dj) in sheaf.vertex_gens[z].iter().enumerate() {
                // rho(phi_z(g_j)) - phi_L(rho(g_j)) = 0 in (M_L)_{d_j}
                let rho = sheaf.rho_matrix(z, e, dj);
                let image = &sheaf.rho(z, e).images[j];
                let (img_offs, _) = block_layout(ring.nvars(), egens, dj);
                let mut eq: Vec<SparseVec> = (0..sheaf.edge_dim(e, dj))
                    .map(|r| rho.row(r).shifted(vertex_off[z][j]))
                    .collect();
                for (i, &di) in egens.iter().enumerate() {
                    let Some(off) = img_offs[i] else { continue };
                    let k = dj - di;
                    let c = image.slice(off, ring.dim(k));
                    if c.is_zero() {
                        continue;
                    }
                    let m = scalar_matrix(ring.nvars(), egens, &c, k, di);
                    for (r, row) in eq.iter_mut().enumerate() {
                        *row = row.axpy(&minus, &m.row(r).shifted(edge_off[e][i]));
                    }
                }
                rows.extend(eq.into_iter().filter(|r| !r.is_zero()));
            }
        }
    }
    Ok(kernel_basis(&QMatrix::from_rows(total, rows)).is_empty())
}
