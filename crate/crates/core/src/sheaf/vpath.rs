use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use crate::exactalg::{kernel_basis, quotient_ring, Echelon, LinearForm, QMatrix, QuotientRing, Rational, SparseVec};
use crate::moment_graph::span;
use crate::{Error, Result};

use super::canonical::up_layout;
use super::{block_layout, free_dim, hom_matrix, GammaSheaf};

/// Cap on the number of distinct transported maps kept per vertex, and on
/// the number of subspaces considered by the polygon relations.
pub const PATH_CAP: usize = 10_000;

/// The transport map `(M_x)_V -> (M_y)_V` in one degree.
#[derive(Clone, Debug)]
pub struct VPathMap {
    pub matrix: QMatrix,
    /// All V-paths from `x` to `y` induce the same map.
    pub path_independent: bool,
    /// Number of V-paths from `x` to `y` (saturating).
    pub paths: u128,
    /// The comparison hit [`PATH_CAP`] and is incomplete.
    pub truncated: bool,
}

fn quotient_by(sheaf: &GammaSheaf, v: &Echelon) -> Arc<QuotientRing> {
    let n = sheaf.nvars();
    let forms: Vec<LinearForm> = v.basis().iter().map(|b| LinearForm(b.to_dense(n))).collect();
    quotient_ring(n, &forms)
}

fn direction_vec(d: &[i64]) -> SparseVec {
    SparseVec::from_pairs(d.iter().enumerate().map(|(i, &x)| (i, Rational::from_integer(x))))
}

/// `A_L -> A/V` in degree `k`, for `V` containing `V_L`.
fn edge_to_quotient(sheaf: &GammaSheaf, qv: &QuotientRing, e: usize, k: usize) -> QMatrix {
    qv.reduce_matrix(k).mul(&sheaf.edge_ring(e).lift_matrix(k))
}

/// `(M_L)_d -> (M_u)_{V,d}` for the upper vertex `u` of `L`, using `M_L = M_u / V_L M_u`.
fn edge_to_upper(sheaf: &GammaSheaf, qv: &QuotientRing, e: usize, d: usize) -> QMatrix {
    let gens = sheaf.edge_generators(e);
    let vars = qv.nvars();
    let images: Vec<SparseVec> = (0..gens.len()).map(|i| super::generator_times(vars, gens, i, &SparseVec::unit(0), 0)).collect();
    let reduce = |k: usize| Arc::new(edge_to_quotient(sheaf, qv, e, k));
    hom_matrix(sheaf.edge_ring(e).nvars(), gens, vars, gens, &images, d, Some(&reduce))
}

/// One step of a V-path along edge `e`: `(M_lower)_{V,d} -> (M_upper)_{V,d}`.
fn step_matrix(sheaf: &GammaSheaf, qv: &QuotientRing, e: usize, d: usize) -> QMatrix {
    let edge = sheaf.graph().edge(e);
    let src = sheaf.vertex_generators(edge.lower);
    let tgt = sheaf.edge_generators(e);
    let ring = sheaf.edge_ring(e);
    let vars = qv.nvars();
    let images: Vec<SparseVec> = sheaf
        .rho(edge.lower, e)
        .images
        .iter()
        .zip(src)
        .map(|(img, &deg)| {
            let (offs, _) = block_layout(ring.nvars(), tgt, deg);
            let blocks: Vec<(SparseVec, usize)> = tgt
                .iter()
                .enumerate()
                .filter(|(_, &di)| di <= deg)
                .map(|(i, &di)| {
                    let k = deg - di;
                    let c = img.slice(offs[i].unwrap(), ring.dim(k));
                    (edge_to_quotient(sheaf, qv, e, k).apply(&c), crate::exactalg::graded_dim(vars, k))
                })
                .collect();
            SparseVec::concat(blocks.iter().map(|(b, n)| (b, *n)))
        })
        .collect();
    hom_matrix(vars, src, vars, tgt, &images, d, None)
}

fn check_quotient_edges(sheaf: &GammaSheaf) -> Result<()> {
    let g = sheaf.graph();
    match (0..g.num_vertices()).find(|&y| !sheaf.has_quotient_down_edges(y)) {
        None => Ok(()),
        Some(y) => Err(Error::Domain(format!(
            "V-path transport needs M_L = M_y / V_L M_y on the edges below {}",
            g.label(y)
        ))),
    }
}

/// The map `(M_x)_V -> (M_y)_V` in degree `d` induced by V-paths from `x`
/// to `y`, where `V` is spanned by `v`. Every path is taken into account:
/// the distinct maps reaching each vertex are propagated upwards.
pub fn vpath_map(sheaf: &GammaSheaf, x: usize, y: usize, v: &[Vec<Rational>], d: usize) -> Result<VPathMap> {
    check_quotient_edges(sheaf)?;
    let g = sheaf.graph();
    let n = sheaf.nvars();
    let space = Echelon::from_vectors(n, v.iter().map(|b| SparseVec::from_dense(b)));
    let qv = quotient_by(sheaf, &space);
    let vars = qv.nvars();
    let dim = |z: usize| free_dim(vars, sheaf.vertex_generators(z), d);
    if !g.leq(x, y) {
        return Err(Error::Domain(format!("no V-path from {} to {}", g.label(x), g.label(y))));
    }
    let mut maps: HashMap<usize, Vec<QMatrix>> = HashMap::new();
    let mut paths: HashMap<usize, u128> = HashMap::new();
    maps.insert(x, vec![QMatrix::identity(dim(x))]);
    paths.insert(x, 1);
    let mut truncated = false;
    for z in g.linear_extension() {
        if z == x || !g.leq(x, z) || !g.leq(z, y) {
            continue;
        }
        let mut here: Vec<QMatrix> = Vec::new();
        let mut count: u128 = 0;
        for &e in g.down_edges(z) {
            let w = g.edge(e).lower;
            let Some(prev) = maps.get(&w) else { continue };
            if !space.contains(&direction_vec(&g.edge(e).direction)) {
                continue;
            }
            count = count.saturating_add(paths[&w]);
            let step = step_matrix(sheaf, &qv, e, d);
            for m in prev {
                let c = step.mul(m);
                if !here.contains(&c) {
                    if here.len() >= PATH_CAP {
                        truncated = true;
                        break;
                    }
                    here.push(c);
                }
            }
        }
        if !here.is_empty() {
            maps.insert(z, here);
            paths.insert(z, count);
        }
    }
    match maps.remove(&y) {
        Some(ms) => Ok(VPathMap {
            path_independent: ms.len() == 1 && !truncated,
            matrix: ms.into_iter().next().unwrap(),
            paths: paths[&y],
            truncated,
        }),
        None => Err(Error::Domain(format!("no V-path from {} to {}", g.label(x), g.label(y)))),
    }
}

/// Degreewise surjectivity of `m_{y,x}`: the V-path map for `V = t*` from
/// the reduced stalk at `x` to the reduced stalk at `y`.
pub fn monotonicity_check(sheaf: &GammaSheaf, x: usize, y: usize) -> Result<Vec<bool>> {
    let n = sheaf.nvars();
    let whole: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rational::ONE } else { Rational::ZERO }).collect()).collect();
    let top = sheaf.vertex_generators(x).iter().chain(sheaf.vertex_generators(y)).copied().max().unwrap_or(0);
    (0..=top)
        .map(|d| {
            let m = vpath_map(sheaf, x, y, &whole, d)?;
            let target = sheaf.vertex_generators(y).iter().filter(|&&g| g == d).count();
            Ok(m.matrix.rank() == target)
        })
        .collect()
}

/// Subspaces of `t*` spanned by edge directions of `Γ_{>=x}` that contain
/// at least one up-edge direction at `x`.
fn relevant_flats(sheaf: &GammaSheaf, x: usize) -> Vec<Echelon> {
    let g = sheaf.graph();
    let n = sheaf.nvars();
    let mut dirs: Vec<&[i64]> = Vec::new();
    for e in g.edges() {
        if g.leq(x, e.lower) && !dirs.contains(&e.direction.as_slice()) {
            dirs.push(&e.direction);
        }
    }
    let mut flats: BTreeMap<Vec<SparseVec>, Echelon> = BTreeMap::new();
    let mut frontier: Vec<Echelon> = Vec::new();
    for d in &dirs {
        let f = span(n, &[d]);
        if flats.insert(f.basis(), f.clone()).is_none() {
            frontier.push(f);
        }
    }
    while let Some(f) = frontier.pop() {
        for d in &dirs {
            let v = direction_vec(d);
            if f.contains(&v) {
                continue;
            }
            let mut bigger = f.clone();
            bigger.insert(v);
            let key = bigger.basis();
            if !flats.contains_key(&key) {
                if flats.len() >= PATH_CAP {
                    log::warn!("subspace enumeration at {} capped at {PATH_CAP}", g.label(x));
                    break;
                }
                flats.insert(key, bigger.clone());
                frontier.push(bigger);
            }
        }
    }
    flats
        .into_values()
        .filter(|f| g.up_edges(x).iter().any(|&e| f.contains(&direction_vec(&g.edge(e).direction))))
        .collect()
}

/// The subspace of `M(U_x)_d` cut out by the V-path relations alone: for
/// every subspace `V`, every vertex `y`, and every two up-edges `L, L'` with
/// V-paths to `y`, the classes of the components transported to `(M_y)_V`
/// agree. This contains the boundary image, with equality when every three
/// up-edge directions at `x` are independent.
pub fn polygon_image(sheaf: &GammaSheaf, x: usize, d: usize) -> Echelon {
    let g = sheaf.graph();
    let up = g.up_edges(x);
    let (offs, total) = up_layout(sheaf, x, d);
    let mut rows: Vec<SparseVec> = Vec::new();
    for flat in relevant_flats(sheaf, x) {
        let qv = quotient_by(sheaf, &flat);
        let in_flat = |e: usize| flat.contains(&direction_vec(&g.edge(e).direction));
        let mut steps: HashMap<usize, QMatrix> = HashMap::new();
        // For each target vertex, the transports of the up-edge components that reach it.
        let mut arrivals: BTreeMap<usize, Vec<(usize, QMatrix)>> = BTreeMap::new();
        for (i, &l) in up.iter().enumerate() {
            if !in_flat(l) {
                continue;
            }
            let start = g.edge(l).upper;
            let first = edge_to_upper(sheaf, &qv, l, d);
            // Breadth-first tree of V-paths from the upper vertex of L.
            let mut maps: HashMap<usize, QMatrix> = HashMap::from([(start, first)]);
            let mut queue = VecDeque::from([start]);
            while let Some(z) = queue.pop_front() {
                for &e in g.up_edges(z) {
                    let w = g.edge(e).upper;
                    if maps.contains_key(&w) || !in_flat(e) {
                        continue;
                    }
                    let step = steps.entry(e).or_insert_with(|| step_matrix(sheaf, &qv, e, d));
                    let m = step.mul(&maps[&z]);
                    maps.insert(w, m);
                    queue.push_back(w);
                }
            }
            for (y, m) in maps {
                arrivals.entry(y).or_default().push((i, m));
            }
        }
        for list in arrivals.values() {
            let Some(((i0, t0), rest)) = list.split_first() else { continue };
            for (i, t) in rest {
                for r in 0..t0.nrows() {
                    let row = t0.row(r).shifted(offs[*i0]).axpy(&-Rational::ONE, &t.row(r).shifted(offs[*i]));
                    if !row.is_zero() {
                        rows.push(row);
                    }
                }
            }
        }
    }
    Echelon::from_vectors(total, kernel_basis(&QMatrix::from_rows(total, rows)))
}
