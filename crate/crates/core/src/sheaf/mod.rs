//! Γ-sheaves on moment graphs: the structure sheaf, the canonical sheaf,
//! section spaces, and the checks and invariants read off from them.
//!
//! Every vertex module is free over `A`, every edge module free over the
//! edge ring `A_L`. A restriction map is stored by the images of the source
//! generators; the matrix in each degree is derived from those and cached.

mod canonical;
mod global;
mod io;
mod planar;
mod purity;
mod sections;
mod vpath;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::exactalg::{edge_ring, graded_dim, poly_mul, QMatrix, QuotientRing, SparseVec};
use crate::moment_graph::MomentGraph;
use crate::{Error, Result};

pub use canonical::{boundary_image, canonical_sheaf, default_degree_bounds, stalk_poincare};
pub use global::{global_hilbert, multiply_sections};
pub use io::{poincare_csv, sheaf_json};
pub use planar::planar_image;
pub use purity::{drop_generator, rigidity_check, verify_pure, PurityReport, PurityViolation};
pub use sections::{restriction_image, sections, SectionSpace};
pub use vpath::{monotonicity_check, polygon_image, vpath_map, VPathMap, PATH_CAP};

/// How the boundary image `M_∂x` is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ImageAlgorithm {
    /// Sections over `Γ̃_{>x}` restricted to the up-edges; always exact.
    #[default]
    Sections,
    /// Intersection of planar images over the family of two-planes.
    Planar,
    /// Only the relations transported along V-paths; an approximation in general.
    Polygon,
}

impl std::str::FromStr for ImageAlgorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sections" => Ok(ImageAlgorithm::Sections),
            "planar" => Ok(ImageAlgorithm::Planar),
            "polygon" => Ok(ImageAlgorithm::Polygon),
            _ => Err(Error::Validation(format!("unknown algorithm {s:?}; expected sections, planar or polygon"))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SheafOptions {
    pub algorithm: ImageAlgorithm,
    /// Overrides the per-vertex degree bound; required for loaded graphs.
    pub max_degree: Option<usize>,
    /// Computes one degree past the bound and fails if a generator appears there.
    pub check_extra_degree: bool,
}

/// Stalk Poincaré polynomial: coefficient `i` counts generators of internal degree `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KLPolynomial(pub Vec<u64>);

impl KLPolynomial {
    pub fn from_degrees(degrees: &[usize]) -> Self {
        let mut c = vec![0u64; degrees.iter().max().map_or(0, |m| m + 1)];
        for &d in degrees {
            c[d] += 1;
        }
        KLPolynomial(c)
    }

    pub fn one() -> Self {
        KLPolynomial(vec![1])
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    pub fn coefficient(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|&c| c != 0)
    }

    /// Coefficientwise `self >= other`.
    pub fn dominates(&self, other: &KLPolynomial) -> bool {
        (0..self.0.len().max(other.0.len())).all(|i| self.coefficient(i) >= other.coefficient(i))
    }

    pub fn eval(&self, q: u64) -> u64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * q + c)
    }
}

impl fmt::Display for KLPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}q"),
                _ => format!("{coeff}q^{i}"),
            });
        }
        if terms.is_empty() {
            f.pad("0")
        } else {
            f.pad(&terms.join("+"))
        }
    }
}

/// A restriction map `ρ_{x,L}`: `images[j]` is the image of the `j`-th
/// generator of the source, as an element of the edge module in the
/// generator's degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RhoMap {
    pub images: Vec<SparseVec>,
}

const LOWER: usize = 0;
const UPPER: usize = 1;

#[derive(Default)]
struct RhoCache(Mutex<HashMap<(usize, usize, usize), Arc<QMatrix>>>);

impl Clone for RhoCache {
    fn clone(&self) -> Self {
        RhoCache::default()
    }
}

impl fmt::Debug for RhoCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("RhoCache")
    }
}

/// A Γ-sheaf with free stalks.
#[derive(Clone, Debug)]
pub struct GammaSheaf {
    graph: Arc<MomentGraph>,
    vertex_gens: Vec<Vec<usize>>,
    edge_gens: Vec<Vec<usize>>,
    edge_rings: Vec<Arc<QuotientRing>>,
    rho: Vec<[RhoMap; 2]>,
    bounds: Vec<usize>,
    cache: RhoCache,
}

/// Offsets of the generator blocks of a free module in degree `d`, plus the
/// total dimension. Generators of degree above `d` have no block.
pub(crate) fn block_layout(vars: usize, gens: &[usize], d: usize) -> (Vec<Option<usize>>, usize) {
    let mut offs = Vec::with_capacity(gens.len());
    let mut total = 0;
    for &g in gens {
        if g <= d {
            offs.push(Some(total));
            total += graded_dim(vars, d - g);
        } else {
            offs.push(None);
        }
    }
    (offs, total)
}

pub(crate) fn free_dim(vars: usize, gens: &[usize], d: usize) -> usize {
    gens.iter().filter(|&&g| g <= d).map(|&g| graded_dim(vars, d - g)).sum()
}

/// Degree-`d` matrix of the graded map between free modules sending source
/// generator `j` (degree `src_gens[j]`) to `images[j]`, an element of the
/// target in that degree. `reduce(k)` maps the source ring's degree-`k`
/// piece onto the target ring's; `None` means both rings agree.
pub(crate) fn hom_matrix(
    src_vars: usize,
    src_gens: &[usize],
    tgt_vars: usize,
    tgt_gens: &[usize],
    images: &[SparseVec],
    d: usize,
    reduce: Option<&dyn Fn(usize) -> Arc<QMatrix>>,
) -> QMatrix {
    let (_, src_total) = block_layout(src_vars, src_gens, d);
    let (tgt_offs, tgt_total) = block_layout(tgt_vars, tgt_gens, d);
    let mut cols: Vec<SparseVec> = Vec::with_capacity(src_total);
    for (j, &e) in src_gens.iter().enumerate() {
        if e > d {
            continue;
        }
        let k = d - e;
        let (img_offs, _) = block_layout(tgt_vars, tgt_gens, e);
        // Components of the image, one per target generator of degree <= e.
        let comps: Vec<(usize, usize, SparseVec)> = tgt_gens
            .iter()
            .enumerate()
            .filter_map(|(i, &di)| {
                let off = img_offs[i]?;
                let c = images[j].slice(off, graded_dim(tgt_vars, e - di));
                (!c.is_zero()).then(|| (i, e - di, c))
            })
            .collect();
        let red = reduce.map(|f| f(k));
        for m in 0..graded_dim(src_vars, k) {
            let mono = match &red {
                Some(r) => r.apply(&SparseVec::unit(m)),
                None => SparseVec::unit(m),
            };
            let mut col = SparseVec::new();
            if !mono.is_zero() {
                for (i, deg, c) in &comps {
                    let prod = poly_mul(tgt_vars, k, &mono, *deg, c);
                    col = col.axpy(&crate::Rational::ONE, &prod.shifted(tgt_offs[*i].unwrap()));
                }
            }
            cols.push(col);
        }
    }
    QMatrix::from_columns(tgt_total, &cols)
}

/// The element of a free module equal to `c` (a ring element of degree `k`)
/// times generator `i`, in degree `gens[i] + k`.
pub(crate) fn generator_times(vars: usize, gens: &[usize], i: usize, c: &SparseVec, k: usize) -> SparseVec {
    let (offs, _) = block_layout(vars, gens, gens[i] + k);
    c.shifted(offs[i].unwrap())
}

/// Multiplication by a ring element `c` of degree `k` on a free module:
/// degree `d` to degree `d + k`.
pub(crate) fn scalar_matrix(vars: usize, gens: &[usize], c: &SparseVec, k: usize, d: usize) -> QMatrix {
    let shifted: Vec<usize> = gens.iter().map(|g| g + k).collect();
    let images: Vec<SparseVec> = (0..gens.len()).map(|i| generator_times(vars, gens, i, c, k)).collect();
    hom_matrix(vars, &shifted, vars, gens, &images, d + k, None)
}

fn unit_images(vars: usize, gens: &[usize]) -> Vec<SparseVec> {
    (0..gens.len()).map(|i| generator_times(vars, gens, i, &SparseVec::unit(0), 0)).collect()
}

impl GammaSheaf {
    fn empty(graph: &MomentGraph, bounds: Vec<usize>) -> Self {
        let edge_rings = graph.edges().iter().map(|e| edge_ring(&e.alpha())).collect();
        GammaSheaf {
            graph: Arc::new(graph.clone()),
            vertex_gens: vec![Vec::new(); graph.num_vertices()],
            edge_gens: vec![Vec::new(); graph.num_edges()],
            edge_rings,
            rho: vec![Default::default(); graph.num_edges()],
            bounds,
            cache: RhoCache::default(),
        }
    }

    pub fn graph(&self) -> &MomentGraph {
        &self.graph
    }

    /// Dimension of `t*`, the number of variables of `A`.
    pub fn nvars(&self) -> usize {
        self.graph.dim_t()
    }

    pub fn vertex_generators(&self, x: usize) -> &[usize] {
        &self.vertex_gens[x]
    }

    pub fn edge_generators(&self, e: usize) -> &[usize] {
        &self.edge_gens[e]
    }

    pub fn edge_ring(&self, e: usize) -> &Arc<QuotientRing> {
        &self.edge_rings[e]
    }

    /// Degree up to which the stalk at `x` was computed.
    pub fn degree_bound(&self, x: usize) -> usize {
        self.bounds[x]
    }

    fn side(&self, x: usize, e: usize) -> usize {
        let edge = self.graph.edge(e);
        if x == edge.lower {
            LOWER
        } else {
            assert_eq!(x, edge.upper, "vertex is not on the edge");
            UPPER
        }
    }

    pub fn rho(&self, x: usize, e: usize) -> &RhoMap {
        &self.rho[e][self.side(x, e)]
    }

    pub fn vertex_dim(&self, x: usize, d: usize) -> usize {
        free_dim(self.nvars(), &self.vertex_gens[x], d)
    }

    pub fn edge_dim(&self, e: usize, d: usize) -> usize {
        free_dim(self.edge_rings[e].nvars(), &self.edge_gens[e], d)
    }

    /// `ρ_{x,L}` in degree `d`, from `(M_x)_d` to `(M_L)_d`.
    pub fn rho_matrix(&self, x: usize, e: usize, d: usize) -> Arc<QMatrix> {
        let side = self.side(x, e);
        let key = (e, side, d);
        if let Some(m) = self.cache.0.lock().unwrap().get(&key) {
            return m.clone();
        }
        let ring = self.edge_rings[e].clone();
        let reduce = move |k: usize| ring.reduce_matrix(k);
        let m = Arc::new(hom_matrix(
            self.nvars(),
            &self.vertex_gens[x],
            self.edge_rings[e].nvars(),
            &self.edge_gens[e],
            &self.rho[e][side].images,
            d,
            Some(&reduce),
        ));
        self.cache.0.lock().unwrap().entry(key).or_insert(m).clone()
    }

    /// Multiplication by variable `k` on `(M_L)_d -> (M_L)_{d+1}`.
    pub fn edge_multiply(&self, e: usize, k: usize, d: usize) -> QMatrix {
        let ring = &self.edge_rings[e];
        let f = crate::exactalg::LinearForm::variable(self.nvars(), k);
        scalar_matrix(ring.nvars(), &self.edge_gens[e], &ring.reduce_linear(&f), 1, d)
    }

    /// Multiplication by variable `k` on `(M_x)_d -> (M_x)_{d+1}`.
    pub fn vertex_multiply(&self, x: usize, k: usize, d: usize) -> QMatrix {
        scalar_matrix(self.nvars(), &self.vertex_gens[x], &SparseVec::unit(k), 1, d)
    }

    /// Sets `M_L = M_y / V_L M_y` with the quotient map for every edge below `y`.
    fn set_down_edges(&mut self, y: usize) {
        let gens = self.vertex_gens[y].clone();
        for &e in self.graph.down_edges(y) {
            let vars = self.edge_rings[e].nvars();
            self.rho[e][UPPER] = RhoMap { images: unit_images(vars, &gens) };
            self.edge_gens[e] = gens.clone();
        }
    }

    /// Whether `M_L = M_y / V_L M_y` with `ρ_{y,L}` the quotient map for
    /// every edge `L` with upper vertex `y`.
    pub fn has_quotient_down_edges(&self, y: usize) -> bool {
        self.graph.down_edges(y).iter().all(|&e| {
            self.edge_gens[e] == self.vertex_gens[y]
                && self.rho[e][UPPER].images == unit_images(self.edge_rings[e].nvars(), &self.vertex_gens[y])
        })
    }
}

/// The sheaf of rings: `A` at every vertex, `A_L` on every edge, quotient maps.
pub fn structure_sheaf(g: &MomentGraph) -> GammaSheaf {
    let ranks = g.poset_ranks();
    let top = ranks.iter().copied().max().unwrap_or(0) as usize;
    let bounds = ranks.iter().map(|&r| top - r as usize).collect();
    let mut s = GammaSheaf::empty(g, bounds);
    for x in 0..g.num_vertices() {
        s.vertex_gens[x] = vec![0];
    }
    for e in 0..g.num_edges() {
        s.edge_gens[e] = vec![0];
        s.rho[e] = [RhoMap { images: vec![SparseVec::unit(0)] }, RhoMap { images: vec![SparseVec::unit(0)] }];
    }
    s
}
