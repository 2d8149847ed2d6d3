use rayon::prelude::*;

use crate::exactalg::{Echelon, SparseVec};
use crate::moment_graph::SubgraphSelector;
use crate::Result;

use super::{sections, GammaSheaf, SectionSpace};

/// `x_k * s` for a section `s` of degree `d`, as a section of degree `d + 1`.
pub fn multiply_sections(sheaf: &GammaSheaf, space: &SectionSpace, d: usize, s: &SparseVec, k: usize) -> SparseVec {
    let nv = space.vertices.len();
    let (from, to) = (space.offsets(d), space.offsets(d + 1));
    let mut out = SparseVec::new();
    for (i, &x) in space.vertices.iter().enumerate() {
        let block = s.slice(from[i], sheaf.vertex_dim(x, d));
        let prod = sheaf.vertex_multiply(x, k, d).apply(&block);
        out = out.axpy(&crate::Rational::ONE, &prod.shifted(to[i]));
    }
    for (i, &e) in space.free_edges.iter().enumerate() {
        let block = s.slice(from[nv + i], sheaf.edge_dim(e, d));
        let prod = sheaf.edge_multiply(e, k, d).apply(&block);
        out = out.axpy(&crate::Rational::ONE, &prod.shifted(to[nv + i]));
    }
    out
}

/// `dim M̄(Γ)_d = dim M(Γ)_d - dim t*·M(Γ)_{d-1}` for `d = 0..=d_max`.
pub fn global_hilbert(sheaf: &GammaSheaf, d_max: usize) -> Result<Vec<usize>> {
    let space = sections(sheaf, &SubgraphSelector::Whole, d_max)?;
    Ok((0..=d_max)
        .into_par_iter()
        .map(|d| {
            if d == 0 {
                return space.dim(0);
            }
            let mut span = Echelon::new(space.ambient_dim(d));
            for s in space.basis(d - 1) {
                for k in 0..sheaf.nvars() {
                    span.insert(multiply_sections(sheaf, &space, d - 1, s, k));
                }
            }
            space.dim(d) - span.rank()
        })
        .collect())
}
