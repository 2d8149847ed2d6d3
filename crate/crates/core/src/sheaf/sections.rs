use std::collections::HashMap;

use crate::exactalg::{kernel_basis, Echelon, QMatrix, Rational, SparseVec};
use crate::moment_graph::SubgraphSelector;
use crate::Result;

use super::GammaSheaf;

/// Degreewise bases of `M(Z)` for a subgraph `Z`.
///
/// Coordinates are the vertex blocks of `Z` in `vertices` order, followed by
/// blocks for the edges of `Z` with fewer than two endpoints in `Z`, in
/// `free_edges` order. Edges with both endpoints in `Z` carry no unknowns:
/// their value is determined by either endpoint.
#[derive(Clone, Debug)]
pub struct SectionSpace {
    pub vertices: Vec<usize>,
    pub free_edges: Vec<usize>,
    /// Constrained edges, both endpoints in `Z`.
    pub inner_edges: Vec<usize>,
    bases: Vec<Vec<SparseVec>>,
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl SectionSpace {
    pub fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn dim(&self, d: usize) -> usize {
        self.bases[d].len()
    }

    pub fn basis(&self, d: usize) -> &[SparseVec] {
        &self.bases[d]
    }

    /// Dimension of the ambient coordinate space in degree `d`.
    pub fn ambient_dim(&self, d: usize) -> usize {
        self.dims[d]
    }

    /// Offsets of the blocks (vertices, then free edges) in degree `d`.
    pub fn offsets(&self, d: usize) -> &[usize] {
        &self.offsets[d]
    }

    /// Block of vertex `x` of a section in degree `d`.
    pub fn vertex_component(&self, sheaf: &GammaSheaf, d: usize, s: &SparseVec, x: usize) -> Option<SparseVec> {
        let i = self.vertices.iter().position(|&v| v == x)?;
        Some(s.slice(self.offsets[d][i], sheaf.vertex_dim(x, d)))
    }
}

/// Problem layout shared by the section solvers.
pub(crate) struct Layout {
    pub vertices: Vec<usize>,
    pub free_edges: Vec<usize>,
    pub inner_edges: Vec<usize>,
    pub offsets: Vec<usize>,
    pub total: usize,
    pub vertex_total: usize,
}

impl Layout {
    pub fn new(sheaf: &GammaSheaf, vertices: &[usize], edges: &[usize], d: usize) -> Self {
        let g = sheaf.graph();
        let inside: HashMap<usize, ()> = vertices.iter().map(|&v| (v, ())).collect();
        let (mut free_edges, mut inner_edges) = (Vec::new(), Vec::new());
        for &e in edges {
            let edge = g.edge(e);
            if inside.contains_key(&edge.lower) && inside.contains_key(&edge.upper) {
                inner_edges.push(e);
            } else {
                free_edges.push(e);
            }
        }
        let mut offsets = Vec::with_capacity(vertices.len() + free_edges.len());
        let mut total = 0;
        for &v in vertices {
            offsets.push(total);
            total += sheaf.vertex_dim(v, d);
        }
        let vertex_total = total;
        for &e in &free_edges {
            offsets.push(total);
            total += sheaf.edge_dim(e, d);
        }
        Layout { vertices: vertices.to_vec(), free_edges, inner_edges, offsets, total, vertex_total }
    }

    fn vertex_offset(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&u| u == v).map(|i| self.offsets[i])
    }

    /// Stacked incidence constraints in degree `d`.
    pub fn constraints(&self, sheaf: &GammaSheaf, d: usize) -> QMatrix {
        let g = sheaf.graph();
        let mut rows = Vec::new();
        let minus = -Rational::ONE;
        for &e in &self.inner_edges {
            let edge = g.edge(e);
            let (lo, hi) = (sheaf.rho_matrix(edge.lower, e, d), sheaf.rho_matrix(edge.upper, e, d));
            let (olo, ohi) = (self.vertex_offset(edge.lower).unwrap(), self.vertex_offset(edge.upper).unwrap());
            for r in 0..sheaf.edge_dim(e, d) {
                rows.push(lo.row(r).shifted(olo).axpy(&minus, &hi.row(r).shifted(ohi)));
            }
        }
        for (k, &e) in self.free_edges.iter().enumerate() {
            let edge = g.edge(e);
            let oe = self.offsets[self.vertices.len() + k];
            for v in [edge.lower, edge.upper] {
                if let Some(ov) = self.vertex_offset(v) {
                    let m = sheaf.rho_matrix(v, e, d);
                    for r in 0..sheaf.edge_dim(e, d) {
                        let mut row = m.row(r).shifted(ov);
                        row = row.axpy(&minus, &SparseVec::unit(oe + r));
                        rows.push(row);
                    }
                }
            }
        }
        QMatrix::from_rows(self.total, rows)
    }
}

pub(crate) fn section_basis(sheaf: &GammaSheaf, layout: &Layout, d: usize) -> Vec<SparseVec> {
    if layout.total == 0 {
        return Vec::new();
    }
    kernel_basis(&layout.constraints(sheaf, d))
}

/// `M(Z)_d` for `d = 0..=d_max`.
pub fn sections(sheaf: &GammaSheaf, sel: &SubgraphSelector, d_max: usize) -> Result<SectionSpace> {
    let sub = sheaf.graph().select(sel)?;
    let mut bases = Vec::new();
    let mut offsets = Vec::new();
    let mut dims = Vec::new();
    let mut shape = None;
    for d in 0..=d_max {
        let layout = Layout::new(sheaf, &sub.vertices, &sub.edges, d);
        bases.push(section_basis(sheaf, &layout, d));
        offsets.push(layout.offsets.clone());
        dims.push(layout.total);
        shape = Some(layout);
    }
    let layout = shape.expect("at least degree 0");
    Ok(SectionSpace {
        vertices: layout.vertices,
        free_edges: layout.free_edges,
        inner_edges: layout.inner_edges,
        bases,
        offsets,
        dims,
    })
}

/// Image of the restriction `M(Z)_d -> ⊕_{L} (M_L)_d` over the edges of `Z`
/// with a missing endpoint, in `edges` order.
pub fn restriction_image(sheaf: &GammaSheaf, vertices: &[usize], edges: &[usize], d: usize) -> Echelon {
    let layout = Layout::new(sheaf, vertices, edges, d);
    let target = layout.total - layout.vertex_total;
    let basis = section_basis(sheaf, &layout, d);
    Echelon::from_vectors(target, basis.iter().map(|s| s.slice(layout.vertex_total, target)))
}
