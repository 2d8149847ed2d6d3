use crate::exactalg::{kernel_basis, Echelon, QMatrix, SparseVec};

use super::canonical::up_layout;
use super::{sections, GammaSheaf};

/// The boundary image at `x` in degree `d`, computed plane by plane: an
/// element of `M(U_x)` lies in the image iff its restriction to the up-edges
/// in each plane `H` extends to sections over the planar piece for `H`.
///
/// Exact for graphs of projective varieties; a heuristic elsewhere.
pub fn planar_image(sheaf: &GammaSheaf, x: usize, d: usize) -> Echelon {
    let g = sheaf.graph();
    let up = g.up_edges(x);
    let (offs, total) = up_layout(sheaf, x, d);
    let mut rows = Vec::new();
    for piece in g.planar_family(x) {
        let image = sections::restriction_image(sheaf, &piece.punctured.vertices, &piece.punctured.edges, d);
        // Where each block of M(U^H_x) sits inside M(U_x).
        let placement: Vec<(usize, usize)> = piece
            .up_edges
            .iter()
            .map(|e| {
                let i = up.iter().position(|u| u == e).expect("planar up-edge lies in U_x");
                (offs[i], sheaf.edge_dim(*e, d))
            })
            .collect();
        for a in image.null_space() {
            let mut row = SparseVec::new();
            let mut start = 0;
            for &(off, len) in &placement {
                row = row.axpy(&crate::Rational::ONE, &a.slice(start, len).shifted(off));
                start += len;
            }
            rows.push(row);
        }
    }
    Echelon::from_vectors(total, kernel_basis(&QMatrix::from_rows(total, rows)))
}
