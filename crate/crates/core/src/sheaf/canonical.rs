use rayon::prelude::*;

use crate::exactalg::{Echelon, SparseVec};
use crate::moment_graph::{MomentGraph, SubgraphSelector};
use crate::{Error, Result};

use super::{planar, sections, vpath, GammaSheaf, ImageAlgorithm, KLPolynomial, SheafOptions, LOWER};

/// Per-vertex degree bounds. Schubert graphs use the Kazhdan-Lusztig bound
/// `(rank gap - 1) / 2`; loaded graphs need an explicit bound.
pub fn default_degree_bounds(g: &MomentGraph, max_degree: Option<usize>) -> Result<Vec<usize>> {
    if let Some(m) = max_degree {
        return Ok(vec![m; g.num_vertices()]);
    }
    if !g.is_schubert() {
        return Err(Error::Validation(
            "graph has no known degree bound; supply a maximum degree (--max-degree)".into(),
        ));
    }
    let top = g.unique_maximal()?;
    let rank = |v: usize| g.rank(v).expect("Schubert graphs carry ranks") as usize;
    Ok((0..g.num_vertices()).map(|x| (rank(top) - rank(x)).saturating_sub(1) / 2).collect())
}

/// Offsets of the up-edge blocks of `M(U_x)_d` and its dimension.
pub(crate) fn up_layout(sheaf: &GammaSheaf, x: usize, d: usize) -> (Vec<usize>, usize) {
    let mut offs = Vec::new();
    let mut total = 0;
    for &e in sheaf.graph().up_edges(x) {
        offs.push(total);
        total += sheaf.edge_dim(e, d);
    }
    (offs, total)
}

/// `M_∂x` in degree `d`, inside `M(U_x)_d`.
pub fn boundary_image(sheaf: &GammaSheaf, x: usize, d: usize, algorithm: ImageAlgorithm) -> Echelon {
    match algorithm {
        ImageAlgorithm::Sections => {
            let g = sheaf.graph();
            let sub = g.select(&SubgraphSelector::AbovePunctured(x)).expect("vertex exists");
            sections::restriction_image(sheaf, &sub.vertices, &sub.edges, d)
        }
        ImageAlgorithm::Planar => planar::planar_image(sheaf, x, d),
        ImageAlgorithm::Polygon => vpath::polygon_image(sheaf, x, d),
    }
}

/// `t* · I` for a subspace `I` of `M(U_x)_{d-1}`, inside `M(U_x)_d`.
pub(crate) fn times_linear(sheaf: &GammaSheaf, x: usize, prev: &Echelon, d: usize) -> Echelon {
    let (offs_prev, _) = up_layout(sheaf, x, d - 1);
    let (_, total) = up_layout(sheaf, x, d);
    let up = sheaf.graph().up_edges(x);
    let mut out = Echelon::new(total);
    for k in 0..sheaf.nvars() {
        let mats: Vec<_> = up.iter().map(|&e| sheaf.edge_multiply(e, k, d - 1)).collect();
        for v in prev.basis() {
            let blocks: Vec<(SparseVec, usize)> = up
                .iter()
                .enumerate()
                .map(|(i, &e)| (mats[i].apply(&v.slice(offs_prev[i], sheaf.edge_dim(e, d - 1))), sheaf.edge_dim(e, d)))
                .collect();
            out.insert(SparseVec::concat(blocks.iter().map(|(b, n)| (b, *n))));
        }
    }
    out
}

/// Representatives of `image / span` taken from the echelon basis of
/// `image`, each reduced against everything chosen so far and scaled to a
/// leading 1.
pub(crate) fn new_generators(image: &Echelon, span: &Echelon) -> Vec<SparseVec> {
    let mut acc = span.clone();
    let mut out = Vec::new();
    for v in image.basis() {
        let r = acc.reduce(&v);
        if let Some((_, lead)) = r.leading() {
            let r = r.scale(&lead.recip());
            acc.insert(r.clone());
            out.push(r);
        }
    }
    out
}

/// The canonical sheaf, built from the unique maximal vertex downwards.
pub fn canonical_sheaf(g: &MomentGraph, opts: &SheafOptions) -> Result<GammaSheaf> {
    let top = g.unique_maximal()?;
    let bounds = default_degree_bounds(g, opts.max_degree)?;
    let mut sheaf = GammaSheaf::empty(g, bounds.clone());
    sheaf.vertex_gens[top] = vec![0];
    sheaf.set_down_edges(top);

    let mut order = g.linear_extension();
    order.reverse();
    for x in order.into_iter().filter(|&x| x != top) {
        let bound = bounds[x];
        let last = if opts.check_extra_degree { bound + 1 } else { bound };
        let images: Vec<Echelon> =
            (0..=last).into_par_iter().map(|d| boundary_image(&sheaf, x, d, opts.algorithm)).collect();
        let mut gens: Vec<(usize, SparseVec)> = Vec::new();
        for d in 0..=last {
            let span = if d == 0 { Echelon::new(images[0].ncols()) } else { times_linear(&sheaf, x, &images[d - 1], d) };
            let fresh = new_generators(&images[d], &span);
            if d > bound {
                if !fresh.is_empty() {
                    return Err(Error::Inconsistent(format!(
                        "stalk at {} gains {} generator(s) in degree {d}, beyond the bound {bound}",
                        g.label(x),
                        fresh.len()
                    )));
                }
                continue;
            }
            gens.extend(fresh.into_iter().map(|v| (d, v)));
        }
        sheaf.vertex_gens[x] = gens.iter().map(|(d, _)| *d).collect();
        for (i, &e) in g.up_edges(x).iter().enumerate() {
            let images = gens
                .iter()
                .map(|(d, v)| {
                    let (offs, _) = up_layout(&sheaf, x, *d);
                    v.slice(offs[i], sheaf.edge_dim(e, *d))
                })
                .collect();
            sheaf.rho[e][LOWER].images = images;
        }
        sheaf.set_down_edges(x);
        log::debug!("stalk at {}: {}", g.label(x), stalk_poincare(&sheaf, x));
    }
    Ok(sheaf)
}

/// Generating function of the generator degrees of `M_x`.
pub fn stalk_poincare(sheaf: &GammaSheaf, x: usize) -> KLPolynomial {
    KLPolynomial::from_degrees(sheaf.vertex_generators(x))
}
