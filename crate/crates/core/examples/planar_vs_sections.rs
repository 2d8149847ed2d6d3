//! Compare the three boundary-image algorithms at every vertex.
//!
//! cargo run --example planar_vs_sections -- B2

use momentsheaf::moment_graph::schubert_moment_graph;
use momentsheaf::sheaf::{boundary_image, ImageAlgorithm};
use momentsheaf::{canonical_sheaf, CartanDatum, SheafOptions, WeylGroup};

fn main() -> momentsheaf::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "B2".into());
    let w = WeylGroup::build(CartanDatum::parse(&name)?)?;
    let g = schubert_moment_graph(&w, w.longest(), &[])?;
    let sheaf = canonical_sheaf(&g, &SheafOptions::default())?;

    println!("{:>8} {:>3} {:>9} {:>7} {:>8} two-orbit", "x", "d", "sections", "planar", "polygon");
    for x in 0..g.num_vertices() {
        for d in 0..=sheaf.degree_bound(x) + 1 {
            let [s, p, q] = [ImageAlgorithm::Sections, ImageAlgorithm::Planar, ImageAlgorithm::Polygon]
                .map(|a| boundary_image(&sheaf, x, d, a).rank());
            println!("{:>8} {d:>3} {s:>9} {p:>7} {q:>8} {}", g.label(x), g.finite_two_orbit_test(x));
        }
    }
    Ok(())
}
