//! The canonical sheaf on the full flag variety of SL3, vertex by vertex.
//!
//! cargo run --example sl3_walkthrough

use momentsheaf::moment_graph::schubert_moment_graph;
use momentsheaf::sheaf::{boundary_image, polygon_image, stalk_poincare, ImageAlgorithm};
use momentsheaf::{canonical_sheaf, CartanDatum, SheafOptions, WeylGroup};

fn main() -> momentsheaf::Result<()> {
    let w = WeylGroup::build(CartanDatum::parse("A2")?)?;
    let g = schubert_moment_graph(&w, w.longest(), &[])?;
    let sheaf = canonical_sheaf(&g, &SheafOptions::default())?;

    let mut order = g.linear_extension();
    order.reverse();
    for x in order {
        let dims: Vec<usize> = (0..4).map(|d| boundary_image(&sheaf, x, d, ImageAlgorithm::Sections).rank()).collect();
        println!(
            "{:>4}: {} up-edges, boundary image dims {:?}, stalk {}",
            g.label(x),
            g.up_edges(x).len(),
            dims,
            stalk_poincare(&sheaf, x)
        );
    }

    // Three lines in a plane: the polygon relations miss one relation in degree 1.
    let e = g.vertex("e")?;
    println!(
        "at e in degree 1: sections image {}, polygon image {}",
        boundary_image(&sheaf, e, 1, ImageAlgorithm::Sections).rank(),
        polygon_image(&sheaf, e, 1).rank()
    );
    Ok(())
}
