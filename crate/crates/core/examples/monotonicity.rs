//! V-path transport and the monotonicity of stalks along the Bruhat order.
//!
//! cargo run --example monotonicity

use momentsheaf::moment_graph::schubert_moment_graph;
use momentsheaf::sheaf::{monotonicity_check, stalk_poincare, vpath_map};
use momentsheaf::{canonical_sheaf, CartanDatum, Rational, SheafOptions, WeylGroup};

fn main() -> momentsheaf::Result<()> {
    let w = WeylGroup::build(CartanDatum::parse("A3")?)?;
    let g = schubert_moment_graph(&w, w.parse_word("2132")?, &[])?;
    let sheaf = canonical_sheaf(&g, &SheafOptions::default())?;
    let whole: Vec<Vec<Rational>> =
        (0..3).map(|i| (0..3).map(|j| Rational::from_integer(i64::from(i == j))).collect()).collect();

    let e = g.vertex("e")?;
    for y in 0..g.num_vertices() {
        if !g.leq(e, y) {
            continue;
        }
        let onto = monotonicity_check(&sheaf, e, y)?;
        let paths = vpath_map(&sheaf, e, y, &whole, 0)?.paths;
        println!(
            "e -> {:>5}: {paths:>3} paths, P_e = {} >= P_y = {}, onto by degree {onto:?}",
            g.label(y),
            stalk_poincare(&sheaf, e),
            stalk_poincare(&sheaf, y)
        );
    }
    Ok(())
}
