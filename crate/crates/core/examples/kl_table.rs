//! Kazhdan-Lusztig polynomials two ways: sheaf stalks and the Hecke algebra.
//!
//! cargo run --example kl_table -- A3 2132

use momentsheaf::hecke::{format_qpoly, KlTable};
use momentsheaf::moment_graph::schubert_moment_graph;
use momentsheaf::sheaf::stalk_poincare;
use momentsheaf::{canonical_sheaf, CartanDatum, SheafOptions, WeylGroup};

fn main() -> momentsheaf::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "A3".into());
    let word = args.next().unwrap_or_else(|| "2132".into());
    let w = WeylGroup::build(CartanDatum::parse(&name)?)?;
    let top = w.parse_word(&word)?;
    let g = schubert_moment_graph(&w, top, &[])?;
    let sheaf = canonical_sheaf(&g, &SheafOptions::default())?;
    let mut table = KlTable::new(&w);

    println!("{:>8} {:>10} {:>10}", "x", "sheaf", "hecke");
    for x in 0..g.num_vertices() {
        let oracle = table.kl_polynomial(w.parse_word(g.label(x))?, top)?;
        println!("{:>8} {:>10} {:>10}", g.label(x), stalk_poincare(&sheaf, x), format_qpoly(&oracle));
    }
    Ok(())
}
