//! Build the moment graph of a Schubert variety and export it.
//!
//! cargo run --example schubert_graph -- A3 2132 > graph.dot

use momentsheaf::moment_graph::schubert_moment_graph;
use momentsheaf::{CartanDatum, WeylGroup};

fn main() -> momentsheaf::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "A2".into());
    let word = args.next().unwrap_or_else(|| "longest".into());
    let w = WeylGroup::build(CartanDatum::parse(&name)?)?;
    let g = schubert_moment_graph(&w, w.parse_word(&word)?, &[])?;

    eprintln!("{} vertices, {} edges, dim t = {}", g.num_vertices(), g.num_edges(), g.dim_t());
    for e in g.edges() {
        eprintln!("  {} -> {} along {:?}", g.label(e.lower), g.label(e.upper), e.direction);
    }
    print!("{}", g.to_dot());
    Ok(())
}
