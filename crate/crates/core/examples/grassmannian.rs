//! Parabolic graphs: Grassmannian Schubert varieties in type A.
//!
//! cargo run --example grassmannian -- A3 1,3

use momentsheaf::cli::parse_parabolic;
use momentsheaf::hecke::{format_qpoly, KlTable};
use momentsheaf::moment_graph::schubert_moment_graph;
use momentsheaf::sheaf::stalk_poincare;
use momentsheaf::{canonical_sheaf, CartanDatum, SheafOptions, WeylGroup};

fn main() -> momentsheaf::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "A3".into());
    let j = parse_parabolic(&args.next().unwrap_or_else(|| "1,3".into()))?;
    let w = WeylGroup::build(CartanDatum::parse(&name)?)?;
    let mut table = KlTable::new(&w);

    // Every minimal representative gives a Schubert variety in G/P.
    let mut reps = w.minimal_coset_reps(&j);
    reps.sort_by_key(|&r| (w.length(r), w.label(r)));
    for top in reps {
        let g = schubert_moment_graph(&w, top, &j)?;
        let sheaf = canonical_sheaf(&g, &SheafOptions::default())?;
        let singular: Vec<String> = (0..g.num_vertices())
            .filter(|&x| stalk_poincare(&sheaf, x).coefficients().len() > 1)
            .map(|x| {
                let p = table.parabolic_kl(&j, w.parse_word(g.label(x)).unwrap(), top).unwrap();
                format!("{}: {} (oracle {})", g.label(x), stalk_poincare(&sheaf, x), format_qpoly(&p))
            })
            .collect();
        println!("X_{:<6} {:>2} points  singular at {singular:?}", w.label(top), g.num_vertices());
    }
    Ok(())
}
