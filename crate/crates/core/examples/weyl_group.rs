//! Enumerate a Weyl group and query the Bruhat order.
//!
//! cargo run --example weyl_group -- B3

use momentsheaf::{CartanDatum, WeylGroup};

fn main() -> momentsheaf::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "A3".into());
    let w = WeylGroup::build(CartanDatum::parse(&name)?)?;
    println!("{}: {} elements, {} reflections", w.cartan().name(), w.len(), w.reflections().len());
    println!("longest element {} of length {}", w.label(w.longest()), w.length(w.longest()));

    let mut by_length = vec![0usize; w.length(w.longest()) + 1];
    for x in 0..w.len() {
        by_length[w.length(x)] += 1;
    }
    println!("elements by length: {by_length:?}");

    let (x, y) = (w.parse_word("13")?, w.longest());
    println!("{} <= {}: {}", w.label(x), w.label(y), w.bruhat_leq(x, y));
    println!("interval below {} has {} elements", w.label(x), w.bruhat_interval_below(x).len());
    Ok(())
}
