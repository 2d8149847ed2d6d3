//! Run the construction on a hand-written moment graph.
//!
//! cargo run --example load_custom_graph

use momentsheaf::sheaf::{global_hilbert, stalk_poincare, verify_pure};
use momentsheaf::{canonical_sheaf, MomentGraph, SheafOptions};

/// The projective plane: three fixed points joined pairwise, directions
/// given by differences of the torus weights.
const GRAPH: &str = r#"{
  "dim_t": 2,
  "vertices": [{"id": "a"}, {"id": "b"}, {"id": "c"}],
  "order": {"covers": [["a", "b"], ["b", "c"]]},
  "edges": [
    {"lower": "a", "upper": "b", "direction": ["1/1", "0/1"]},
    {"lower": "b", "upper": "c", "direction": ["0/1", "1/1"]},
    {"lower": "a", "upper": "c", "direction": ["1/1", "1/1"]}
  ]
}"#;

fn main() -> momentsheaf::Result<()> {
    let g = MomentGraph::load_json(GRAPH)?;
    // Loaded graphs carry no Kazhdan-Lusztig bound, so one is supplied.
    let sheaf = canonical_sheaf(&g, &SheafOptions { max_degree: Some(1), ..Default::default() })?;
    for x in 0..g.num_vertices() {
        println!("{}: {}", g.label(x), stalk_poincare(&sheaf, x));
    }
    println!("pure: {}", verify_pure(&sheaf).is_pure());
    println!("global Hilbert function: {:?}", global_hilbert(&sheaf, 3)?);
    Ok(())
}
