//! Build graphs, inspect genus and canonical divisors, and round-trip JSON.
//!
//! Run with `cargo run --example graph_basics`.

use chipfire::divisor::canonical_divisor;
use chipfire::Graph;

fn main() -> chipfire::Result<()> {
    let triangle = Graph::unweighted(
        &["v1", "v2", "v3"],
        &[("v1", "v2"), ("v1", "v2"), ("v1", "v3"), ("v1", "v3"), ("v2", "v3"), ("v2", "v3")],
    )?;
    println!("double triangle: {} vertices, {} edges, genus {}", triangle.num_vertices(), triangle.num_edges(), triangle.genus());
    println!("canonical divisor: {:?}", canonical_divisor(&triangle));

    // A weighted vertex with a loop: the loop adds 2 to the valence but
    // nothing to the valence used for firing.
    let looped = Graph::new([("a", 1), ("b", 0)], [("a", "b"), ("a", "a")])?;
    println!(
        "looped graph: genus {}, val(a) = {}, val_wl(a) = {}, k = {:?}",
        looped.genus(),
        looped.valence(0),
        looped.valence_without_loops(0),
        canonical_divisor(&looped)
    );

    let text = serde_json::to_string(&looped.to_raw()).expect("serialisable");
    println!("as JSON: {text}");
    assert_eq!(Graph::from_json(&text)?, looped);

    match Graph::unweighted(&["a", "b"], &[]) {
        Err(e) => println!("disconnected input is rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
