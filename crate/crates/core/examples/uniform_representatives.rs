//! Special classes and their quasi-uniform and near-uniform representatives.
//!
//! Run with `cargo run --example uniform_representatives`.

use chipfire::divisor::canonical_divisor;
use chipfire::uniform::{
    has_uniform_guarantee, is_uniform, near_uniform_representative, quasi_uniform_bound, quasi_uniform_construction,
    specialness,
};
use chipfire::{Divisor, Graph};

fn main() -> chipfire::Result<()> {
    let g = Graph::unweighted(
        &["v1", "v2", "v3"],
        &[("v1", "v2"), ("v1", "v2"), ("v1", "v3"), ("v1", "v3"), ("v2", "v3"), ("v2", "v3")],
    )?;
    println!("k = {:?}", canonical_divisor(&g));
    let bounds: Vec<_> = (0..3).map(|v| quasi_uniform_bound(&g, v)).collect();
    println!("quasi-uniform bounds: {bounds:?}");

    for values in [[0, 0, 3], [4, 0, -1], [0, 0, 7]] {
        let d = Divisor::from_i64s(&values);
        let report = specialness(&g, &d);
        println!("{values:?}: special = {}", report.is_special);
        if !report.is_special {
            continue;
        }
        let run = quasi_uniform_construction(&g, &d)?;
        println!("  start {:?}, {} firings, representative {:?}", run.start, run.trace.len(), run.representative);
        println!("  uniform: {}", is_uniform(&g, &run.representative));
        println!("  near-uniform representative: {:?}", near_uniform_representative(&g, &d)?);
    }

    // With a loop at every weight-0 vertex the representative is uniform.
    let looped = Graph::unweighted(&["a", "b"], &[("a", "b"), ("a", "a"), ("b", "b")])?;
    let d = Divisor::from_i64s(&[3, -1]);
    println!("looped graph, guarantee = {}", has_uniform_guarantee(&looped));
    let rep = quasi_uniform_construction(&looped, &d)?.representative;
    println!("  {d:?} -> {rep:?}, uniform = {}", is_uniform(&looped, &rep));
    Ok(())
}
