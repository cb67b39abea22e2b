//! Fire vertex sets, apply firing scripts and test linear equivalence.
//!
//! Run with `cargo run --example chip_firing`.

use chipfire::divisor::{fire_set, linear_equivalence_witness, principal_divisor, residual};
use chipfire::{Divisor, FiringScript, Graph, VertexSet};

fn main() -> chipfire::Result<()> {
    let g = Graph::unweighted(&["v1", "v2", "v3"], &[("v1", "v2"), ("v1", "v2"), ("v2", "v3"), ("v2", "v3")])?;
    let d = Divisor::from_i64s(&[3, 0, 0]);

    let fired = fire_set(&g, &d, &VertexSet::singleton(0))?;
    println!("fire v1 in {d:?}: {fired:?}");

    let f = FiringScript::from_i64s(&[2, 1, 0]);
    println!("div({f:?}) = {:?}", principal_divisor(&g, &f));
    let moved = d.apply(&g, &f);
    println!("d + div(f) = {moved:?}");

    // Firing level sets one by one gives the same result as the script.
    let mut step = d.clone();
    for set in f.level_sets()? {
        step = fire_set(&g, &step, &set)?;
    }
    assert_eq!(step, moved);

    match linear_equivalence_witness(&g, &d, &moved) {
        Some(w) => println!("witness script from d to {moved:?}: {w:?}"),
        None => unreachable!(),
    }
    // Parity of v1 + v3 modulo 2 separates these classes.
    let other = Divisor::from_i64s(&[2, 1, 0]);
    println!("{d:?} ~ {other:?}? {}", linear_equivalence_witness(&g, &d, &other).is_some());

    println!("residual of {d:?}: {:?}", residual(&g, &d));
    Ok(())
}
