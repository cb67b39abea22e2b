//! Dhar decomposition with respect to a vertex set, and the reducedness test
//! it gives.
//!
//! Run with `cargo run --example dhar_decomposition`.

use chipfire::dhar::{dhar_decomposition, is_v_reduced};
use chipfire::divisor::fire_set;
use chipfire::{Divisor, Graph, VertexSet};

fn main() -> chipfire::Result<()> {
    let g = Graph::unweighted(
        &["v1", "v2", "v3"],
        &[("v1", "v2"), ("v1", "v2"), ("v1", "v3"), ("v1", "v3"), ("v2", "v3"), ("v2", "v3")],
    )?;

    for (values, set) in [([2, 2, -1], vec![2]), ([2, 2, 2], vec![0, 1]), ([1, 0, 4], vec![2])] {
        let d = Divisor::from_i64s(&values);
        let set: VertexSet = set.into_iter().collect();
        let r = dhar_decomposition(&g, &d, &set)?;
        let chain: Vec<Vec<String>> = r.chain.iter().map(|s| g.set_ids(s)).collect();
        println!("d = {values:?}, V = {:?}", g.set_ids(&set));
        println!("  burnt chain: {chain:?}");
        println!("  unburnt set: {:?}", g.set_ids(&r.w_dhar));
        println!("  V-reduced: {}", is_v_reduced(&g, &d, &set)?);
        if !r.w_dhar.is_empty() {
            println!("  after firing it: {:?}", fire_set(&g, &d, &r.w_dhar)?);
        }
    }
    Ok(())
}
