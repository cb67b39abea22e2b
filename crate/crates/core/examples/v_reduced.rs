//! Reduced representatives at a vertex and with respect to a vertex set.
//!
//! Run with `cargo run --example v_reduced`.

use chipfire::reduction::{make_v_reduced_from, v_reduced};
use chipfire::{Divisor, FiringScript, Graph, VertexSet};

fn main() -> chipfire::Result<()> {
    let g = Graph::unweighted(&["v1", "v2", "v3"], &[("v1", "v2"), ("v1", "v2"), ("v2", "v3"), ("v2", "v3")])?;
    let d = Divisor::from_i64s(&[5, -3, 2]);

    for v in 0..g.num_vertices() {
        let (reduced, script) = v_reduced(&g, &d, v)?;
        println!("{}-reduced form of {d:?}: {reduced:?} (script {script:?})", g.id(v));
    }

    // Any equivalent starting point gives the same answer.
    let other = d.apply(&g, &FiringScript::from_i64s(&[0, 3, 1]));
    let (again, _) = v_reduced(&g, &other, 0)?;
    println!("v1-reduced form of the equivalent {other:?}: {again:?}");

    let set = VertexSet::from([0, 2]);
    let start = Divisor::from_i64s(&[0, 6, 0]);
    let (reduced, script) = make_v_reduced_from(&g, &start, &set)?;
    println!("{{v1, v3}}-reduced form of {start:?}: {reduced:?} (script {script:?})");
    Ok(())
}
