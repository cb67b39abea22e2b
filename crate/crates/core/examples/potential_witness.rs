//! Potentials q_E(d), the witness divisor E, and the bounded E-reduced check.
//!
//! Run with `cargo run --example potential_witness`.

use chipfire::potential::{construct_witness_e, interpolating_function, q_function, EReducedCheck};
use chipfire::{Divisor, Graph, RDivisor, VertexSet};
use num::BigRational;

fn main() -> chipfire::Result<()> {
    let g = Graph::unweighted(&["v1", "v2", "v3"], &[("v1", "v2"), ("v1", "v2"), ("v2", "v3"), ("v2", "v3")])?;
    let d = Divisor::from_i64s(&[1, 3, 2]);
    let set = VertexSet::from([0, 2]);

    let e = construct_witness_e(&g, &d, &set)?;
    let q = q_function(&g, &e, &d.to_rational())?;
    println!("witness E for {d:?} on {{v1, v3}}: {e}", e = show(&e));
    println!("q_E(d) = {:?}, mass {}", q.q.iter().map(ToString::to_string).collect::<Vec<_>>(), q.total);

    let f = interpolating_function(&g, 1, &set, &BigRational::from_integer(1.into()))?;
    println!("interpolating function, 0 at v2 and 1 on {{v1, v3}}: {:?}", f.iter().map(ToString::to_string).collect::<Vec<_>>());

    let check = EReducedCheck::new(6).jobs(2);
    println!("E-reduced against its witness: {}", check.is_e_reduced(&g, &e, &d, &set)?);

    // An integral E of the same degree is beaten by an equivalent divisor.
    let integral = RDivisor::from_i64s(&[3, 0, 3]);
    if let Some(better) = check.find_improvement(&g, &integral, &d, &set)? {
        println!(
            "against (3, 0, 3): {:?} has mass {} (script {:?})",
            better.divisor, better.total, better.script
        );
    }
    Ok(())
}

fn show(d: &RDivisor) -> String {
    let parts: Vec<String> = d.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}
