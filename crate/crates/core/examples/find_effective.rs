//! Decide effectiveness of a divisor class with a checkable certificate.
//!
//! Run with `cargo run --example find_effective`.

use chipfire::reduction::{find_effective, FindEffective};
use chipfire::{Divisor, Graph};

fn main() -> chipfire::Result<()> {
    let g = Graph::unweighted(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")])?;

    for values in [[-3, 1, 0, 4], [-2, 0, 0, 1], [1, -1, 1, -1]] {
        let d = Divisor::from_i64s(&values);
        let cert = FindEffective::new().trace_limit(10).run(&g, &d);
        println!("{values:?}: {} after {} Dhar firings", cert.verdict.as_str(), cert.firings);
        for step in &cert.trace {
            println!(
                "  negative on {:?}, fired {:?} -> {:?}",
                g.set_ids(&step.negative_support),
                g.set_ids(&step.fired),
                step.result
            );
        }
        println!("  representative {:?}, script {:?}", cert.representative, cert.script);
        cert.verify(&g, &d).map_err(chipfire::Error::Internal)?;
    }

    // Degree alone does not decide: this class has degree 0 and is not zero.
    let pair = Graph::unweighted(&["x", "y"], &[("x", "y"), ("x", "y")])?;
    let cert = find_effective(&pair, &Divisor::from_i64s(&[1, -1]));
    println!("(1, -1) on a double edge: {}", cert.verdict.as_str());
    Ok(())
}
