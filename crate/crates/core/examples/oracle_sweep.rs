//! Cross-check the library against the brute-force oracles on a small
//! exhaustive corpus.
//!
//! Run with `cargo run --release --example oracle_sweep`.

use chipfire::dhar::is_v_reduced;
use chipfire::oracle::corpus::{divisor_box, enumerate_graphs, GraphFamily};
use chipfire::oracle::{self, SearchBudget};
use chipfire::reduction::find_effective;
use chipfire::VertexSet;
use num::ToPrimitive;

fn main() -> chipfire::Result<()> {
    let graphs = enumerate_graphs(GraphFamily::loopless(3, 5));
    println!("{} isomorphism classes of connected 3-vertex graphs with at most 5 edges", graphs.len());

    let (mut checked, mut effective) = (0, 0);
    for g in &graphs {
        for d in divisor_box(3, -2, 2) {
            let top = d.iter().map(|x| x.magnitude().to_u32().unwrap()).max().unwrap_or(0);
            let budget = SearchBudget::scripts(1 + 3 * top);
            let ours = find_effective(g, &d).is_effective();
            let brute = oracle::brute_effective_class(g, &d, budget).is_effective();
            assert_eq!(ours, brute, "{d:?}");
            effective += usize::from(ours);

            let set = VertexSet::singleton(0);
            if d.is_effective_away_from(&set) {
                assert_eq!(is_v_reduced(g, &d, &set)?, oracle::brute_is_v_reduced(g, &d, &set)?);
            }
            checked += 1;
        }
    }
    println!("{checked} divisors checked, {effective} effective, no disagreements");

    let rows = oracle::double_path_integer_sweep(&graphs_double_path()?)?;
    let improvable = rows.iter().filter(|r| r.improves()).count();
    println!("double path sweep: {improvable} of {} integral targets admit an improvement", rows.len());
    Ok(())
}

fn graphs_double_path() -> chipfire::Result<chipfire::Graph> {
    chipfire::Graph::unweighted(&["v1", "v2", "v3"], &[("v1", "v2"), ("v1", "v2"), ("v2", "v3"), ("v2", "v3")])
}
