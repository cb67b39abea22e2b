#![allow(dead_code)]

use chipfire::divisor::canonical_divisor;
use chipfire::oracle::corpus::{self, divisor_box, enumerate_graphs, sample_divisor, sample_graph, GraphFamily};
use chipfire::{Divisor, Graph, VertexSet};
use num::ToPrimitive;
use rand::Rng;

/// Triangle with every edge doubled.
pub fn double_triangle() -> Graph {
    Graph::from_json(include_str!("../data/double_triangle.json")).unwrap()
}

/// Path v1 - v2 - v3 with both edges doubled.
pub fn double_path() -> Graph {
    Graph::from_json(include_str!("../data/double_path.json")).unwrap()
}

pub fn div(values: &[i64]) -> Divisor {
    Divisor::from_i64s(values)
}

pub struct Family {
    pub label: &'static str,
    pub cases: Vec<(Graph, Vec<Divisor>)>,
}

impl Family {
    pub fn len(&self) -> usize {
        self.cases.iter().map(|(_, ds)| ds.len()).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Graph, &Divisor)> {
        self.cases.iter().flat_map(|(g, ds)| ds.iter().map(move |d| (g, d)))
    }
}

fn sampled(g: &Graph, rng: &mut impl Rng, count: usize, lo: i64, hi: i64) -> Vec<Divisor> {
    (0..count).map(|_| sample_divisor(rng, g.num_vertices(), lo, hi)).collect()
}

/// Graphs and divisors for the effectiveness and reducedness sweeps:
/// every connected loopless multigraph with up to 3 vertices and 7 edges
/// against the full box `[-3, 3]^n`; every such graph on 4 vertices against
/// 100 sampled divisors; 60 sampled 5-vertex graphs with 20 divisors each;
/// and all 3-vertex graphs with up to 5 edges, 2 loops and weights up to 1
/// against 15 sampled divisors.
pub fn effectiveness_corpus() -> Vec<Family> {
    let mut out = Vec::new();

    let mut small = Vec::new();
    for n in 1..=3 {
        for g in enumerate_graphs(GraphFamily::loopless(n, 7)) {
            let ds = divisor_box(n, -3, 3);
            small.push((g, ds));
        }
    }
    out.push(Family { label: "exhaustive, up to 3 vertices", cases: small });

    let mut rng = corpus::rng(4);
    let four = enumerate_graphs(GraphFamily::loopless(4, 7))
        .into_iter()
        .map(|g| {
            let ds = sampled(&g, &mut rng, 100, -3, 3);
            (g, ds)
        })
        .collect();
    out.push(Family { label: "all 4-vertex graphs, sampled divisors", cases: four });

    let mut rng = corpus::rng(5);
    let five = (0..60)
        .map(|i| {
            let g = sample_graph(&mut rng, 5, i % 3, 1, 1);
            let ds = sampled(&g, &mut rng, 20, -3, 3);
            (g, ds)
        })
        .collect();
    out.push(Family { label: "sampled 5-vertex graphs", cases: five });

    let mut rng = corpus::rng(6);
    let decorated = enumerate_graphs(GraphFamily { vertices: 3, max_edges: 5, max_loops: 2, max_weight: 1 })
        .into_iter()
        .map(|g| {
            let ds = sampled(&g, &mut rng, 15, -3, 3);
            (g, ds)
        })
        .collect();
    out.push(Family { label: "3-vertex graphs with loops and weights", cases: decorated });
    out
}

/// Script bound for the brute-force class search: `1 + |V| * max |d_v|`.
pub fn effectiveness_bound(g: &Graph, d: &Divisor) -> u32 {
    let top = d.iter().map(|x| x.magnitude().to_u32().unwrap()).max().unwrap_or(0);
    1 + g.num_vertices() as u32 * top
}

/// Non-empty vertex sets to test against: all of them for up to 3 vertices,
/// otherwise singletons, pairs, and the complement of the first vertex.
pub fn vertex_sets(n: usize) -> Vec<VertexSet> {
    if n <= 3 {
        return (1u32..1 << n).map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect()).collect();
    }
    let mut out: Vec<VertexSet> = (0..n).map(VertexSet::singleton).collect();
    for a in 0..n {
        for b in a + 1..n {
            out.push(VertexSet::from([a, b]));
        }
    }
    out.push(VertexSet::singleton(0).complement(n));
    out
}

/// Graphs for the potential-theory checks (at most 4 vertices), each with
/// divisors in `[-2, 3]`.
pub fn potential_corpus() -> Family {
    let mut cases = Vec::new();
    let mut rng = corpus::rng(7);
    for n in 1..=3 {
        for g in enumerate_graphs(GraphFamily::loopless(n, 5)) {
            let ds = if n <= 2 { divisor_box(n, -2, 3) } else { sampled(&g, &mut rng, 40, -2, 3) };
            cases.push((g, ds));
        }
    }
    for g in enumerate_graphs(GraphFamily::loopless(4, 6)) {
        let ds = sampled(&g, &mut rng, 6, -2, 3);
        cases.push((g, ds));
    }
    Family { label: "potential corpus, up to 4 vertices", cases }
}

/// Graphs where loops and weights matter: all 3-vertex graphs with up to 5
/// edges, 2 loops and weights up to 1; all 4-vertex graphs with up to 5
/// edges, 1 loop and weights up to 1; 40 sampled 5-vertex graphs. Divisors
/// are drawn between -1 and the largest canonical value, plus `0` and `k`.
pub fn special_corpus() -> Vec<Family> {
    let mut rng = corpus::rng(8);
    let mut draw = |g: &Graph, count: usize| {
        let k = canonical_divisor(g);
        let top = k.iter().max().unwrap().to_i64().unwrap().max(1);
        let mut ds = vec![Divisor::zero(g.num_vertices()), k];
        ds.extend(sampled(g, &mut rng, count, -1, top));
        ds
    };
    let three = enumerate_graphs(GraphFamily { vertices: 3, max_edges: 5, max_loops: 2, max_weight: 1 })
        .into_iter()
        .map(|g| {
            let ds = draw(&g, 10);
            (g, ds)
        })
        .collect();
    let four = enumerate_graphs(GraphFamily { vertices: 4, max_edges: 5, max_loops: 1, max_weight: 1 })
        .into_iter()
        .map(|g| {
            let ds = draw(&g, 4);
            (g, ds)
        })
        .collect();
    let mut graph_rng = corpus::rng(9);
    let five = (0..40)
        .map(|i| {
            let g = sample_graph(&mut graph_rng, 5, i % 4, 2, 1);
            let ds = draw(&g, 10);
            (g, ds)
        })
        .collect();
    vec![
        Family { label: "3-vertex graphs with loops and weights", cases: three },
        Family { label: "4-vertex graphs with loops and weights", cases: four },
        Family { label: "sampled 5-vertex graphs", cases: five },
    ]
}

/// A connected graph on `n` vertices determined by `seed`: random spanning
/// tree, up to 4 extra edges, at most one loop, weights 0 or 1.
pub fn graph_from_seed(n: usize, seed: u64) -> Graph {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let extra = rng.gen_range(0..=4);
    sample_graph(&mut rng, n, extra, 1, 1)
}

/// Proptest strategy for a graph together with a divisor on it.
pub fn graph_and_divisor(
    vertices: std::ops::RangeInclusive<usize>,
    values: std::ops::RangeInclusive<i64>,
) -> impl proptest::strategy::Strategy<Value = (Graph, Divisor)> {
    use proptest::prelude::*;
    (vertices, any::<u64>()).prop_flat_map(move |(n, seed)| {
        let g = graph_from_seed(n, seed);
        proptest::collection::vec(values.clone(), n).prop_map(move |v| (g.clone(), Divisor::from_i64s(&v)))
    })
}

/// A vertex set from a bit mask, forced non-empty.
pub fn set_from_mask(n: usize, mask: u32) -> VertexSet {
    let set: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
    if set.is_empty() {
        VertexSet::singleton(mask as usize % n)
    } else {
        set
    }
}
