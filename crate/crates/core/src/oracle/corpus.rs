//! Test corpora: exhaustive small graphs up to isomorphism, seeded random
//! graphs, and divisor boxes.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::divisor::Divisor;
use crate::graph::Graph;

/// Seed shared by every sampled corpus.
pub const SEED: u64 = 0x5eed_c41f;

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphFamily {
    pub vertices: usize,
    /// Non-loop edges, counted with multiplicity.
    pub max_edges: usize,
    pub max_loops: usize,
    pub max_weight: u64,
}

impl GraphFamily {
    pub fn loopless(vertices: usize, max_edges: usize) -> Self {
        GraphFamily { vertices, max_edges, max_loops: 0, max_weight: 0 }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Weights, loop counts and pair multiplicities as one comparable key.
fn encode(weights: &[u64], mult: &[Vec<u32>], perm: &[usize]) -> Vec<u64> {
    let n = weights.len();
    let mut key: Vec<u64> = perm.iter().map(|&p| weights[p]).collect();
    for i in 0..n {
        for j in i..n {
            key.push(u64::from(mult[perm[i]][perm[j]]));
        }
    }
    key
}

fn connected(mult: &[Vec<u32>]) -> bool {
    let n = mult.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for w in 0..n {
            if !seen[w] && mult[u][w] > 0 {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

fn build(weights: &[u64], mult: &[Vec<u32>]) -> Graph {
    let n = weights.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i..n {
            for _ in 0..mult[i][j] {
                edges.push((i, j));
            }
        }
    }
    Graph::from_indices(weights, &edges).expect("corpus graphs are valid")
}

/// Distribute at most `budget` units over `slots` slots.
fn compositions(slots: usize, budget: usize) -> Vec<Vec<u32>> {
    if slots == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=budget {
        for mut rest in compositions(slots - 1, budget - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// One connected graph per isomorphism class in the family, in a
/// deterministic order.
pub fn enumerate_graphs(family: GraphFamily) -> Vec<Graph> {
    let n = family.vertices;
    assert!((1..=6).contains(&n), "exhaustive enumeration is for tiny graphs");
    let perms = permutations(n);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let weight_choices: Vec<Vec<u64>> = {
        let mut all = vec![Vec::new()];
        for _ in 0..n {
            all = all
                .into_iter()
                .flat_map(|w| (0..=family.max_weight).map(move |x| [w.clone(), vec![x]].concat()))
                .collect();
        }
        all
    };

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for pair_mult in compositions(pairs.len(), family.max_edges) {
        let mut mult = vec![vec![0u32; n]; n];
        for (&(i, j), &m) in pairs.iter().zip(&pair_mult) {
            mult[i][j] = m;
            mult[j][i] = m;
        }
        if !connected(&mult) {
            continue;
        }
        for loops in compositions(n, family.max_loops) {
            let mut mult = mult.clone();
            for (v, &l) in loops.iter().enumerate() {
                mult[v][v] = l;
            }
            for weights in &weight_choices {
                let key = perms.iter().map(|p| encode(weights, &mult, p)).min().expect("n >= 1");
                if seen.insert(key) {
                    out.push(build(weights, &mult));
                }
            }
        }
    }
    out
}

/// A random connected graph: a random spanning tree plus `extra` further
/// non-loop edges, up to `loops` loops, and weights in `[0, max_weight]`.
pub fn sample_graph(rng: &mut impl Rng, n: usize, extra: usize, loops: usize, max_weight: u64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((order[i], parent));
    }
    if n > 1 {
        for _ in 0..extra {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            edges.push((a, b));
        }
    }
    for _ in 0..rng.gen_range(0..=loops) {
        let v = rng.gen_range(0..n);
        edges.push((v, v));
    }
    let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max_weight)).collect();
    Graph::from_indices(&weights, &edges).expect("sampled graphs are connected")
}

/// Every divisor with entries in `[lo, hi]`.
pub fn divisor_box(n: usize, lo: i64, hi: i64) -> Vec<Divisor> {
    let mut all: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..n {
        all = all.into_iter().flat_map(|d| (lo..=hi).map(move |x| [d.clone(), vec![x]].concat())).collect();
    }
    all.iter().map(|d| Divisor::from_i64s(d)).collect()
}

pub fn sample_divisor(rng: &mut impl Rng, n: usize, lo: i64, hi: i64) -> Divisor {
    let values: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    Divisor::from_i64s(&values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_class_counts() {
        // Connected simple graphs on 3 and 4 vertices: 2 and 6.
        let simple = |g: &Graph| (0..g.num_vertices()).all(|u| (0..g.num_vertices()).all(|w| u == w || g.multiplicity(u, w) <= 1));
        let three: Vec<_> = enumerate_graphs(GraphFamily::loopless(3, 3)).into_iter().filter(simple).collect();
        assert_eq!(three.len(), 2);
        let four: Vec<_> = enumerate_graphs(GraphFamily::loopless(4, 6)).into_iter().filter(simple).collect();
        assert_eq!(four.len(), 6);
        // Connected loopless multigraphs on 2 vertices with at most 3 edges.
        assert_eq!(enumerate_graphs(GraphFamily::loopless(2, 3)).len(), 3);
        assert_eq!(enumerate_graphs(GraphFamily::loopless(1, 0)).len(), 1);
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = sample_graph(&mut rng(7), 5, 3, 2, 1);
        let b = sample_graph(&mut rng(7), 5, 3, 2, 1);
        assert_eq!(a, b);
        assert_eq!(divisor_box(2, -1, 1).len(), 9);
    }
}
