//! Connected vertex-weighted multigraphs.
//!
//! Vertices are addressed by their position in construction order (a plain
//! `usize`); [`VertexId`] strings only appear at the boundary, when parsing or
//! serializing. Loops and parallel edges are kept individually.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::EmptyVertexId);
        }
        Ok(VertexId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A set of vertex indices, iterated in graph order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every vertex of a graph with `n` vertices.
    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(BTreeSet::from([v]))
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        self.0.remove(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// Vertices of `0..n` not in this set.
    pub fn complement(&self, n: usize) -> Self {
        (0..n).filter(|v| !self.contains(*v)).collect()
    }

    pub fn union(&self, other: &VertexSet) -> Self {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> Self {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> Self {
        VertexSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(arr: [usize; N]) -> Self {
        arr.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// Graph description as it appears in the JSON interchange format, before
/// validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGraph {
    pub vertices: Vec<RawVertex>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawVertex {
    pub id: String,
    #[serde(default)]
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Vertex {
    id: VertexId,
    weight: u64,
}

/// A connected vertex-weighted multigraph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<Vertex>,
    /// Canonically sorted by endpoint ids; each pair has the smaller id first.
    edges: Vec<(usize, usize)>,
    index: HashMap<String, usize>,
    /// `n * n` endpoint-count table; the diagonal holds loop counts.
    mult: Vec<u32>,
    /// Non-loop neighbours with edge multiplicity.
    adjacency: Vec<Vec<(usize, u32)>>,
}

impl Graph {
    /// Validate a raw description and build the graph.
    pub fn validate(raw: RawGraph) -> Result<Graph> {
        if raw.vertices.is_empty() {
            return Err(Error::NoVertices);
        }
        let mut vertices = Vec::with_capacity(raw.vertices.len());
        let mut index = HashMap::new();
        for (i, v) in raw.vertices.into_iter().enumerate() {
            let id = VertexId::new(v.id)?;
            if v.weight < 0 {
                return Err(Error::NegativeWeight { id: id.0, weight: v.weight });
            }
            if index.insert(id.0.clone(), i).is_some() {
                return Err(Error::DuplicateVertexId(id.0));
            }
            vertices.push(Vertex { id, weight: v.weight as u64 });
        }

        let mut edges = Vec::with_capacity(raw.edges.len());
        for (a, b) in raw.edges {
            let ia = *index.get(&a).ok_or(Error::UnknownEndpoint(a.clone()))?;
            let ib = *index.get(&b).ok_or(Error::UnknownEndpoint(b.clone()))?;
            edges.push(if a <= b { (ia, ib) } else { (ib, ia) });
        }
        edges.sort_by(|x, y| {
            let key = |e: &(usize, usize)| (vertices[e.0].id.clone(), vertices[e.1].id.clone());
            key(x).cmp(&key(y))
        });

        let n = vertices.len();
        let mut mult = vec![0u32; n * n];
        for &(a, b) in &edges {
            mult[a * n + b] += 1;
            if a != b {
                mult[b * n + a] += 1;
            }
        }
        let adjacency = (0..n)
            .map(|u| {
                (0..n)
                    .filter(|&w| w != u && mult[u * n + w] > 0)
                    .map(|w| (w, mult[u * n + w]))
                    .collect()
            })
            .collect();

        let graph = Graph { vertices, edges, index, mult, adjacency };
        if graph.components_of(&VertexSet::new()).len() != 1 {
            return Err(Error::Disconnected);
        }
        Ok(graph)
    }

    /// Build from `(id, weight)` pairs and id-pair edges.
    pub fn new<S, T, U>(
        vertices: impl IntoIterator<Item = (S, i64)>,
        edges: impl IntoIterator<Item = (T, U)>,
    ) -> Result<Graph>
    where
        S: Into<String>,
        T: Into<String>,
        U: Into<String>,
    {
        Graph::validate(RawGraph {
            vertices: vertices
                .into_iter()
                .map(|(id, weight)| RawVertex { id: id.into(), weight })
                .collect(),
            edges: edges.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
        })
    }

    /// All weights zero.
    pub fn unweighted(ids: &[&str], edges: &[(&str, &str)]) -> Result<Graph> {
        Graph::new(ids.iter().map(|id| (*id, 0)), edges.iter().copied())
    }

    /// Vertices named `v1..vn`, edges given by index pairs.
    pub fn from_indices(weights: &[u64], edges: &[(usize, usize)]) -> Result<Graph> {
        let ids: Vec<String> = (1..=weights.len()).map(|i| format!("v{i}")).collect();
        let mut es = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            let name = |i: usize| {
                ids.get(i).cloned().ok_or_else(|| Error::UnknownEndpoint(format!("#{i}")))
            };
            es.push((name(a)?, name(b)?));
        }
        Graph::new(ids.iter().cloned().zip(weights.iter().map(|&w| w as i64)), es)
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let raw: RawGraph = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Graph::validate(raw)
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            vertices: self
                .vertices
                .iter()
                .map(|v| RawVertex { id: v.id.0.clone(), weight: v.weight as i64 })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| (self.vertices[a].id.0.clone(), self.vertices[b].id.0.clone()))
                .collect(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn id(&self, v: usize) -> &VertexId {
        &self.vertices[v].id
    }

    pub fn ids(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter().map(|v| &v.id)
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_owned()))
    }

    pub fn vertex_set<S: AsRef<str>>(&self, ids: impl IntoIterator<Item = S>) -> Result<VertexSet> {
        ids.into_iter().map(|id| self.index_of(id.as_ref())).collect()
    }

    pub fn set_ids(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|v| self.vertices[v].id.0.clone()).collect()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.num_vertices())
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.vertices[v].weight
    }

    /// Number of edges between two distinct vertices, or loops at `u` if `u == w`.
    pub fn multiplicity(&self, u: usize, w: usize) -> u32 {
        self.mult[u * self.num_vertices() + w]
    }

    pub fn loops(&self, v: usize) -> u32 {
        self.multiplicity(v, v)
    }

    /// Non-loop neighbours of `v` with their edge multiplicities.
    pub fn neighbors(&self, v: usize) -> &[(usize, u32)] {
        &self.adjacency[v]
    }

    /// Edge endpoints at `v`, a loop counting twice.
    pub fn valence(&self, v: usize) -> u64 {
        self.valence_without_loops(v) + 2 * u64::from(self.loops(v))
    }

    pub fn valence_without_loops(&self, v: usize) -> u64 {
        self.adjacency[v].iter().map(|&(_, m)| u64::from(m)).sum()
    }

    /// Non-loop edges from `v` to members of `set` other than `v` itself.
    pub fn edges_into(&self, v: usize, set: &VertexSet) -> u64 {
        self.adjacency[v]
            .iter()
            .filter(|(w, _)| set.contains(*w))
            .map(|&(_, m)| u64::from(m))
            .sum()
    }

    /// `|E| - |V| + 1 + sum of weights`.
    pub fn genus(&self) -> u64 {
        let weights: u64 = self.vertices.iter().map(|v| v.weight).sum();
        (self.num_edges() as u64 + 1 + weights) - self.num_vertices() as u64
    }

    /// Connected components of the subgraph induced on the vertices outside
    /// `exclude`, ordered by their smallest vertex.
    pub fn components_excluding(&self, exclude: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_set(exclude)?;
        Ok(self.components_of(exclude))
    }

    fn components_of(&self, exclude: &VertexSet) -> Vec<VertexSet> {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || exclude.contains(start) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for &(w, _) in &self.adjacency[u] {
                    if !seen[w] && !exclude.contains(w) {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Breadth-first distance from every vertex to the nearest member of `targets`.
    pub fn distances_to_set(&self, targets: &VertexSet) -> Result<Vec<usize>> {
        self.check_set(targets)?;
        if targets.is_empty() {
            return Err(Error::EmptyTargetSet);
        }
        let mut dist = vec![usize::MAX; self.num_vertices()];
        let mut queue = VecDeque::new();
        for t in targets {
            dist[t] = 0;
            queue.push_back(t);
        }
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    pub fn distance_to_set(&self, v: usize, targets: &VertexSet) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.distances_to_set(targets)?[v])
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{v}")))
        }
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<()> {
        set.iter().try_for_each(|v| self.check_vertex(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn double_triangle() -> Graph {
        Graph::unweighted(
            &["v1", "v2", "v3"],
            &[("v1", "v2"), ("v1", "v2"), ("v1", "v3"), ("v1", "v3"), ("v2", "v3"), ("v2", "v3")],
        )
        .unwrap()
    }

    fn double_path() -> Graph {
        Graph::unweighted(
            &["v1", "v2", "v3"],
            &[("v1", "v2"), ("v1", "v2"), ("v2", "v3"), ("v2", "v3")],
        )
        .unwrap()
    }

    #[test]
    fn validation_errors() {
        assert_eq!(Graph::unweighted(&["a", "b"], &[]).unwrap_err(), Error::Disconnected);
        assert_eq!(
            Graph::unweighted(&["a", "a"], &[("a", "a")]).unwrap_err(),
            Error::DuplicateVertexId("a".into())
        );
        assert_eq!(
            Graph::unweighted(&["a"], &[("a", "b")]).unwrap_err(),
            Error::UnknownEndpoint("b".into())
        );
        assert!(matches!(
            Graph::new([("a", -1)], Vec::<(String, String)>::new()),
            Err(Error::NegativeWeight { .. })
        ));
        assert_eq!(Graph::unweighted(&[""], &[]).unwrap_err(), Error::EmptyVertexId);
        assert_eq!(Graph::unweighted(&[], &[]).unwrap_err(), Error::NoVertices);
        assert!(Graph::unweighted(&["solo"], &[]).is_ok());
    }

    #[test]
    fn valences() {
        let g = double_triangle();
        assert_eq!(g.valence(0), 4);
        assert_eq!(g.valence_without_loops(2), 4);
        let f2 = double_path();
        assert_eq!(f2.valence(1), 4);
        assert_eq!(f2.valence_without_loops(0), 2);

        let looped = Graph::unweighted(&["a"], &[("a", "a")]).unwrap();
        assert_eq!(looped.valence(0), 2);
        assert_eq!(looped.valence_without_loops(0), 0);

        let mixed = Graph::unweighted(&["a", "b"], &[("a", "a"), ("a", "b")]).unwrap();
        assert_eq!(mixed.valence_without_loops(0), 1);
        assert_eq!(mixed.valence(0), 3);
    }

    #[test]
    fn genus_values() {
        assert_eq!(double_triangle().genus(), 4);
        assert_eq!(double_path().genus(), 2);
        assert_eq!(Graph::unweighted(&["a"], &[]).unwrap().genus(), 0);
        let weighted = Graph::new([("a", 2), ("b", 1)], [("a", "b")]).unwrap();
        assert_eq!(weighted.genus(), 3);
    }

    #[test]
    fn components() {
        let g = double_path();
        let comps = g.components_excluding(&VertexSet::from([1])).unwrap();
        assert_eq!(comps, vec![VertexSet::from([0]), VertexSet::from([2])]);
        let g1 = double_triangle();
        assert_eq!(g1.components_excluding(&VertexSet::new()).unwrap(), vec![g1.all_vertices()]);
        assert!(g1.components_excluding(&g1.all_vertices()).unwrap().is_empty());
        assert!(matches!(
            g1.components_excluding(&VertexSet::from([7])),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn distances() {
        let g = double_path();
        assert_eq!(g.distance_to_set(2, &VertexSet::from([0])).unwrap(), 2);
        assert_eq!(g.distance_to_set(1, &VertexSet::from([1])).unwrap(), 0);
        assert_eq!(double_triangle().distance_to_set(2, &VertexSet::from([0, 1])).unwrap(), 1);
        assert_eq!(g.distance_to_set(0, &VertexSet::new()).unwrap_err(), Error::EmptyTargetSet);
    }

    #[test]
    fn canonical_edge_order() {
        let g = Graph::unweighted(&["b", "a"], &[("b", "a"), ("a", "a"), ("b", "b")]).unwrap();
        let raw = g.to_raw();
        assert_eq!(
            raw.edges,
            vec![("a".into(), "a".into()), ("a".into(), "b".into()), ("b".into(), "b".into())]
        );
        assert_eq!(Graph::validate(raw).unwrap(), g);
    }
}
