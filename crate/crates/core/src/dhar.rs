//! Dhar decompositions with respect to a set of vertices.
//!
//! Starting from `V_0 = V`, the complement `W_i` of `V_i` is fired
//! hypothetically and every vertex of `W_i` that would go negative joins
//! `V_{i+1}`. Once nothing new burns, the unburnt remainder is `W_Dhar(d, V)`:
//! the largest set disjoint from `V` that can fire without pushing `d` negative
//! away from `V`. The divisor is never modified.

use num::BigInt;

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DharResult {
    /// `V_0 ⊂ V_1 ⊂ … ⊂ V_n`, strictly increasing.
    pub chain: Vec<VertexSet>,
    pub w_dhar: VertexSet,
}

impl DharResult {
    pub fn is_empty(&self) -> bool {
        self.w_dhar.is_empty()
    }
}

pub(crate) fn check_effective_away(g: &Graph, d: &Divisor, set: &VertexSet) -> Result<()> {
    let offending: Vec<String> = (0..g.num_vertices())
        .filter(|&v| !set.contains(v) && d[v] < BigInt::from(0))
        .map(|v| g.id(v).to_string())
        .collect();
    if offending.is_empty() {
        Ok(())
    } else {
        Err(Error::NotEffectiveAwayFrom(offending))
    }
}

fn check_nonempty(g: &Graph, set: &VertexSet) -> Result<()> {
    if set.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    g.check_set(set)
}

pub fn dhar_decomposition(g: &Graph, d: &Divisor, set: &VertexSet) -> Result<DharResult> {
    check_nonempty(g, set)?;
    assert_eq!(d.len(), g.num_vertices(), "vertex count mismatch");
    check_effective_away(g, d, set)?;
    Ok(decompose(g, d, set))
}

pub(crate) fn decompose(g: &Graph, d: &Divisor, set: &VertexSet) -> DharResult {
    let n = g.num_vertices();
    let mut burnt = set.clone();
    let mut chain = vec![burnt.clone()];
    loop {
        // A vertex u outside the burnt set loses one chip per edge into it.
        let newly: VertexSet = burnt
            .complement(n)
            .iter()
            .filter(|&u| d[u] < BigInt::from(g.edges_into(u, &burnt)))
            .collect();
        if newly.is_empty() {
            break;
        }
        burnt = burnt.union(&newly);
        chain.push(burnt.clone());
    }
    let w_dhar = burnt.complement(n);
    DharResult { chain, w_dhar }
}

/// Whether `d` is `V`-reduced. Divisors that are negative somewhere outside
/// `V` are simply not reduced.
pub fn is_v_reduced(g: &Graph, d: &Divisor, set: &VertexSet) -> Result<bool> {
    check_nonempty(g, set)?;
    if !d.is_effective_away_from(set) {
        return Ok(false);
    }
    Ok(decompose(g, d, set).is_empty())
}

/// Chip sums over the distance layers `S_0, S_1, …, S_l` around `set`.
///
/// Compared lexicographically, this strictly increases whenever a non-empty
/// Dhar set is fired.
pub fn mu_vector(g: &Graph, d: &Divisor, set: &VertexSet) -> Result<Vec<BigInt>> {
    check_nonempty(g, set)?;
    let dist = g.distances_to_set(set)?;
    let depth = dist.iter().copied().max().unwrap_or(0);
    let mut mu = vec![BigInt::from(0); depth + 1];
    for (v, &k) in dist.iter().enumerate() {
        mu[k] += &d[v];
    }
    Ok(mu)
}
