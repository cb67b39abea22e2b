//! Exact potential theory on the vertices of a graph.
//!
//! For rational divisors `E` and `D` of equal degree, `q_E(D)` is the unique
//! vertex function with minimum 0 such that `E = D + div(q_E(D))`. A divisor
//! `d` effective away from `V` is `E`-reduced (for `E` supported on `V`) when
//! the total mass of `q_E(d)` is minimal over all equivalent divisors that are
//! also effective away from `V`.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::dhar::check_effective_away;
use crate::divisor::{principal_rdivisor, Divisor, FiringScript, RDivisor, RFunction};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QResult {
    pub q: RFunction,
    /// Where `q` vanishes; never empty.
    pub zero_set: VertexSet,
    pub total: BigRational,
}

fn degree_mismatch(a: &BigRational, b: &BigRational) -> Error {
    Error::DegreeMismatch { left: a.to_string(), right: b.to_string() }
}

/// `q_E(D)`.
pub fn q_function(g: &Graph, e: &RDivisor, d: &RDivisor) -> Result<QResult> {
    let (de, dd) = (e.degree(), d.degree());
    if de != dd {
        return Err(degree_mismatch(&de, &dd));
    }
    let target = e - d;
    let q = RFunction::new(linalg::solve_potential(g, target.values())?).normalize_min_zero();
    let zero_set = q.zero_set();
    let total = q.total();
    Ok(QResult { q, zero_set, total })
}

/// Total mass of `q_E(d)` for an integer divisor `d`.
pub fn q_total_of_class_member(g: &Graph, e: &RDivisor, d: &Divisor) -> Result<BigRational> {
    Ok(q_function(g, e, &d.to_rational())?.total)
}

/// The function equal to `k` on `set`, 0 at `v`, and with vanishing
/// principal divisor at every other vertex.
pub fn interpolating_function(g: &Graph, v: usize, set: &VertexSet, k: &BigRational) -> Result<RFunction> {
    g.check_vertex(v)?;
    g.check_set(set)?;
    if set.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    if set.contains(v) {
        return Err(Error::VertexInSet(g.id(v).to_string()));
    }
    let n = g.num_vertices();
    let mut pins = vec![None; n];
    pins[v] = Some(BigRational::zero());
    for u in set {
        pins[u] = Some(k.clone());
    }
    Ok(RFunction::new(linalg::solve_pinned(g, &pins, &vec![BigRational::zero(); n])?))
}

/// An `E` supported on `set` with `deg E = deg d` and `q_E(d)` vanishing on
/// all of `set`.
///
/// Starts from all of the degree placed on the first vertex of `set`. While
/// some `v` in `set` has `q(v) > 0`, `E` is moved by `div(k f)` where `f` is
/// the interpolating function that is 1 on the current zero set and 0 at `v`;
/// `k` is the first value at which another vertex joins the zero set,
/// `min q(u) / (1 - f(u))` over `u` with `f(u) < 1`.
pub fn construct_witness_e(g: &Graph, d: &Divisor, set: &VertexSet) -> Result<RDivisor> {
    g.check_set(set)?;
    let first = set.first().ok_or(Error::EmptyVertexSet)?;
    check_effective_away(g, d, set)?;

    let n = g.num_vertices();
    let mut e = RDivisor::zero(n);
    e.0[first] = BigRational::from_integer(d.degree());
    let d_rat = d.to_rational();

    for _ in 0..=set.len() {
        let current = q_function(g, &e, &d_rat)?;
        let Some(v) = set.iter().find(|&v| current.q[v].is_positive()) else {
            let stray: Vec<String> =
                e.support().difference(set).iter().map(|u| g.id(u).to_string()).collect();
            if !stray.is_empty() {
                return Err(Error::Internal(format!("witness left its support set at {stray:?}")));
            }
            return Ok(e);
        };
        let f1 = interpolating_function(g, v, &current.zero_set, &BigRational::one())?;
        let k = critical_step(&current.q, &f1)
            .ok_or_else(|| Error::Internal("interpolating step has no critical value".into()))?;
        e = &e + &principal_rdivisor(g, &f1.scale(&k));
        log::trace!("witness step at {}: k = {k}", g.id(v));
    }
    Err(Error::Internal("witness construction did not converge".into()))
}

/// `min q(u) / (1 - f(u))` over vertices with `f(u) < 1`.
pub(crate) fn critical_step(q: &RFunction, f1: &RFunction) -> Option<BigRational> {
    let one = BigRational::one();
    q.iter()
        .zip(f1.iter())
        .filter(|(_, f)| **f < one)
        .map(|(qu, f)| qu / (&one - f))
        .min()
}

/// Default enumeration bound for the bounded `E`-reduced check:
/// `|V(G)| * (1 + max |d_v|)`.
pub fn default_bound(g: &Graph, d: &Divisor) -> u64 {
    let top = d.iter().map(|x| x.abs()).max().unwrap_or_default();
    let top = top.to_u64().unwrap_or(u64::MAX / 2);
    (g.num_vertices() as u64).saturating_mul(top.saturating_add(1))
}

/// An equivalent divisor beating `d` on the `E`-objective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Improvement {
    pub divisor: Divisor,
    pub script: FiringScript,
    pub total: BigRational,
}

/// Bounded search for `E`-reducedness: scripts `f` with values in
/// `[0, bound]` are tried, and any `d + div(f)` effective away from `set` with
/// smaller `q_E` mass is an improvement.
#[derive(Debug, Clone)]
pub struct EReducedCheck {
    pub bound: u64,
    pub jobs: usize,
}

impl EReducedCheck {
    pub fn new(bound: u64) -> Self {
        EReducedCheck { bound, jobs: 1 }
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    /// The first improvement in lexicographic script order, if any.
    pub fn find_improvement(
        &self,
        g: &Graph,
        e: &RDivisor,
        d: &Divisor,
        set: &VertexSet,
    ) -> Result<Option<Improvement>> {
        g.check_set(set)?;
        if set.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let stray: Vec<String> = e.support().difference(set).iter().map(|u| g.id(u).to_string()).collect();
        if !stray.is_empty() {
            return Err(Error::SupportViolation(stray));
        }
        check_effective_away(g, d, set)?;
        let base = q_function(g, e, &d.to_rational())?;

        // q_E(d + div f) = q_E(d) - f, renormalised. Work with integers
        // scaled by the common denominator of q.
        let scale = base.q.iter().fold(BigInt::one(), |acc, x| num::integer::lcm(acc, x.denom().clone()));
        let scaled: Vec<BigInt> = base.q.iter().map(|x| x.numer() * (&scale / x.denom())).collect();
        let base_total: BigInt = scaled.iter().sum();
        let n = g.num_vertices();
        let n_big = BigInt::from(n);

        let visit = |f: &[u64]| -> Option<Improvement> {
            let div = integer_div(g, f);
            let mut candidate = d.clone();
            for v in 0..n {
                candidate.0[v] += div[v];
                if !set.contains(v) && candidate.0[v].is_negative() {
                    return None;
                }
            }
            let shifted: Vec<BigInt> = scaled.iter().zip(f).map(|(q, &x)| q - &scale * BigInt::from(x)).collect();
            let min = shifted.iter().min().expect("non-empty graph").clone();
            let total = shifted.iter().sum::<BigInt>() - &n_big * min;
            (total < base_total).then(|| Improvement {
                divisor: candidate,
                script: FiringScript::new(f.iter().map(|&x| BigInt::from(x)).collect()).normalize_min_zero(),
                total: BigRational::new(total, scale.clone()),
            })
        };
        Ok(search_scripts(n, self.bound, self.jobs, visit))
    }

    pub fn is_e_reduced(&self, g: &Graph, e: &RDivisor, d: &Divisor, set: &VertexSet) -> Result<bool> {
        Ok(self.find_improvement(g, e, d, set)?.is_none())
    }
}

/// Single-threaded bounded `E`-reduced check.
pub fn is_e_reduced_bounded(g: &Graph, e: &RDivisor, d: &Divisor, set: &VertexSet, bound: u64) -> Result<bool> {
    EReducedCheck::new(bound).is_e_reduced(g, e, d, set)
}

fn integer_div(g: &Graph, f: &[u64]) -> Vec<i128> {
    let mut out = vec![0i128; f.len()];
    for (v, slot) in out.iter_mut().enumerate() {
        for &(w, m) in g.neighbors(v) {
            *slot += i128::from(m) * (i128::from(f[w]) - i128::from(f[v]));
        }
    }
    out
}

/// Visit every script in `[0, bound]^n` with minimum 0, except the zero
/// script, in lexicographic order, and return the first hit. With several
/// jobs the first coordinate is striped across threads; the hit with the
/// smallest rank still wins, so the answer does not depend on `jobs`.
fn search_scripts<T, F>(n: usize, bound: u64, jobs: usize, visit: F) -> Option<T>
where
    T: Send,
    F: Fn(&[u64]) -> Option<T> + Sync,
{
    if n == 0 || bound == 0 {
        return None;
    }
    let radix = u128::from(bound) + 1;
    let best = AtomicU64::new(u64::MAX);
    let hits: Mutex<Vec<(u128, T)>> = Mutex::new(Vec::new());
    // Ranks above u64 range are compared by their first coordinate only.
    let rank_of = |f: &[u64]| -> u128 { f.iter().fold(0u128, |acc, &x| acc.saturating_mul(radix).saturating_add(u128::from(x))) };

    let worker = |job: usize| {
        let mut first = job as u64;
        while first <= bound {
            if u128::from(first) > u128::from(best.load(Ordering::Relaxed)) {
                return;
            }
            let mut f = vec![0u64; n];
            f[0] = first;
            loop {
                if f.iter().any(|&x| x == 0) && f.iter().any(|&x| x != 0) {
                    if let Some(hit) = visit(&f) {
                        best.fetch_min(first, Ordering::Relaxed);
                        hits.lock().expect("poisoned").push((rank_of(&f), hit));
                        return;
                    }
                }
                // Odometer over coordinates 1..n.
                let mut i = n - 1;
                loop {
                    if i == 0 {
                        break;
                    }
                    if f[i] < bound {
                        f[i] += 1;
                        break;
                    }
                    f[i] = 0;
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
            }
            first += jobs as u64;
        }
    };

    if jobs <= 1 {
        worker(0);
    } else {
        std::thread::scope(|s| {
            for job in 0..jobs {
                let worker = &worker;
                s.spawn(move || worker(job));
            }
        });
    }
    hits.into_inner().expect("poisoned").into_iter().min_by(|a, b| a.0.cmp(&b.0)).map(|(_, t)| t)
}
