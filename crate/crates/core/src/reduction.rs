//! Reduced representatives and the effectiveness decision procedure.
//!
//! [`find_effective`] repeatedly fires the Dhar set of the current divisor
//! with respect to its own negative support. Each firing keeps the divisor
//! effective on the fired vertices, so the negative support can only shrink.
//! The loop ends either with an effective divisor or with a divisor whose Dhar
//! set is empty; a non-effective divisor that is reduced with respect to its
//! negative support certifies that the whole class is not effective.

use num::{BigInt, Integer, Signed};
use std::cmp::Reverse;

use crate::dhar::{self, decompose, mu_vector};
use crate::divisor::{fire_unchecked, principal_divisor, Divisor, FiringScript};
use crate::error::Result;
#[cfg(test)]
use crate::error::Error;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Effective,
    NotEffective,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Effective => "effective",
            Verdict::NotEffective => "not_effective",
        }
    }
}

/// One Dhar firing of the decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// Negative support of the divisor before the firing.
    pub negative_support: VertexSet,
    pub fired: VertexSet,
    pub result: Divisor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectivenessCertificate {
    pub verdict: Verdict,
    /// Effective when the verdict is `Effective`; otherwise a divisor that is
    /// reduced with respect to its (non-empty) negative support.
    pub representative: Divisor,
    /// `representative = input + div(script)`, minimum 0.
    pub script: FiringScript,
    pub trace: Vec<TraceStep>,
    /// Number of Dhar firings performed, whether or not they were retained in
    /// the trace.
    pub firings: usize,
}

impl EffectivenessCertificate {
    pub fn is_effective(&self) -> bool {
        self.verdict == Verdict::Effective
    }

    /// Re-derive every claim the certificate makes about `input`.
    pub fn verify(&self, g: &Graph, input: &Divisor) -> std::result::Result<(), String> {
        if input.apply(g, &self.script) != self.representative {
            return Err("representative differs from input + div(script)".into());
        }
        match self.verdict {
            Verdict::Effective if !self.representative.is_effective() => {
                Err("representative is not effective".into())
            }
            Verdict::Effective => Ok(()),
            Verdict::NotEffective => {
                let neg = self.representative.negative_support();
                if neg.is_empty() {
                    return Err("witness has empty negative support".into());
                }
                match dhar::is_v_reduced(g, &self.representative, &neg) {
                    Ok(true) => Ok(()),
                    Ok(false) => Err("witness is not reduced w.r.t. its negative support".into()),
                    Err(e) => Err(e.to_string()),
                }
            }
        }
    }
}

/// Configuration for the decision procedure.
#[derive(Debug, Clone, Default)]
pub struct FindEffective {
    trace_limit: Option<usize>,
}

impl FindEffective {
    pub fn new() -> Self {
        Self::default()
    }

    /// Keep at most `limit` trace steps. The script stays exact regardless.
    pub fn trace_limit(mut self, limit: usize) -> Self {
        self.trace_limit = Some(limit);
        self
    }

    pub fn run(&self, g: &Graph, d: &Divisor) -> EffectivenessCertificate {
        self.run_with(g, d, |_, _| Ok(())).expect("no-op hook cannot fail")
    }

    /// Run the procedure, calling `hook(before, step)` after every firing. An
    /// error from the hook aborts the run.
    pub(crate) fn run_with<F>(&self, g: &Graph, d: &Divisor, mut hook: F) -> Result<EffectivenessCertificate>
    where
        F: FnMut(&Divisor, &TraceStep) -> Result<()>,
    {
        let n = g.num_vertices();
        assert_eq!(d.len(), n, "vertex count mismatch");
        let limit = self.trace_limit.unwrap_or(usize::MAX);
        let mut current = d.clone();
        let mut script = FiringScript::zero(n);
        let mut trace = Vec::new();
        let mut firings = 0usize;

        let verdict = loop {
            let negative = current.negative_support();
            if negative.is_empty() {
                break Verdict::Effective;
            }
            if negative.len() == n {
                break Verdict::NotEffective;
            }
            let w = decompose(g, &current, &negative).w_dhar;
            if w.is_empty() {
                break Verdict::NotEffective;
            }
            let next = fire_unchecked(g, &current, &w);
            for v in &w {
                script.0[v] += 1;
            }
            let step = TraceStep { negative_support: negative, fired: w, result: next };
            hook(&current, &step)?;
            firings += 1;
            current = step.result.clone();
            if trace.len() < limit {
                trace.push(step);
            }
        };
        log::debug!("effectiveness decided after {firings} Dhar firings: {}", verdict.as_str());

        Ok(EffectivenessCertificate {
            verdict,
            representative: current,
            script: script.normalize_min_zero(),
            trace,
            firings,
        })
    }
}

/// Decide whether the class of `d` is effective, with a certificate either way.
pub fn find_effective(g: &Graph, d: &Divisor) -> EffectivenessCertificate {
    FindEffective::new().run(g, d)
}

/// Check the termination measure along a trace starting at `start`: whenever
/// a firing leaves the negative support unchanged, the μ-vector with respect
/// to that support must grow lexicographically.
pub fn assert_mu_progress(g: &Graph, start: &Divisor, trace: &[TraceStep]) -> bool {
    let mut prev = start;
    for step in trace {
        let support = &step.negative_support;
        if step.result.negative_support() == *support {
            let (Ok(before), Ok(after)) = (mu_vector(g, prev, support), mu_vector(g, &step.result, support))
            else {
                return false;
            };
            if after <= before {
                return false;
            }
        }
        prev = &step.result;
    }
    true
}

/// Fire Dhar sets with respect to the fixed `set` until none is left,
/// producing a `set`-reduced divisor equivalent to `d`.
pub fn make_v_reduced_from(g: &Graph, d: &Divisor, set: &VertexSet) -> Result<(Divisor, FiringScript)> {
    // Validates the set and the effectiveness precondition.
    let mut result = dhar::dhar_decomposition(g, d, set)?;
    let mut current = d.clone();
    let mut script = FiringScript::zero(g.num_vertices());
    while !result.w_dhar.is_empty() {
        current = fire_unchecked(g, &current, &result.w_dhar);
        for v in &result.w_dhar {
            script.0[v] += 1;
        }
        result = decompose(g, &current, set);
    }
    Ok((current, script.normalize_min_zero()))
}

/// The unique `v`-reduced divisor equivalent to `d`.
///
/// Debt away from `v` is cleared first: the in-debt vertex `w` farthest from
/// `v` is paid by firing the ball of radius `dist(w, v) - 1` around `v`, which
/// leaves every vertex farther out untouched. The Dhar loop with `V = {v}`
/// then finishes the reduction.
pub fn v_reduced(g: &Graph, d: &Divisor, v: usize) -> Result<(Divisor, FiringScript)> {
    g.check_vertex(v)?;
    let n = g.num_vertices();
    let root = VertexSet::singleton(v);
    let dist = g.distances_to_set(&root)?;
    let mut current = d.clone();
    let mut script = FiringScript::zero(n);

    while let Some(w) = (0..n)
        .filter(|&u| u != v && current[u].is_negative())
        .max_by_key(|&u| (dist[u], Reverse(u)))
    {
        let radius = dist[w] - 1;
        let ball: VertexSet = (0..n).filter(|&u| dist[u] <= radius).collect();
        let gain = BigInt::from(g.edges_into(w, &ball));
        let times = (-&current[w]).div_ceil(&gain);
        let step = principal_divisor(g, &FiringScript::indicator(n, &ball));
        for u in 0..n {
            current.0[u] += &step[u] * &times;
            if ball.contains(u) {
                script.0[u] += &times;
            }
        }
    }

    let (reduced, tail) = make_v_reduced_from(g, &current, &root)?;
    let total = FiringScript::new(script.0.iter().zip(tail.values()).map(|(a, b)| a + b).collect());
    Ok((reduced, total.normalize_min_zero()))
}

/// `true` when `d` is `v`-reduced.
pub fn is_reduced_at(g: &Graph, d: &Divisor, v: usize) -> Result<bool> {
    g.check_vertex(v)?;
    dhar::is_v_reduced(g, d, &VertexSet::singleton(v))
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

    fn double_edge() -> Graph {
        Graph::unweighted(&["v1", "v2"], &[("v1", "v2"), ("v1", "v2")]).unwrap()
    }

    #[test]
    fn make_reduced_examples() {
        let g = double_triangle();
        let (d, f) = make_v_reduced_from(&g, &Divisor::from_i64s(&[2, 2, -1]), &VertexSet::from([2])).unwrap();
        assert_eq!(d, Divisor::from_i64s(&[0, 0, 3]));
        assert_eq!(f, FiringScript::from_i64s(&[1, 1, 0]));

        let (d, f) = make_v_reduced_from(&g, &Divisor::from_i64s(&[2, 2, 2]), &VertexSet::from([0, 1])).unwrap();
        assert_eq!(d, Divisor::from_i64s(&[2, 2, 2]));
        assert!(f.is_zero());

        let (d, f) = make_v_reduced_from(&double_path(), &Divisor::from_i64s(&[1, 3, 2]), &VertexSet::from([0, 2])).unwrap();
        assert_eq!(d, Divisor::from_i64s(&[1, 3, 2]));
        assert!(f.is_zero());

        assert_eq!(
            make_v_reduced_from(&g, &Divisor::from_i64s(&[-1, 0, 0]), &VertexSet::from([2])),
            Err(Error::NotEffectiveAwayFrom(vec!["v1".into()]))
        );
        assert_eq!(
            make_v_reduced_from(&g, &Divisor::zero(3), &VertexSet::new()),
            Err(Error::EmptyVertexSet)
        );
    }

    #[test]
    fn v_reduced_examples() {
        let g = double_triangle();
        let (d, f) = v_reduced(&g, &Divisor::from_i64s(&[0, 0, 3]), 2).unwrap();
        assert_eq!(d, Divisor::from_i64s(&[0, 0, 3]));
        assert!(f.is_zero());

        // (3,-1) + div(1_{v1}) = (1,1), which is v1-reduced.
        let (d, f) = v_reduced(&double_edge(), &Divisor::from_i64s(&[3, -1]), 0).unwrap();
        assert_eq!(d, Divisor::from_i64s(&[1, 1]));
        assert_eq!(f, FiringScript::from_i64s(&[1, 0]));

        assert!(matches!(v_reduced(&g, &Divisor::zero(3), 5), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn v_reduced_pays_deep_debt() {
        let g = Graph::unweighted(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        let d = Divisor::from_i64s(&[10, -2, 0, -5]);
        let (r, f) = v_reduced(&g, &d, 0).unwrap();
        assert_eq!(d.apply(&g, &f), r);
        assert!(is_reduced_at(&g, &r, 0).unwrap());
        // On a tree the reduced divisor away from the root is 0.
        assert_eq!(r, Divisor::from_i64s(&[3, 0, 0, 0]));
    }

    #[test]
    fn find_effective_examples() {
        let g = double_triangle();
        let input = Divisor::from_i64s(&[2, 2, -1]);
        let cert = find_effective(&g, &input);
        assert_eq!(cert.verdict, Verdict::Effective);
        assert_eq!(cert.representative, Divisor::from_i64s(&[0, 0, 3]));
        assert_eq!(cert.firings, 1);
        assert!(cert.verify(&g, &input).is_ok());
        assert!(assert_mu_progress(&g, &input, &cert.trace));

        let all_neg = Divisor::from_i64s(&[-1, -1, -1]);
        let cert = find_effective(&g, &all_neg);
        assert_eq!(cert.verdict, Verdict::NotEffective);
        assert_eq!(cert.representative, all_neg);

        let h = double_edge();
        let input = Divisor::from_i64s(&[1, -1]);
        let cert = find_effective(&h, &input);
        assert_eq!(cert.verdict, Verdict::NotEffective);
        assert_eq!(cert.representative, input);
        assert!(cert.verify(&h, &input).is_ok());

        let eff = Divisor::from_i64s(&[0, 1, 0]);
        let cert = find_effective(&g, &eff);
        assert_eq!(cert.verdict, Verdict::Effective);
        assert!(cert.script.is_zero());
        assert!(cert.trace.is_empty());
    }

    #[test]
    fn trace_limit_keeps_script_exact() {
        let g = Graph::unweighted(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        let input = Divisor::from_i64s(&[-3, 0, 0, 4]);
        let full = find_effective(&g, &input);
        let capped = FindEffective::new().trace_limit(1).run(&g, &input);
        assert!(full.firings > 1);
        assert_eq!(capped.trace.len(), 1);
        assert_eq!(capped.firings, full.firings);
        assert_eq!(capped.script, full.script);
        assert!(capped.verify(&g, &input).is_ok());
    }

    #[test]
    fn mu_progress_detects_regressions() {
        let g = double_triangle();
        let start = Divisor::from_i64s(&[2, 2, -1]);
        assert!(assert_mu_progress(&g, &start, &[]));
        // Claiming a firing of {v3} from (2,2,-1) with the same negative support
        // is a μ-decrease.
        let bogus = TraceStep {
            negative_support: VertexSet::from([2]),
            fired: VertexSet::from([2]),
            result: Divisor::from_i64s(&[4, 4, -5]),
        };
        assert!(!assert_mu_progress(&g, &start, &[bogus]));
    }
}
