//! Uniform divisors and representatives of special classes.
//!
//! A divisor is uniform when `0 <= d_v <= k_v` everywhere, `k` being the
//! canonical divisor. A class is special when it and its residual class are
//! both effective.

use num::{BigInt, One, Signed};

use crate::divisor::{canonical_divisor, residual, Divisor, FiringScript};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reduction::{find_effective, EffectivenessCertificate, FindEffective, TraceStep};

pub fn is_uniform(g: &Graph, d: &Divisor) -> bool {
    let k = canonical_divisor(g);
    d.iter().zip(k.iter()).all(|(x, kv)| !x.is_negative() && x <= kv)
}

/// No weight-0 vertex of valence 1.
pub fn is_semistable(g: &Graph) -> bool {
    (0..g.num_vertices()).all(|v| g.weight(v) > 0 || g.valence(v) != 1)
}

/// Every weight-0 vertex carries a loop. On such graphs every special class
/// has a uniform representative.
pub fn has_uniform_guarantee(g: &Graph) -> bool {
    (0..g.num_vertices()).all(|v| g.weight(v) > 0 || g.loops(v) > 0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialnessReport {
    pub is_special: bool,
    pub effective_rep: Option<Divisor>,
    pub effective_residual_rep: Option<Divisor>,
    pub certificate: EffectivenessCertificate,
    pub residual_certificate: EffectivenessCertificate,
}

pub fn specialness(g: &Graph, d: &Divisor) -> SpecialnessReport {
    let certificate = find_effective(g, d);
    let residual_certificate = find_effective(g, &residual(g, d));
    let rep = |c: &EffectivenessCertificate| c.is_effective().then(|| c.representative.clone());
    SpecialnessReport {
        is_special: certificate.is_effective() && residual_certificate.is_effective(),
        effective_rep: rep(&certificate),
        effective_residual_rep: rep(&residual_certificate),
        certificate,
        residual_certificate,
    }
}

/// Upper bound `max(val_wl(v) - 1, k_v)` of a quasi-uniform divisor at `v`.
pub fn quasi_uniform_bound(g: &Graph, v: usize) -> BigInt {
    let wl = BigInt::from(g.valence_without_loops(v)) - BigInt::one();
    let kv = BigInt::from(2 * g.weight(v) + g.valence(v)) - BigInt::from(2);
    wl.max(kv)
}

pub fn satisfies_quasi_uniform(g: &Graph, d: &Divisor) -> bool {
    d.iter()
        .enumerate()
        .all(|(v, x)| !x.is_negative() && *x <= quasi_uniform_bound(g, v))
}

/// `-1 <= d_v <= k_v`, and `-1` only at weight-0 vertices without loops.
pub fn satisfies_near_uniform(g: &Graph, d: &Divisor) -> bool {
    let k = canonical_divisor(g);
    let minus_one = -BigInt::one();
    d.iter().zip(k.iter()).enumerate().all(|(v, (x, kv))| {
        *x >= minus_one && x <= kv && (*x != minus_one || (g.weight(v) == 0 && g.loops(v) == 0))
    })
}

/// A full run of the quasi-uniform construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiUniformRun {
    /// `k - e*` for the effective residual representative `e*`.
    pub start: Divisor,
    pub trace: Vec<TraceStep>,
    pub representative: Divisor,
    /// `representative = d + div(script)`, minimum 0.
    pub script: FiringScript,
}

/// Run the construction: take the effective residual representative `e*`,
/// start from `k - e*`, and fire Dhar sets of the negative support until the
/// divisor is effective. The upper bound is re-checked after every firing.
pub fn quasi_uniform_construction(g: &Graph, d: &Divisor) -> Result<QuasiUniformRun> {
    let report = specialness(g, d);
    if !report.is_special {
        return Err(Error::NotSpecialClass);
    }
    let n = g.num_vertices();
    let bounds: Vec<BigInt> = (0..n).map(|v| quasi_uniform_bound(g, v)).collect();
    let residual_cert = &report.residual_certificate;
    let start = &canonical_divisor(g) - &residual_cert.representative;

    let violation = |d: &Divisor| (0..n).find(|&v| d[v] > bounds[v]);
    if let Some(v) = violation(&start) {
        return Err(Error::Internal(format!("starting divisor exceeds the bound at {}", g.id(v))));
    }
    let certificate = FindEffective::new().run_with(g, &start, |_, step| match violation(&step.result) {
        Some(v) => Err(Error::Internal(format!(
            "Dhar firing of {:?} broke the upper bound at {}",
            g.set_ids(&step.fired),
            g.id(v)
        ))),
        None => Ok(()),
    })?;
    if !certificate.is_effective() {
        return Err(Error::Internal("special class produced a non-effective run".into()));
    }
    let representative = certificate.representative;
    if !satisfies_quasi_uniform(g, &representative) {
        return Err(Error::Internal("representative is not quasi-uniform".into()));
    }

    // residual(d) + div(s1) = e*, so start = d - div(s1); then the run adds
    // div(s2).
    let combined: Vec<BigInt> = residual_cert
        .script
        .iter()
        .zip(certificate.script.iter())
        .map(|(s1, s2)| s2 - s1)
        .collect();
    let script = FiringScript::new(combined).normalize_min_zero();
    debug_assert_eq!(d.apply(g, &script), representative);

    Ok(QuasiUniformRun { start, trace: certificate.trace, representative, script })
}

/// A representative with `0 <= d_v <= max(val_wl(v) - 1, k_v)`.
pub fn quasi_uniform_representative(g: &Graph, d: &Divisor) -> Result<Divisor> {
    Ok(quasi_uniform_construction(g, d)?.representative)
}

/// A representative with `-1 <= d_v <= k_v`, where `-1` only occurs at
/// weight-0 vertices without loops. It is the residual of the quasi-uniform
/// representative of the residual class.
pub fn near_uniform_representative(g: &Graph, d: &Divisor) -> Result<Divisor> {
    let dual = quasi_uniform_representative(g, &residual(g, d))?;
    Ok(residual(g, &dual))
}
