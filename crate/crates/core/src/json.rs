//! JSON encoding of divisors, vertex sets and results.
//!
//! Divisors are objects keyed by vertex id, written in graph order. Integer
//! values are JSON numbers (strings once they leave the `i64` range);
//! rational values are strings in lowest terms such as `"5/2"` or `"-3"`.
//! Decoding is strict: every vertex of the graph must appear exactly once and
//! unknown ids are rejected.

use std::str::FromStr;

use num::{BigInt, BigRational, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::dhar::DharResult;
use crate::divisor::{Divisor, FiringScript, RDivisor, RFunction};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::potential::{Improvement, QResult};
use crate::reduction::{EffectivenessCertificate, TraceStep};
use crate::uniform::SpecialnessReport;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn rational_value(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

pub fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(parse_err(format!("expected an integer, found {n}")))
            }
        }
        Value::String(s) => BigInt::from_str(s.trim()).map_err(|_| parse_err(format!("expected an integer, found {s:?}"))),
        other => Err(parse_err(format!("expected an integer, found {other}"))),
    }
}

pub fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => {
            let s = s.trim();
            let bad = || parse_err(format!("expected a rational like \"5/2\", found {s:?}"));
            match s.split_once('/') {
                Some((n, d)) => {
                    let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                    let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(parse_err(format!("zero denominator in {s:?}")));
                    }
                    Ok(BigRational::new(n, d))
                }
                None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
            }
        }
        other => parse_int(other).map(BigRational::from_integer),
    }
}

fn vertex_map<T>(g: &Graph, values: &[T], encode: impl Fn(&T) -> Value) -> Value {
    let mut map = Map::new();
    for (id, x) in g.ids().zip(values) {
        map.insert(id.to_string(), encode(x));
    }
    Value::Object(map)
}

fn parse_vertex_map<T>(g: &Graph, v: &Value, decode: impl Fn(&Value) -> Result<T>) -> Result<Vec<T>> {
    let map = v.as_object().ok_or_else(|| parse_err("expected an object keyed by vertex id"))?;
    let mut slots: Vec<Option<T>> = (0..g.num_vertices()).map(|_| None).collect();
    for (id, value) in map {
        let index = g.index_of(id)?;
        let decoded = decode(value).map_err(|e| parse_err(format!("vertex {id}: {e}")))?;
        slots[index] = Some(decoded);
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| parse_err(format!("missing value for vertex {}", g.id(i)))))
        .collect()
}

pub fn divisor_to_json(g: &Graph, d: &Divisor) -> Value {
    vertex_map(g, d.values(), int_value)
}

pub fn divisor_from_json(g: &Graph, v: &Value) -> Result<Divisor> {
    parse_vertex_map(g, v, parse_int).map(Divisor::new)
}

pub fn script_to_json(g: &Graph, f: &FiringScript) -> Value {
    vertex_map(g, f.values(), int_value)
}

pub fn script_from_json(g: &Graph, v: &Value) -> Result<FiringScript> {
    parse_vertex_map(g, v, parse_int).map(FiringScript::new)
}

pub fn rdivisor_to_json(g: &Graph, d: &RDivisor) -> Value {
    vertex_map(g, d.values(), rational_value)
}

pub fn rdivisor_from_json(g: &Graph, v: &Value) -> Result<RDivisor> {
    parse_vertex_map(g, v, parse_rational).map(RDivisor::new)
}

pub fn rfunction_to_json(g: &Graph, f: &RFunction) -> Value {
    vertex_map(g, f.values(), rational_value)
}

pub fn rfunction_from_json(g: &Graph, v: &Value) -> Result<RFunction> {
    parse_vertex_map(g, v, parse_rational).map(RFunction::new)
}

pub fn set_to_json(g: &Graph, set: &VertexSet) -> Value {
    Value::from(g.set_ids(set))
}

pub fn set_from_json(g: &Graph, v: &Value) -> Result<VertexSet> {
    let items = v.as_array().ok_or_else(|| parse_err("expected an array of vertex ids"))?;
    let ids = items
        .iter()
        .map(|x| x.as_str().ok_or_else(|| parse_err(format!("expected a vertex id, found {x}"))))
        .collect::<Result<Vec<_>>>()?;
    g.vertex_set(ids)
}

pub fn dhar_to_json(g: &Graph, r: &DharResult) -> Value {
    json!({
        "chain": r.chain.iter().map(|s| set_to_json(g, s)).collect::<Vec<_>>(),
        "w_dhar": set_to_json(g, &r.w_dhar),
    })
}

fn step_to_json(g: &Graph, step: &TraceStep) -> Value {
    json!({
        "negative_support": set_to_json(g, &step.negative_support),
        "fired": set_to_json(g, &step.fired),
        "result": divisor_to_json(g, &step.result),
    })
}

/// The trace is written only when `with_trace` is set.
pub fn certificate_to_json(g: &Graph, c: &EffectivenessCertificate, with_trace: bool) -> Value {
    let mut out = Map::new();
    out.insert("verdict".into(), Value::from(c.verdict.as_str()));
    out.insert("representative".into(), divisor_to_json(g, &c.representative));
    out.insert("script".into(), script_to_json(g, &c.script));
    out.insert("firings".into(), Value::from(c.firings));
    if with_trace {
        out.insert("trace".into(), c.trace.iter().map(|s| step_to_json(g, s)).collect());
    }
    Value::Object(out)
}

pub fn qresult_to_json(g: &Graph, q: &QResult) -> Value {
    json!({
        "q": rfunction_to_json(g, &q.q),
        "zero_set": set_to_json(g, &q.zero_set),
        "total": rational_value(&q.total),
    })
}

pub fn improvement_to_json(g: &Graph, imp: &Improvement) -> Value {
    json!({
        "divisor": divisor_to_json(g, &imp.divisor),
        "script": script_to_json(g, &imp.script),
        "total": rational_value(&imp.total),
    })
}

pub fn specialness_to_json(g: &Graph, r: &SpecialnessReport, with_trace: bool) -> Value {
    let rep = |d: &Option<Divisor>| d.as_ref().map_or(Value::Null, |d| divisor_to_json(g, d));
    json!({
        "is_special": r.is_special,
        "effective_rep": rep(&r.effective_rep),
        "effective_residual_rep": rep(&r.effective_residual_rep),
        "certificates": {
            "divisor": certificate_to_json(g, &r.certificate, with_trace),
            "residual": certificate_to_json(g, &r.residual_certificate, with_trace),
        },
    })
}
