//! Deterministic JSON rendering.
//!
//! Every real is written with 17 significant digits in exponent form, so
//! identical inputs always print identical bytes. Objects keep insertion
//! order.

use std::str::FromStr;

use emergent_space::linalg::CVector;
use emergent_space::{CMatrix, DynamicalSystem, Subset};
use num_complex::Complex64;
use serde_json::{Map, Number, Value};

/// `x` at 17 significant digits; non-finite values become `null`.
pub fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    // Folds −0 into +0.
    let text = format!("{:.16e}", x + 0.0);
    Value::Number(Number::from_str(&text).expect("exponent notation is valid JSON"))
}

/// Formats a real exactly as it appears in JSON output, for CSV rows.
pub fn real_text(x: f64) -> String {
    match real(x) {
        Value::Number(n) => n.to_string(),
        _ => "nan".into(),
    }
}

pub fn reals(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| real(x)).collect())
}

pub fn complex(z: Complex64) -> Value {
    Value::Array(vec![real(z.re), real(z.im)])
}

pub fn vector(v: &CVector) -> Value {
    Value::Array(v.iter().map(|&z| complex(z)).collect())
}

/// Row-major `[re, im]` pairs, the same layout the matrix reader accepts.
pub fn matrix(m: &CMatrix) -> Value {
    Value::Array((0..m.nrows()).map(|r| Value::Array((0..m.ncols()).map(|c| complex(m[(r, c)])).collect())).collect())
}

pub fn labels(sys: &DynamicalSystem, s: Subset) -> Value {
    Value::Array(sys.subset_labels(s).into_iter().map(Value::String).collect())
}

pub fn family(sys: &DynamicalSystem, sets: &[Subset]) -> Value {
    Value::Array(sets.iter().map(|&s| labels(sys, s)).collect())
}

/// Builds an object from `(key, value)` pairs in the given order.
pub fn object<I, K>(pairs: I) -> Value
where
    I: IntoIterator<Item = (K, Value)>,
    K: Into<String>,
{
    Value::Object(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect::<Map<String, Value>>())
}

/// Compact rendering with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values are serializable");
    s.push('\n');
    s
}

/// A system in the ingestion schema, so generated systems round-trip
/// through the reader.
pub fn system(sys: &DynamicalSystem) -> Value {
    let transitions: Map<String, Value> = sys
        .step_map()
        .iter()
        .enumerate()
        .map(|(i, &j)| (sys.label(i).to_string(), Value::String(sys.label(j).to_string())))
        .collect();
    object([
        ("elements", Value::Array(sys.labels().iter().cloned().map(Value::String).collect())),
        ("transitions", Value::Object(transitions)),
        (
            "time",
            object([("kind", Value::String(sys.time().kind.as_str().into())), ("horizon", Value::from(sys.time().horizon))]),
        ),
    ])
}
