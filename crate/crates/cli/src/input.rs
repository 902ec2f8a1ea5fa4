//! File ingestion: systems, properties, matrices, states and algebras.
//!
//! Schema violations are reported with a JSON-pointer path into the
//! offending document.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;

use emergent_space::context::Observable;
use emergent_space::gns::{AlgState, StarAlgebra};
use emergent_space::linalg::{c, CVector};
use emergent_space::sigma::PropertyFn;
use emergent_space::{build_system, CMatrix, DynamicalSystem, TimeKind, TimeModel};
use serde_json::Value;

use crate::error::{CliError, CliResult};

/// A parsed document plus the name used in diagnostics.
pub struct Doc {
    origin: String,
    root: Value,
}

impl Doc {
    pub fn parse(text: &str, origin: impl Into<String>) -> CliResult<Self> {
        let origin = origin.into();
        match serde_json::from_str(text) {
            Ok(root) => Ok(Doc { origin, root }),
            Err(e) => Err(CliError::Syntax { origin, line: e.line(), column: e.column(), reason: e.to_string() }),
        }
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text, path.display().to_string())
    }

    pub fn root(&self) -> &Value {
        &self.root
    }

    fn err(&self, path: &str, expected: &str, got: &str) -> CliError {
        CliError::Schema {
            origin: self.origin.clone(),
            path: if path.is_empty() { "/".into() } else { path.into() },
            expected: expected.into(),
            got: got.into(),
        }
    }

    fn mismatch(&self, path: &str, expected: &str, got: Option<&Value>) -> CliError {
        self.err(path, expected, &describe(got))
    }
}

fn describe(v: Option<&Value>) -> String {
    match v {
        None => "nothing (missing)".into(),
        Some(Value::Null) => "null".into(),
        Some(Value::Bool(b)) => format!("boolean {b}"),
        Some(Value::Number(n)) => format!("number {n}"),
        Some(Value::String(s)) => format!("string {s:?}"),
        Some(Value::Array(a)) => format!("array of length {}", a.len()),
        Some(Value::Object(_)) => "object".into(),
    }
}

/// RFC 6901 escaping of one reference token.
pub fn pointer_token(s: &str) -> String {
    s.replace('~', "~0").replace('/', "~1")
}

fn label_of(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.trim().to_string()),
        Value::Number(n) if n.is_u64() || n.is_i64() => Some(n.to_string()),
        _ => None,
    }
}

fn as_real(v: &Value) -> Option<f64> {
    v.as_f64().filter(|x| x.is_finite())
}

/// Parses the system-definition schema
/// `{"elements": [...], "transitions": {...}, "time": {"kind", "horizon"}}`.
pub fn parse_system(doc: &Doc) -> CliResult<DynamicalSystem> {
    let root = doc.root.as_object().ok_or_else(|| doc.mismatch("", "object", Some(&doc.root)))?;
    let elements = root.get("elements");
    let elements = elements.and_then(Value::as_array).ok_or_else(|| doc.mismatch("/elements", "array of labels", elements))?;
    let mut labels: Vec<String> = Vec::with_capacity(elements.len());
    let mut seen = HashSet::new();
    for (i, e) in elements.iter().enumerate() {
        let path = format!("/elements/{i}");
        let label = label_of(e).ok_or_else(|| doc.mismatch(&path, "string or integer label", Some(e)))?;
        if !seen.insert(label.clone()) {
            return Err(doc.err(&path, "distinct label", &format!("duplicate {label:?}")));
        }
        labels.push(label);
    }

    let transitions = root.get("transitions");
    let transitions =
        transitions.and_then(Value::as_object).ok_or_else(|| doc.mismatch("/transitions", "object label -> label", transitions))?;
    let mut table: HashMap<String, String> = HashMap::new();
    for (key, target) in transitions {
        let path = format!("/transitions/{}", pointer_token(key));
        if !seen.contains(key.trim()) {
            return Err(doc.err(&path, "key naming an element", &format!("unknown label {key:?}")));
        }
        let target = label_of(target).ok_or_else(|| doc.mismatch(&path, "target label", Some(target)))?;
        if !seen.contains(&target) {
            return Err(doc.err(&path, "one of the elements", &format!("unknown target {target:?}")));
        }
        table.insert(key.trim().to_string(), target);
    }
    for label in &labels {
        if !table.contains_key(label) {
            return Err(doc.mismatch(&format!("/transitions/{}", pointer_token(label)), "target label", None));
        }
    }

    let time = match root.get("time") {
        None => TimeModel::monoid(1),
        Some(Value::Object(t)) => {
            let kind = match t.get("kind") {
                None => TimeKind::MonoidSteps,
                Some(Value::String(k)) => TimeKind::parse(k)?,
                other => return Err(doc.mismatch("/time/kind", "\"monoid\" or \"group\"", other)),
            };
            let horizon = match t.get("horizon") {
                None => 1,
                Some(h) => h
                    .as_u64()
                    .and_then(|h| u32::try_from(h).ok())
                    .ok_or_else(|| doc.mismatch("/time/horizon", "non-negative integer", Some(h)))?,
            };
            TimeModel { kind, horizon }
        }
        other => return Err(doc.mismatch("/time", "object", other)),
    };
    Ok(build_system(&labels, &table, time)?)
}

fn parse_matrix_at(doc: &Doc, v: &Value, path: &str) -> CliResult<CMatrix> {
    let rows = v.as_array().filter(|r| !r.is_empty()).ok_or_else(|| doc.mismatch(path, "non-empty array of rows", Some(v)))?;
    let d = rows.len();
    let mut m = CMatrix::zeros(d, d);
    for (r, row) in rows.iter().enumerate() {
        let rpath = format!("{path}/{r}");
        let row = row.as_array().ok_or_else(|| doc.mismatch(&rpath, "array", Some(row)))?;
        if row.len() != d {
            return Err(doc.err(&rpath, &format!("row of length {d} (square matrix)"), &format!("length {}", row.len())));
        }
        for (col, entry) in row.iter().enumerate() {
            m[(r, col)] = parse_complex(doc, entry, &format!("{rpath}/{col}"))?;
        }
    }
    Ok(m)
}

fn parse_complex(doc: &Doc, v: &Value, path: &str) -> CliResult<num_complex::Complex64> {
    if let Some(x) = as_real(v) {
        return Ok(c(x, 0.0));
    }
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => match (as_real(re), as_real(im)) {
            (Some(re), Some(im)) => Ok(c(re, im)),
            _ => Err(doc.mismatch(path, "[re, im] pair of finite numbers", Some(v))),
        },
        _ => Err(doc.mismatch(path, "[re, im] pair or real number", Some(v))),
    }
}

/// Square matrix given as row-major `[re, im]` pairs.
pub fn parse_matrix(doc: &Doc) -> CliResult<CMatrix> {
    parse_matrix_at(doc, &doc.root, "")
}

/// A density matrix, `{"density": M}`, or a pure state `{"vector": [...]}`.
pub fn parse_state(doc: &Doc, tol: f64) -> CliResult<AlgState> {
    match &doc.root {
        Value::Array(_) => Ok(AlgState::new(parse_matrix(doc)?, tol)?),
        Value::Object(o) => {
            if let Some(m) = o.get("density") {
                return Ok(AlgState::new(parse_matrix_at(doc, m, "/density")?, tol)?);
            }
            let v = o.get("vector");
            let entries = v.and_then(Value::as_array).ok_or_else(|| doc.mismatch("/vector", "array of amplitudes", v))?;
            let amps = entries
                .iter()
                .enumerate()
                .map(|(i, e)| parse_complex(doc, e, &format!("/vector/{i}")))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(AlgState::vector_state(&CVector::from_vec(amps))?)
        }
        other => Err(doc.mismatch("", "matrix or object", Some(other))),
    }
}

/// `{"generators": [M, ...]}`, `{"basis": [M, ...]}` or `{"full": d}`.
pub fn parse_algebra(doc: &Doc) -> CliResult<StarAlgebra> {
    let root = doc.root.as_object().ok_or_else(|| doc.mismatch("", "object", Some(&doc.root)))?;
    if let Some(d) = root.get("full") {
        let d = d.as_u64().filter(|&d| d >= 1).ok_or_else(|| doc.mismatch("/full", "positive integer", Some(d)))?;
        return Ok(StarAlgebra::full(d as usize));
    }
    let (key, list) = match (root.get("generators"), root.get("basis")) {
        (Some(g), _) => ("generators", g),
        (None, Some(b)) => ("basis", b),
        (None, None) => return Err(doc.mismatch("/generators", "array of matrices", None)),
    };
    let items = list.as_array().filter(|l| !l.is_empty()).ok_or_else(|| doc.mismatch(&format!("/{key}"), "non-empty array", Some(list)))?;
    let mats = items
        .iter()
        .enumerate()
        .map(|(i, m)| parse_matrix_at(doc, m, &format!("/{key}/{i}")))
        .collect::<CliResult<Vec<_>>>()?;
    let dim = mats[0].nrows();
    if let Some(i) = mats.iter().position(|m| m.nrows() != dim) {
        return Err(doc.err(&format!("/{key}/{i}"), &format!("{dim}x{dim} matrix"), &format!("{0}x{0}", mats[i].nrows())));
    }
    Ok(match key {
        "generators" => StarAlgebra::generate(dim, &mats)?,
        _ => StarAlgebra::from_basis(dim, &mats)?,
    })
}

/// A bare matrix or `{"name": ..., "matrix": M}`; `fallback` names bare matrices.
pub fn parse_observable(doc: &Doc, fallback: &str, tol: f64) -> CliResult<Observable> {
    match &doc.root {
        Value::Object(o) => {
            let name = match o.get("name") {
                None => fallback.to_string(),
                Some(Value::String(s)) => s.clone(),
                other => return Err(doc.mismatch("/name", "string", other)),
            };
            let m = o.get("matrix").ok_or_else(|| doc.mismatch("/matrix", "matrix", None))?;
            Ok(Observable::new(name, parse_matrix_at(doc, m, "/matrix")?, tol)?)
        }
        _ => Ok(Observable::new(fallback, parse_matrix(doc)?, tol)?),
    }
}

fn parse_property_at(doc: &Doc, v: &Value, base: &str, sys: &DynamicalSystem) -> CliResult<PropertyFn> {
    let o = v.as_object().ok_or_else(|| doc.mismatch(base, "property object", Some(v)))?;
    let name = match o.get("name") {
        Some(Value::String(s)) => s.clone(),
        other => return Err(doc.mismatch(&format!("{base}/name"), "string", other)),
    };
    let tpath = format!("{base}/truth");
    let truth = o.get("truth");
    let truth = truth.and_then(Value::as_object).ok_or_else(|| doc.mismatch(&tpath, "object label -> 0/1", truth))?;
    let mut table = BTreeMap::new();
    for (key, value) in truth {
        let path = format!("{tpath}/{}", pointer_token(key));
        let x = sys.index_of(key.trim()).map_err(|_| doc.err(&path, "key naming an element", &format!("unknown label {key:?}")))?;
        let b = match value {
            Value::Bool(b) => *b,
            Value::Number(n) if n.as_u64() == Some(0) => false,
            Value::Number(n) if n.as_u64() == Some(1) => true,
            other => return Err(doc.mismatch(&path, "0, 1, true or false", Some(other))),
        };
        table.insert(x, b);
    }
    for (x, label) in sys.labels().iter().enumerate() {
        if !table.contains_key(&x) {
            return Err(doc.mismatch(&format!("{tpath}/{}", pointer_token(label)), "0, 1, true or false", None));
        }
    }
    Ok(PropertyFn::from_table(name, sys.len(), &table)?)
}

/// One property object or an array of them.
pub fn parse_properties(doc: &Doc, sys: &DynamicalSystem) -> CliResult<Vec<PropertyFn>> {
    match &doc.root {
        Value::Array(items) => {
            items.iter().enumerate().map(|(i, v)| parse_property_at(doc, v, &format!("/{i}"), sys)).collect()
        }
        v => Ok(vec![parse_property_at(doc, v, "", sys)?]),
    }
}

/// `{"label": real, ...}` covering every element, in state order.
pub fn parse_real_map(doc: &Doc, sys: &DynamicalSystem) -> CliResult<Vec<f64>> {
    let o = doc.root.as_object().ok_or_else(|| doc.mismatch("", "object label -> number", Some(&doc.root)))?;
    let mut out = vec![None; sys.len()];
    for (key, value) in o {
        let path = format!("/{}", pointer_token(key));
        let x = sys.index_of(key.trim()).map_err(|_| doc.err(&path, "key naming an element", &format!("unknown label {key:?}")))?;
        out[x] = Some(as_real(value).ok_or_else(|| doc.mismatch(&path, "finite number", Some(value)))?);
    }
    out.iter()
        .enumerate()
        .map(|(x, v)| v.ok_or_else(|| doc.mismatch(&format!("/{}", pointer_token(sys.label(x))), "finite number", None)))
        .collect()
}

/// Comma-separated labels; the empty string is the empty set.
pub fn parse_label_list(text: &str) -> Vec<String> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

/// Comma-separated reals, e.g. a field `"0,0,1"`.
pub fn parse_reals(text: &str, what: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Usage(format!("{what}: cannot read {s:?} as a number")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(text: &str) -> Doc {
        Doc::parse(text, "test.json").unwrap()
    }

    fn schema_path(e: CliError) -> String {
        match e {
            CliError::Schema { path, .. } => path,
            other => panic!("expected a schema error, got {other:?}"),
        }
    }

    #[test]
    fn reads_a_system() {
        let d = doc(r#"{"elements":[1,2,3],"transitions":{"1":"2","2":3,"3":"1"},"time":{"kind":"group","horizon":2}}"#);
        let sys = parse_system(&d).unwrap();
        assert_eq!(sys.len(), 3);
        assert_eq!(sys.evolve("3", 1).unwrap(), "1");
        assert_eq!(sys.time(), TimeModel::group(2));
    }

    #[test]
    fn missing_transition_is_positioned() {
        let d = doc(r#"{"elements":["1","2","3"],"transitions":{"1":"2","2":"3"}}"#);
        assert_eq!(schema_path(parse_system(&d).unwrap_err()), "/transitions/3");
    }

    #[test]
    fn bad_entries_are_positioned() {
        let d = doc(r#"{"elements":["a","a"],"transitions":{}}"#);
        assert_eq!(schema_path(parse_system(&d).unwrap_err()), "/elements/1");
        let d = doc(r#"{"elements":["a"],"transitions":{"a":"b"}}"#);
        assert_eq!(schema_path(parse_system(&d).unwrap_err()), "/transitions/a");
        let d = doc(r#"[[1,0],[0,"x"]]"#);
        assert_eq!(schema_path(parse_matrix(&d).unwrap_err()), "/1/1");
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        match Doc::parse("{\n  \"elements\": [1,\n}", "f.json") {
            Err(CliError::Syntax { line, .. }) => assert_eq!(line, 3),
            _ => panic!("expected a syntax error"),
        }
    }

    #[test]
    fn non_hermitian_observable_reports_asymmetry() {
        let d = doc(r#"[[0,1],[0,0]]"#);
        match parse_observable(&d, "a", 1e-10) {
            Err(CliError::Core(emergent_space::Error::NotSelfAdjoint { asymmetry, .. })) => assert_eq!(asymmetry, 1.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reads_properties_against_a_system() {
        let sys = emergent_space::dynsys::cyclic_shift(3);
        let d = doc(r#"[{"name":"p","truth":{"1":1,"2":0,"3":true}}]"#);
        let props = parse_properties(&d, &sys).unwrap();
        assert_eq!(props[0].truth_set().to_vec(), vec![0, 2]);
        let d = doc(r#"{"name":"p","truth":{"1":1,"2":0}}"#);
        assert_eq!(schema_path(parse_properties(&d, &sys).unwrap_err()), "/truth/3");
    }
}
