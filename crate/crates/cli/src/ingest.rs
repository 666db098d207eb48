//! JSON input formats. Every failure carries a JSON-pointer path into the
//! offending document.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use halg_core::algcore::{AlgError, Algebra, AlgebraAutomorphism, GroupAction, Quiver, Terms};
use halg_core::exactlin::{Field, Matrix, Rational, Scalar};
use halg_core::modhom::{ModError, Module};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    /// File name or `<corpus>` / `<argv>`.
    pub source: String,
    /// JSON pointer; empty for whole-document problems.
    pub pointer: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pointer.is_empty() {
            write!(f, "{}: {}", self.source, self.message)
        } else {
            write!(f, "{}: at \"{}\": {}", self.source, self.pointer, self.message)
        }
    }
}

impl std::error::Error for InputError {}

/// A parsed document plus where it came from.
pub struct Doc {
    pub source: String,
    pub dir: PathBuf,
    pub value: Value,
}

impl Doc {
    fn err(&self, pointer: &str, message: impl Into<String>) -> InputError {
        InputError { source: self.source.clone(), pointer: pointer.to_string(), message: message.into() }
    }

    fn at(&self, pointer: &str) -> Result<&Value, InputError> {
        self.value.pointer(pointer).ok_or_else(|| self.err(pointer, "missing field"))
    }
}

pub fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

/// Reads and parses a JSON file, rejecting floating-point numbers anywhere.
pub fn read_doc(path: &Path) -> Result<Doc, InputError> {
    let source = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError { source: source.clone(), pointer: String::new(), message: format!("cannot read file: {e}") })?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_doc(&text, source, dir)
}

pub fn parse_doc(text: &str, source: String, dir: PathBuf) -> Result<Doc, InputError> {
    let value: Value = serde_json::from_str(text).map_err(|e| InputError {
        source: source.clone(),
        pointer: String::new(),
        message: format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column()),
    })?;
    let doc = Doc { source, dir, value };
    reject_floats(&doc, &doc.value, String::new())?;
    Ok(doc)
}

fn reject_floats(doc: &Doc, v: &Value, ptr: String) -> Result<(), InputError> {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            Err(doc.err(&ptr, format!("floating-point number {n} rejected: coefficients must be exact")))
        }
        Value::Array(xs) => xs.iter().enumerate().try_for_each(|(i, x)| reject_floats(doc, x, format!("{ptr}/{i}"))),
        Value::Object(m) => m.iter().try_for_each(|(k, x)| reject_floats(doc, x, format!("{ptr}/{}", escape(k)))),
        _ => Ok(()),
    }
}

fn as_array<'a>(doc: &Doc, v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>, InputError> {
    v.as_array().ok_or_else(|| doc.err(ptr, "expected an array"))
}

fn as_usize(doc: &Doc, v: &Value, ptr: &str) -> Result<usize, InputError> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| doc.err(ptr, "expected a non-negative integer"))
}

fn as_str<'a>(doc: &Doc, v: &'a Value, ptr: &str) -> Result<&'a str, InputError> {
    v.as_str().ok_or_else(|| doc.err(ptr, "expected a string"))
}

fn strings(doc: &Doc, ptr: &str) -> Result<Vec<String>, InputError> {
    as_array(doc, doc.at(ptr)?, ptr)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_str(doc, x, &format!("{ptr}/{i}")).map(str::to_string))
        .collect()
}

pub fn parse_field(doc: &Doc, ptr: &str) -> Result<Field, InputError> {
    let v = doc.at(ptr)?;
    match v.get("kind").and_then(Value::as_str) {
        Some("rational") => Ok(Field::Rationals),
        Some("prime") => {
            let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| doc.err(&format!("{ptr}/p"), "expected a prime"))?;
            Field::prime(p).map_err(|e| doc.err(&format!("{ptr}/p"), e.to_string()))
        }
        _ => Err(doc.err(&format!("{ptr}/kind"), "expected \"rational\" or \"prime\"")),
    }
}

fn rational_from(doc: &Doc, v: &Value, ptr: &str) -> Result<Rational, InputError> {
    match v {
        Value::String(s) => s.parse::<Rational>().map_err(|e| doc.err(ptr, e.to_string())),
        Value::Number(n) => n.as_i64().map(Rational::from_integer).ok_or_else(|| doc.err(ptr, "integer out of range")),
        Value::Array(p) if p.len() == 2 => {
            let num = p[0].as_i64().ok_or_else(|| doc.err(&format!("{ptr}/0"), "expected an integer numerator"))?;
            let den = p[1].as_i64().ok_or_else(|| doc.err(&format!("{ptr}/1"), "expected an integer denominator"))?;
            if den == 0 {
                return Err(doc.err(&format!("{ptr}/1"), "zero denominator"));
            }
            Ok(Rational::new(num, den))
        }
        _ => Err(doc.err(ptr, "expected an exact coefficient: \"p/q\", an integer, or [num, den]")),
    }
}

fn scalar_from(doc: &Doc, field: Field, v: &Value, ptr: &str) -> Result<Scalar, InputError> {
    let r = rational_from(doc, v, ptr)?;
    field.from_rational(&r).ok_or_else(|| doc.err(ptr, format!("denominator not invertible in {field}")))
}

/// Sparse terms `[[num, den, idx], ...]` or `[["p/q", idx], ...]`, summed
/// into a dense vector.
fn terms_from(doc: &Doc, field: Field, n: usize, v: &Value, ptr: &str) -> Result<Vec<Scalar>, InputError> {
    let mut out = vec![field.zero(); n];
    for (t, term) in as_array(doc, v, ptr)?.iter().enumerate() {
        let tp = format!("{ptr}/{t}");
        let parts = as_array(doc, term, &tp)?;
        let (coeff, idx_ptr) = match parts.len() {
            3 => (scalar_from(doc, field, &json!([parts[0], parts[1]]), &tp)?, format!("{tp}/2")),
            2 => (scalar_from(doc, field, &parts[0], &format!("{tp}/0"))?, format!("{tp}/1")),
            _ => return Err(doc.err(&tp, "a term is [num, den, index] or [coefficient, index]")),
        };
        let idx = as_usize(doc, &parts[parts.len() - 1], &idx_ptr)?;
        if idx >= n {
            return Err(doc.err(&idx_ptr, format!("basis index {idx} out of range (dimension {n})")));
        }
        out[idx] = &out[idx] + &coeff;
    }
    Ok(out)
}

fn sparse(v: Vec<Scalar>) -> Terms {
    v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

fn matrix_from(doc: &Doc, field: Field, n: usize, v: &Value, ptr: &str) -> Result<Matrix, InputError> {
    let rows = as_array(doc, v, ptr)?;
    if rows.len() != n {
        return Err(doc.err(ptr, format!("expected {n} rows")));
    }
    let mut m = Matrix::zeros(field, n, n);
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("{ptr}/{i}");
        let row = as_array(doc, row, &rp)?;
        if row.len() != n {
            return Err(doc.err(&rp, format!("expected {n} entries")));
        }
        for (j, x) in row.iter().enumerate() {
            m.set(i, j, scalar_from(doc, field, x, &format!("{rp}/{j}"))?);
        }
    }
    Ok(m)
}

fn alg_error_pointer(e: &AlgError) -> &'static str {
    match e {
        AlgError::NotUnital(_) => "/unit",
        _ => "/mul",
    }
}

/// Algebra document, possibly nested at `ptr` inside another document.
pub fn parse_algebra_at(doc: &Doc, ptr: &str) -> Result<Algebra, InputError> {
    let field = parse_field(doc, &format!("{ptr}/field"))?;
    let labels = strings(doc, &format!("{ptr}/labels"))?;
    let n = labels.len();
    let mp = format!("{ptr}/mul");
    let rows = as_array(doc, doc.at(&mp)?, &mp)?;
    if rows.len() != n {
        return Err(doc.err(&mp, format!("expected {n} rows, one per basis element")));
    }
    let mut mul = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("{mp}/{i}");
        let cells = as_array(doc, row, &rp)?;
        if cells.len() != n {
            return Err(doc.err(&rp, format!("expected {n} entries")));
        }
        let parsed: Vec<Terms> = cells
            .iter()
            .enumerate()
            .map(|(j, c)| terms_from(doc, field, n, c, &format!("{rp}/{j}")).map(sparse))
            .collect::<Result<_, _>>()?;
        mul.push(parsed);
    }
    let up = format!("{ptr}/unit");
    let unit = terms_from(doc, field, n, doc.at(&up)?, &up)?;
    Algebra::from_sparse(field, labels, mul, unit, None)
        .map_err(|e| doc.err(&format!("{ptr}{}", alg_error_pointer(&e)), e.to_string()))
}

pub fn parse_algebra(doc: &Doc) -> Result<Algebra, InputError> {
    parse_algebra_at(doc, "")
}

pub fn parse_quiver(doc: &Doc) -> Result<Quiver, InputError> {
    let vertices = strings(doc, "/vertices")?;
    let arrows = as_array(doc, doc.at("/arrows")?, "/arrows")?;
    let mut parsed = Vec::with_capacity(arrows.len());
    for (i, a) in arrows.iter().enumerate() {
        let p = format!("/arrows/{i}");
        let field = |k: &str| -> Result<String, InputError> {
            let fp = format!("{p}/{k}");
            as_str(doc, a.get(k).ok_or_else(|| doc.err(&fp, "missing field"))?, &fp).map(str::to_string)
        };
        parsed.push((field("name")?, field("from")?, field("to")?));
    }
    Quiver::new(vertices, parsed).map_err(|e| doc.err("/arrows", e.to_string()))
}

pub fn parse_action(doc: &Doc, algebra: &Arc<Algebra>) -> Result<GroupAction, InputError> {
    let labels = strings(doc, "/elements")?;
    let tp = "/mul_table";
    let table: Vec<Vec<usize>> = as_array(doc, doc.at(tp)?, tp)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let rp = format!("{tp}/{i}");
            as_array(doc, row, &rp)?.iter().enumerate().map(|(j, x)| as_usize(doc, x, &format!("{rp}/{j}"))).collect()
        })
        .collect::<Result<_, _>>()?;
    let identity = as_usize(doc, doc.at("/identity")?, "/identity")?;
    let images_v = doc.at("/images")?;
    if !images_v.is_object() {
        return Err(doc.err("/images", "expected an object keyed by element label"));
    }
    let mut images = Vec::with_capacity(labels.len());
    for l in &labels {
        let p = format!("/images/{}", escape(l));
        let v = images_v.get(l).ok_or_else(|| doc.err(&p, format!("no image given for element {l:?}")))?;
        let m = matrix_from(doc, algebra.field(), algebra.dim(), v, &p)?;
        images.push(AlgebraAutomorphism::from_matrix(algebra, m).map_err(|e| doc.err(&p, e.to_string()))?);
    }
    GroupAction::new(algebra, labels, table, identity, images).map_err(|e| {
        let ptr = match e {
            AlgError::NotAGroup(_) => "/mul_table",
            AlgError::OrderNotInvertible(_) => "/elements",
            _ => "/images",
        };
        doc.err(ptr, e.to_string())
    })
}

/// Module document. `algebra` is either a file reference (relative to the
/// module file) or an inline algebra object; when absent, `fallback` is used.
pub fn parse_module(doc: &Doc, fallback: Option<&Arc<Algebra>>) -> Result<Module, InputError> {
    let algebra = match doc.value.get("algebra") {
        Some(Value::String(file)) => {
            let inner = read_doc(&doc.dir.join(file))?;
            let a = Arc::new(parse_algebra(&inner)?);
            match fallback {
                Some(f) if **f == *a => f.clone(),
                _ => a,
            }
        }
        Some(Value::Object(_)) => {
            let a = Arc::new(parse_algebra_at(doc, "/algebra")?);
            match fallback {
                Some(f) if **f == *a => f.clone(),
                _ => a,
            }
        }
        Some(_) => return Err(doc.err("/algebra", "expected a file name or an inline algebra")),
        None => fallback.cloned().ok_or_else(|| doc.err("/algebra", "module names no algebra"))?,
    };
    let dim = as_usize(doc, doc.at("/dim")?, "/dim")?;
    let acts = as_array(doc, doc.at("/action")?, "/action")?;
    if acts.len() != algebra.dim() {
        return Err(doc.err("/action", format!("expected {} matrices, one per basis element", algebra.dim())));
    }
    let mats: Vec<Matrix> = acts
        .iter()
        .enumerate()
        .map(|(i, m)| matrix_from(doc, algebra.field(), dim, m, &format!("/action/{i}")))
        .collect::<Result<_, _>>()?;
    Module::new(&algebra, dim, mats).map_err(|e| match e {
        ModError::Algebra(a) => doc.err("/algebra", a.to_string()),
        other => doc.err("/action", other.to_string()),
    })
}

fn coeff_json(x: &Scalar) -> Vec<Value> {
    match x.as_rational() {
        Some(r) => match (i64::try_from(r.numer()), i64::try_from(r.denom())) {
            (Ok(n), Ok(d)) => vec![json!(n), json!(d)],
            _ => vec![json!(r.to_string())],
        },
        None => vec![json!(x.to_string().parse::<i64>().unwrap_or(0)), json!(1)],
    }
}

fn terms_json(terms: &[(usize, Scalar)]) -> Value {
    Value::Array(
        terms
            .iter()
            .map(|(i, x)| {
                let mut t = coeff_json(x);
                t.push(json!(i));
                Value::Array(t)
            })
            .collect(),
    )
}

/// The algebra in the input format.
pub fn algebra_json(a: &Algebra) -> Value {
    let unit: Terms = sparse(a.unit().to_vec());
    json!({
        "field": a.field(),
        "labels": a.labels(),
        "mul": a.sparse_table().iter().map(|row| row.iter().map(|t| terms_json(t)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "unit": terms_json(&unit),
    })
}

pub fn quiver_json(q: &Quiver) -> Value {
    let v = q.vertices();
    json!({
        "vertices": v,
        "arrows": q.arrows().iter().map(|a| json!({ "name": a.name, "from": v[a.source], "to": v[a.target] })).collect::<Vec<_>>(),
    })
}
