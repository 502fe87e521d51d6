//! Canonical JSON forms for matrices, candidates and systems.
//!
//! Canonical means sorted object keys and no insignificant whitespace, so
//! equal values always serialize to equal bytes.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{LeonardError, LinalgError};
use crate::leonard::{validate, LeonardCandidate, LeonardSystem};
use crate::linalg::{FieldSpec, Matrix, Scalar};

/// Serializes with sorted keys and no whitespace.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    // serde_json's default Map is ordered by key.
    let v = serde_json::to_value(value).expect("serializable value");
    serde_json::to_string(&v).expect("json value")
}

fn parse_err(msg: impl Into<String>) -> LinalgError {
    LinalgError::Parse(msg.into())
}

pub fn scalars_to_json(xs: &[Scalar]) -> Value {
    Value::Array(xs.iter().map(Scalar::to_json).collect())
}

pub fn scalars_from_json(field: FieldSpec, v: &Value) -> Result<Vec<Scalar>, LinalgError> {
    v.as_array()
        .ok_or_else(|| parse_err("expected an array of scalars"))?
        .iter()
        .map(|x| Scalar::from_json(field, x))
        .collect()
}

/// `{"field": "Q" | "GF(p)", "order": n, "rows": [[...]]}`.
pub fn matrix_to_json(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows()).map(|r| scalars_to_json(m.row(r))).collect();
    json!({
        "field": m.field().to_string(),
        "order": m.rows(),
        "rows": rows,
    })
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix, LinalgError> {
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err("matrix must be an object"))?;
    let field: FieldSpec = obj
        .get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("matrix needs a \"field\" string"))?
        .parse()?;
    let order = obj
        .get("order")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("matrix needs an integer \"order\""))? as usize;
    let rows = obj
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("matrix needs \"rows\""))?;
    if rows.len() != order {
        return Err(parse_err(format!("order {order} but {} rows", rows.len())));
    }
    let mut data = Vec::with_capacity(order * order);
    for row in rows {
        let parsed = scalars_from_json(field, row)?;
        if parsed.len() != order {
            return Err(parse_err(format!(
                "row of length {} in order {order}",
                parsed.len()
            )));
        }
        data.extend(parsed);
    }
    Matrix::new(field, order, order, data)
}

pub fn matrix_to_string(m: &Matrix) -> String {
    canonical_json(&matrix_to_json(m))
}

pub fn matrix_from_str(s: &str) -> Result<Matrix, LinalgError> {
    let v: Value = serde_json::from_str(s).map_err(|e| parse_err(e.to_string()))?;
    matrix_from_json(&v)
}

pub fn candidate_to_json(c: &LeonardCandidate) -> Value {
    json!({
        "d": c.d,
        "field": c.field().to_string(),
        "a_mat": matrix_to_json(&c.a),
        "astar_mat": matrix_to_json(&c.a_star),
        "thetas": scalars_to_json(&c.thetas),
        "theta_stars": scalars_to_json(&c.theta_stars),
    })
}

/// Reads a candidate; any cached `e_mats`/`s_mat` fields are ignored here.
pub fn candidate_from_json(v: &Value) -> Result<LeonardCandidate, LeonardError> {
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err("candidate must be an object"))?;
    let get = |k: &str| {
        obj.get(k)
            .ok_or_else(|| parse_err(format!("missing field {k:?}")))
    };
    let field: FieldSpec = get("field")?
        .as_str()
        .ok_or_else(|| parse_err("\"field\" must be a string"))?
        .parse()?;
    let d = get("d")?
        .as_u64()
        .ok_or_else(|| parse_err("\"d\" must be a nonnegative integer"))? as usize;
    let a = matrix_from_json(get("a_mat")?)?;
    let a_star = matrix_from_json(get("astar_mat")?)?;
    if a.field() != field || a_star.field() != field {
        return Err(LeonardError::Malformed(
            "matrix field differs from \"field\"".into(),
        ));
    }
    let thetas = scalars_from_json(field, get("thetas")?)?;
    let theta_stars = scalars_from_json(field, get("theta_stars")?)?;
    if a.rows() != d + 1 {
        return Err(LeonardError::Malformed(format!(
            "d = {d} but A has order {}",
            a.rows()
        )));
    }
    let c = LeonardCandidate {
        d,
        a,
        a_star,
        thetas,
        theta_stars,
    };
    c.check_shape()?;
    Ok(c)
}

pub fn system_to_json(ls: &LeonardSystem) -> Value {
    let mut v = candidate_to_json(ls.candidate());
    let obj = v.as_object_mut().expect("object");
    obj.insert(
        "e_mats".into(),
        Value::Array(ls.e().iter().map(matrix_to_json).collect()),
    );
    obj.insert("s_mat".into(), matrix_to_json(ls.dagger().s_mat()));
    v
}

/// Reads and validates a system (or bare candidate). Cached `e_mats` and
/// `s_mat`, when present, must equal the recomputed values.
pub fn system_from_json(v: &Value) -> Result<LeonardSystem, LeonardError> {
    let c = candidate_from_json(v)?;
    let ls = validate(&c)?;
    let obj: &Map<String, Value> = v.as_object().expect("checked above");
    if let Some(es) = obj.get("e_mats") {
        let es = es
            .as_array()
            .ok_or_else(|| parse_err("\"e_mats\" must be an array"))?;
        let parsed: Vec<Matrix> = es.iter().map(matrix_from_json).collect::<Result<_, _>>()?;
        if parsed != ls.e() {
            return Err(LeonardError::CacheMismatch("e_mats"));
        }
    }
    if let Some(s) = obj.get("s_mat") {
        if &matrix_from_json(s)? != ls.dagger().s_mat() {
            return Err(LeonardError::CacheMismatch("s_mat"));
        }
    }
    Ok(ls)
}
