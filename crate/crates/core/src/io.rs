//! JSON formats.
//!
//! * Algebra: `{"dim": n, "brackets": [[i, j, k, c], …], "metric": n×n array |
//!   "identity", "labels": […]}` with 0-based indices and `i < j`; the entry
//!   means `[e_i, e_j]` has `e_k` coefficient `c`.
//! * Hermitian data: the algebra object plus `"complex_structure"`, an `n×n`
//!   row-major array whose column `j` is `J e_j`.
//! * Standard spec: see [`crate::standard::StandardSpec`].
//! * Root datum: `{"torus": […], "center": […], "roots": [{"alpha", "X", "Y"}],
//!   "eta": [[i, j, value], …]}` with vectors given as arrays of frame coordinates.
//! * Decomposition: `{"kaehler_dim", "euclidean_rank", "sasaki": [{"c"}],
//!   "flat_ideal": [{"family", "param"}], "r_B", "post_checks"}`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::decompose::BklDecomposition;
use crate::enumerate::EnumerationEntry;
use crate::error::{Error, Result};
use crate::hermitian::HermitianData;
use crate::lie::{MetricLieAlgebra, StructureConstants};
use crate::roots::RootDatum;
use crate::standard::StandardSpec;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum MetricJson {
    Token(String),
    Matrix(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraJson {
    dim: usize,
    brackets: Vec<(usize, usize, usize, f64)>,
    metric: MetricJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    complex_structure: Option<Vec<Vec<f64>>>,
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn square(rows: &[Vec<f64>], n: usize, field: &str) -> Result<DMatrix<f64>> {
    if rows.len() != n {
        return Err(schema(format!(
            "{field}: expected {n} rows, found {}",
            rows.len()
        )));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(schema(format!(
                "{field}[{i}]: expected {n} entries, found {}",
                r.len()
            )));
        }
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

fn rows_of(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn columns_of(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.ncols())
        .map(|j| m.column(j).iter().copied().collect())
        .collect()
}

fn vector(v: &DVector<f64>) -> Vec<f64> {
    v.iter().copied().collect()
}

fn algebra_from_json(raw: &AlgebraJson) -> Result<MetricLieAlgebra> {
    let n = raw.dim;
    for (idx, &(i, j, k, c)) in raw.brackets.iter().enumerate() {
        if i >= j {
            return Err(schema(format!(
                "brackets[{idx}]: requires i < j, found i = {i}, j = {j}"
            )));
        }
        if j >= n || k >= n {
            return Err(schema(format!(
                "brackets[{idx}]: index out of range for dim {n}"
            )));
        }
        if !c.is_finite() {
            return Err(schema(format!(
                "brackets[{idx}]: coefficient is not finite"
            )));
        }
    }
    let gram = match &raw.metric {
        MetricJson::Token(t) if t == "identity" => DMatrix::identity(n, n),
        MetricJson::Token(t) => {
            return Err(schema(format!(
                "metric: unknown token {t:?}, expected \"identity\""
            )))
        }
        MetricJson::Matrix(rows) => square(rows, n, "metric")?,
    };
    if let Some(l) = &raw.labels {
        if l.len() != n {
            return Err(schema(format!(
                "labels: expected {n} labels, found {}",
                l.len()
            )));
        }
    }
    let sc = StructureConstants::from_entries(n, &raw.brackets)?;
    MetricLieAlgebra::new(sc, gram, raw.labels.clone())
}

fn parse_raw(text: &str) -> Result<AlgebraJson> {
    serde_json::from_str(text).map_err(|e| schema(e.to_string()))
}

pub fn parse_algebra(text: &str) -> Result<MetricLieAlgebra> {
    algebra_from_json(&parse_raw(text)?)
}

pub fn parse_hermitian(text: &str) -> Result<HermitianData> {
    let raw = parse_raw(text)?;
    let alg = algebra_from_json(&raw)?;
    let rows = raw
        .complex_structure
        .as_ref()
        .ok_or_else(|| schema("missing field `complex_structure`"))?;
    let j = square(rows, raw.dim, "complex_structure")?;
    HermitianData::new(alg, j)
}

fn algebra_raw(alg: &MetricLieAlgebra) -> AlgebraJson {
    let n = alg.dim();
    let metric = if alg.gram() == &DMatrix::<f64>::identity(n, n) {
        MetricJson::Token("identity".into())
    } else {
        MetricJson::Matrix(rows_of(alg.gram()))
    };
    AlgebraJson {
        dim: n,
        brackets: alg.constants().entries(),
        metric,
        labels: Some(alg.labels().to_vec()),
        complex_structure: None,
    }
}

pub fn algebra_to_json(alg: &MetricLieAlgebra) -> Value {
    serde_json::to_value(algebra_raw(alg)).expect("serializable")
}

pub fn hermitian_to_json(h: &HermitianData) -> Value {
    let mut raw = algebra_raw(h.alg());
    raw.complex_structure = Some(rows_of(h.j()));
    serde_json::to_value(raw).expect("serializable")
}

pub fn parse_spec(text: &str) -> Result<StandardSpec> {
    serde_json::from_str(text).map_err(|e| schema(e.to_string()))
}

pub fn root_datum_to_json(d: &RootDatum) -> Value {
    json!({
        "center": columns_of(&d.center),
        "torus": columns_of(&d.torus),
        "roots": d.roots.iter().map(|r| json!({
            "alpha": vector(&r.alpha),
            "X": vector(&r.x),
            "Y": vector(&r.y),
        })).collect::<Vec<_>>(),
        "eta": d.eta.iter().map(|(&(a, b), &v)| json!([a, b, v])).collect::<Vec<_>>(),
    })
}

pub fn decomposition_to_json(d: &BklDecomposition) -> Value {
    json!({
        "kaehler_dim": d.kaehler.ncols(),
        "euclidean_rank": d.euclidean_rank(),
        "sasaki": d.sasaki.iter().map(|b| json!({
            "c": b.c,
            "bismut_flat": b.bismut_flat,
            "reeb": vector(&b.reeb),
        })).collect::<Vec<_>>(),
        "flat_ideal": d.flat_ideal.iter().map(|f| json!({
            "family": f.simple_type.family.name(),
            "param": f.simple_type.param,
            "dim": f.basis.ncols(),
        })).collect::<Vec<_>>(),
        "r_B": d.bookkeeping.r_b,
        "bookkeeping": d.bookkeeping,
        "additivity": d.additivity,
        "post_checks": d.post_checks,
    })
}

pub fn enumeration_to_json(entries: &[EnumerationEntry]) -> Value {
    json!(entries
        .iter()
        .map(|e| json!({
            "n": e.n,
            "l": e.l,
            "s": e.s,
            "groups": e.groups.iter().map(|g| json!({"family": g.family.name(), "param": g.param})).collect::<Vec<_>>(),
            "r": e.r,
            "r_B": e.r_b,
            "is_bismut_flat": e.is_bismut_flat,
            "extremal_low": e.extremal_low,
            "extremal_high": e.extremal_high,
            "name": e.display_name(),
        }))
        .collect::<Vec<_>>())
}
