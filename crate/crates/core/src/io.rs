//! JSON tensor files and report files.
//!
//! A tensor file lists either explicit components (1-based indices, exact
//! rational strings; unlisted components are zero) or a catalog constructor:
//!
//! ```json
//! { "convention": "R_ijkl = <R(e_i,e_j)e_k, e_l>", "dimension": 2,
//!   "field": "real", "signature": [2, 0],
//!   "constructor": { "name": "constant-curvature", "parameters": { "k": "1/3" } } }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::catalog;
use crate::checks::PropertyReport;
use crate::curvature::{CurvatureTensor, CONVENTION};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Matrix, Rational};
use crate::ser::FLOAT_FORMAT;
use crate::space::{Field, PseudoEuclideanSpace};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constructor {
    pub name: String,
    #[serde(default)]
    pub parameters: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub convention: String,
    pub dimension: usize,
    pub field: Field,
    pub signature: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Component>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constructor: Option<Constructor>,
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { location: location.into(), message: message.into() }
}

impl TensorFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| parse_err(format!("line {}, column {}", e.line(), e.column()), e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Parse { location, message } => parse_err(format!("{}: {location}", path.display()), message),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tensor file serialises")
    }

    /// Explicit listing of the non-zero components of `t`.
    pub fn from_tensor(t: &CurvatureTensor) -> Self {
        let (p, q) = t.space().signature();
        let components = t
            .nonzero_components()
            .into_iter()
            .map(|([i, j, k, l], v)| Component { i: i + 1, j: j + 1, k: k + 1, l: l + 1, value: format_rational(&v) })
            .collect();
        Self {
            convention: CONVENTION.into(),
            dimension: t.dim(),
            field: t.space().field(),
            signature: [p, q],
            components: Some(components),
            constructor: None,
        }
    }

    pub fn with_constructor(space: &PseudoEuclideanSpace, name: &str, parameters: Map<String, Value>) -> Self {
        let (p, q) = space.signature();
        Self {
            convention: CONVENTION.into(),
            dimension: space.dim(),
            field: space.field(),
            signature: [p, q],
            components: None,
            constructor: Some(Constructor { name: name.into(), parameters }),
        }
    }

    pub fn space(&self) -> Result<PseudoEuclideanSpace> {
        if self.convention.trim() != CONVENTION {
            return Err(parse_err("convention", format!("expected {CONVENTION:?}, found {:?}", self.convention)));
        }
        let [p, q] = self.signature;
        if p + q != self.dimension {
            return Err(parse_err("signature", format!("signature ({p},{q}) does not match dimension {}", self.dimension)));
        }
        PseudoEuclideanSpace::with_field(p, q, self.field).map_err(|e| parse_err("signature", e.to_string()))
    }

    /// Builds the tensor. Explicit components are not validated here.
    pub fn tensor(&self) -> Result<CurvatureTensor> {
        let space = self.space()?;
        match (&self.components, &self.constructor) {
            (Some(_), Some(_)) => Err(parse_err("<root>", "give either components or constructor, not both")),
            (None, None) => Err(parse_err("<root>", "missing components or constructor")),
            (Some(cs), None) => {
                let n = self.dimension;
                let mut entries = Vec::with_capacity(cs.len());
                let mut seen = std::collections::HashSet::new();
                for (idx, c) in cs.iter().enumerate() {
                    let loc = format!("components[{idx}]");
                    let quad = [c.i, c.j, c.k, c.l];
                    if quad.iter().any(|&v| v == 0 || v > n) {
                        return Err(parse_err(loc, format!("index {quad:?} outside 1..={n}")));
                    }
                    if !seen.insert(quad) {
                        return Err(parse_err(loc, format!("index {quad:?} listed twice")));
                    }
                    let v = parse_rational(&c.value).map_err(|m| parse_err(format!("{loc}.value"), m))?;
                    entries.push((quad.map(|v| v - 1), v));
                }
                CurvatureTensor::from_components(&space, entries)
            }
            (None, Some(ctor)) => build_constructor(&space, ctor),
        }
    }
}

fn param<'a>(ctor: &'a Constructor, key: &str) -> Option<&'a Value> {
    ctor.parameters.get(key)
}

fn rational_value(v: &Value, loc: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|m| parse_err(loc, m)),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap_or_default().into())),
        _ => Err(parse_err(loc, "expected an exact rational string")),
    }
}

fn rational_param(ctor: &Constructor, key: &str) -> Result<Rational> {
    let loc = format!("constructor.parameters.{key}");
    rational_value(param(ctor, key).ok_or_else(|| parse_err(&loc, "missing"))?, &loc)
}

fn u64_param(ctor: &Constructor, key: &str, default: Option<u64>) -> Result<u64> {
    let loc = format!("constructor.parameters.{key}");
    match param(ctor, key) {
        Some(v) => v.as_u64().ok_or_else(|| parse_err(loc, "expected a non-negative integer")),
        None => default.ok_or_else(|| parse_err(loc, "missing")),
    }
}

fn rational_list(ctor: &Constructor, key: &str) -> Result<Vec<Rational>> {
    let loc = format!("constructor.parameters.{key}");
    let arr = param(ctor, key).and_then(Value::as_array).ok_or_else(|| parse_err(&loc, "expected a list"))?;
    arr.iter().enumerate().map(|(i, v)| rational_value(v, &format!("{loc}[{i}]"))).collect()
}

fn rational_matrix(v: &Value, loc: &str, n: usize) -> Result<Matrix> {
    let rows = v.as_array().ok_or_else(|| parse_err(loc, "expected a list of rows"))?;
    if rows.len() != n {
        return Err(parse_err(loc, format!("expected {n} rows")));
    }
    let mut m = Matrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == n).ok_or_else(|| parse_err(format!("{loc}[{i}]"), format!("expected {n} entries")))?;
        for (j, x) in row.iter().enumerate() {
            m[(i, j)] = rational_value(x, &format!("{loc}[{i}][{j}]"))?;
        }
    }
    Ok(m)
}

fn build_constructor(space: &PseudoEuclideanSpace, ctor: &Constructor) -> Result<CurvatureTensor> {
    match ctor.name.as_str() {
        "zero" => Ok(CurvatureTensor::zero(space)),
        "constant-curvature" => Ok(catalog::constant_curvature(space, &rational_param(ctor, "k")?)),
        "rank-one-generator" => {
            let loc = "constructor.parameters.phi";
            let phi = rational_matrix(param(ctor, "phi").ok_or_else(|| parse_err(loc, "missing"))?, loc, space.dim())?;
            catalog::rank_one_generator(space, &catalog::SymmetricBilinearForm::new(phi)?)
        }
        "clifford" => {
            let cs = match param(ctor, "structure").and_then(Value::as_str) {
                Some("complex") => catalog::complex_structure(space)?,
                Some("quaternionic") => catalog::quaternionic_structures(space)?,
                Some("octonionic") => catalog::octonionic_structures(space)?,
                Some(other) => return Err(parse_err("constructor.parameters.structure", format!("unknown structure {other:?}"))),
                None => {
                    let loc = "constructor.parameters.operators";
                    let ops = param(ctor, "operators").and_then(Value::as_array).ok_or_else(|| {
                        parse_err(loc, "give a structure name or explicit operators")
                    })?;
                    let ops = ops
                        .iter()
                        .enumerate()
                        .map(|(i, v)| rational_matrix(v, &format!("{loc}[{i}]"), space.dim()))
                        .collect::<Result<Vec<_>>>()?;
                    catalog::AnticommutingStructure::new(space, ops)?
                }
            };
            catalog::clifford_tensor(space, &cs, &rational_param(ctor, "lambda0")?, &rational_list(ctor, "lambdas")?)
        }
        "random" => catalog::random_act(
            space,
            u64_param(ctor, "seed", None)?,
            u64_param(ctor, "generators", Some(3))? as usize,
            u64_param(ctor, "bound", Some(5))? as i64,
        ),
        "random-isotropic" => catalog::random_isotropic_act(
            space,
            u64_param(ctor, "seed", None)?,
            u64_param(ctor, "generators", Some(2))? as usize,
            u64_param(ctor, "bound", Some(3))? as i64,
        ),
        "nilpotent" => catalog::nilpotent_example(space.signature()),
        other => Err(parse_err("constructor.name", format!("unknown constructor {other:?}"))),
    }
}

/// Machine-readable report. `generated_at` is informational only and is
/// the one field that differs between reproductions.
#[derive(Debug, Clone, Serialize)]
pub struct ReportFile<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub generated_at: String,
    pub convention: &'static str,
    pub float_format: &'static str,
    pub tensor: TensorSummary,
    pub consistent: bool,
    pub report: &'a PropertyReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct TensorSummary {
    pub dimension: usize,
    pub signature: [usize; 2],
    pub field: Field,
    pub source: String,
}

pub const TIMESTAMP_FIELD: &str = "generated_at";

impl<'a> ReportFile<'a> {
    pub fn new(file: &TensorFile, report: &'a PropertyReport) -> Self {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or_default();
        Self {
            tool: "osserman",
            version: env!("CARGO_PKG_VERSION"),
            generated_at: format!("unix:{secs}"),
            convention: CONVENTION,
            float_format: FLOAT_FORMAT,
            tensor: TensorSummary {
                dimension: file.dimension,
                signature: file.signature,
                field: file.field,
                source: file.constructor.as_ref().map_or_else(|| "components".to_string(), |c| c.name.clone()),
            },
            consistent: report.is_consistent(),
            report,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Parses a report and drops the timestamp, for reproduction comparisons.
pub fn comparable_report(text: &str) -> Result<Value> {
    let mut v: Value = serde_json::from_str(text)?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove(TIMESTAMP_FIELD);
    }
    Ok(v)
}
