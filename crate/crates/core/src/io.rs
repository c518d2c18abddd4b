//! JSON interchange formats for graphs, splines and modules.
//!
//! A graph is `{"modulus": 15, "vertices": ["a", "b"], "edges": [{"id": 0,
//! "u": "a", "v": "b", "label": 3}]}`. Labels are divisor generators, with
//! `0` accepted for the zero ideal; `id` is optional on input and defaults to
//! the edge's position. Output always writes ids and canonical generators, so
//! an emitted graph parses back to an equal graph and re-emits byte for byte.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::error::SplineError;
use crate::graph::{LabeledEdge, LabeledGraph};
use crate::ring::{Modulus, ZmIdeal};
use crate::solver::{Spline, SplineModule};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Format(String),
    #[error(transparent)]
    Spline(#[from] SplineError),
}

pub type IoResult<T> = std::result::Result<T, IoError>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<usize>,
    pub u: String,
    pub v: String,
    pub label: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub modulus: u64,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

impl GraphJson {
    pub fn from_graph(g: &LabeledGraph) -> Self {
        GraphJson {
            modulus: g.modulus().get(),
            vertices: g.names().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeJson {
                    id: Some(e.id),
                    u: g.name(e.u).to_string(),
                    v: g.name(e.v).to_string(),
                    label: e.label.generator(),
                })
                .collect(),
        }
    }

    pub fn into_graph(self) -> Result<LabeledGraph, SplineError> {
        let modulus = Modulus::new(self.modulus)?;
        let g = LabeledGraph::new(modulus, &self.vertices)?;
        let mut edges = Vec::with_capacity(self.edges.len());
        for (position, e) in self.edges.iter().enumerate() {
            edges.push(LabeledEdge {
                id: e.id.unwrap_or(position),
                u: g.vertex(&e.u)?,
                v: g.vertex(&e.v)?,
                label: ZmIdeal::from_divisor(e.label, modulus)?,
            });
        }
        LabeledGraph::from_parts(modulus, self.vertices, edges)
    }
}

pub fn graph_from_json(text: &str) -> IoResult<LabeledGraph> {
    let raw: GraphJson = serde_json::from_str(text)?;
    Ok(raw.into_graph()?)
}

pub fn graph_to_json(g: &LabeledGraph) -> String {
    to_pretty(&GraphJson::from_graph(g))
}

/// Pretty JSON with a trailing newline. Arrays of scalars stay on one line so
/// spline rows read as tuples.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("serializable");
    let mut out = String::new();
    write_pretty(&value, 0, &mut out);
    out.push('\n');
    out
}

fn write_pretty(value: &Value, depth: usize, out: &mut String) {
    let pad = |out: &mut String, depth: usize| out.extend(std::iter::repeat_n("  ", depth));
    match value {
        Value::Array(items) if !items.is_empty() && items.iter().any(|v| v.is_array() || v.is_object()) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_pretty(item, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) if map.values().any(|v| v.is_array() || v.is_object()) => {
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&Value::from(key.as_str()).to_string());
                out.push_str(": ");
                write_pretty(item, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Object(map) => {
            let parts: Vec<String> =
                map.iter().map(|(k, v)| format!("{}: {v}", Value::from(k.as_str()))).collect();
            out.push('{');
            out.push_str(&parts.join(", "));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// Reads spline values for `g` from a JSON array in vertex order, an object
/// `{"values": [...]}`, or an object mapping every vertex name to its value.
pub fn spline_from_json(g: &LabeledGraph, text: &str) -> IoResult<Spline> {
    let value: Value = serde_json::from_str(text)?;
    spline_from_value(g.modulus(), g.names(), &value)
}

pub fn spline_from_value(modulus: Modulus, names: &[String], value: &Value) -> IoResult<Spline> {
    let number = |v: &Value| {
        v.as_u64().ok_or_else(|| IoError::Format(format!("spline value {v} is not a nonnegative integer")))
    };
    let values: Vec<u64> = match value {
        Value::Array(items) => items.iter().map(number).collect::<IoResult<_>>()?,
        Value::Object(map) if map.contains_key("values") => {
            return spline_from_value(modulus, names, &map["values"]);
        }
        Value::Object(map) => {
            let mut values = Vec::with_capacity(names.len());
            for name in names {
                let v = map.get(name).ok_or_else(|| SplineError::MissingValue(name.clone()))?;
                values.push(number(v)?);
            }
            if let Some(extra) = map.keys().find(|k| !names.contains(k)) {
                return Err(SplineError::UnknownVertex(extra.clone()).into());
            }
            values
        }
        other => return Err(IoError::Format(format!("expected a spline array or object, got {other}"))),
    };
    if values.len() != names.len() {
        return Err(SplineError::DimensionMismatch { expected: names.len(), got: values.len() }.into());
    }
    Ok(Spline::new(modulus, values)?)
}

/// Cardinalities are JSON numbers when they fit in 64 bits, strings otherwise.
pub fn cardinality_value(c: &BigUint) -> Value {
    match u64::try_from(c) {
        Ok(n) => Value::from(n),
        Err(_) => Value::from(c.to_string()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleJson {
    pub modulus: u64,
    pub vertices: Vec<String>,
    pub basepoint: Option<String>,
    pub generators: Vec<Vec<u64>>,
    pub cardinality: Value,
}

impl ModuleJson {
    pub fn from_module(module: &SplineModule) -> Self {
        let g = module.graph();
        ModuleJson {
            modulus: module.modulus().get(),
            vertices: g.names().to_vec(),
            basepoint: module.basepoint().map(|v| g.name(v).to_string()),
            generators: module.generator_rows(),
            cardinality: cardinality_value(module.cardinality()),
        }
    }
}

pub fn module_to_json(module: &SplineModule) -> String {
    to_pretty(&ModuleJson::from_module(module))
}
