//! JSON form of a realization. Scalars are written as strings in the
//! `a+bi` syntax so that the exact values survive a round trip.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};

use super::{ModuleRealization, WeightWindow};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub fn realization_to_json(m: &ModuleRealization) -> Value {
    let w = m.window();
    let dims: Map<String, Value> = m.extended_dims().iter().map(|(k, d)| (k.to_string(), json!(d))).collect();
    let actions: Vec<Value> = m
        .actions()
        .iter()
        .map(|(&(i, k), a)| {
            json!({
                "i": i,
                "k": k,
                "rows": a.rows(),
                "cols": a.cols(),
                "entries": a.entries().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut out = json!({
        "offset": w.offset.to_string(),
        "window": {"kMin": w.k_min, "kMax": w.k_max, "margin": w.margin, "genBound": w.gen_bound},
        "centralScalar": m.central_scalar().to_string(),
        "dims": dims,
        "actions": actions,
        "incomplete": m.incomplete().iter().collect::<Vec<_>>(),
        "truncationFlags": m.truncation_flags().iter().collect::<Vec<_>>(),
    });
    if let Some(labels) = m.labels() {
        let l: Map<String, Value> = labels.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        out["labels"] = Value::Object(l);
    }
    out
}

fn bad(reason: impl Into<String>) -> Error {
    Error::InvalidArgument(format!("malformed realization JSON: {}", reason.into()))
}

fn int(v: &Value, key: &str) -> Result<i64> {
    v.get(key).and_then(Value::as_i64).ok_or_else(|| bad(format!("missing integer {key:?}")))
}

fn scalar(v: &Value, what: &str) -> Result<Scalar> {
    let s = v.as_str().ok_or_else(|| bad(format!("{what} must be a string")))?;
    s.parse().map_err(|_| bad(format!("{what} is not a scalar: {s:?}")))
}

fn weight_key(k: &str) -> Result<i64> {
    k.parse().map_err(|_| bad(format!("weight key {k:?} is not an integer")))
}

/// Reads a realization written by [`realization_to_json`]. The truncation
/// flags are recomputed rather than trusted.
pub fn realization_from_json(v: &Value) -> Result<ModuleRealization> {
    let offset = scalar(v.get("offset").ok_or_else(|| bad("missing offset"))?, "offset")?;
    let wv = v.get("window").ok_or_else(|| bad("missing window"))?;
    let window = WeightWindow::new(offset, int(wv, "kMin")?, int(wv, "kMax")?, int(wv, "margin")?)?
        .with_gen_bound(int(wv, "genBound")?)?;
    let central = scalar(v.get("centralScalar").ok_or_else(|| bad("missing centralScalar"))?, "centralScalar")?;

    let mut dims = BTreeMap::new();
    for (k, d) in v.get("dims").and_then(Value::as_object).ok_or_else(|| bad("missing dims"))? {
        let d = d.as_u64().ok_or_else(|| bad("dimensions must be non-negative integers"))?;
        dims.insert(weight_key(k)?, d as usize);
    }

    let mut actions = BTreeMap::new();
    for a in v.get("actions").and_then(Value::as_array).ok_or_else(|| bad("missing actions"))? {
        let (i, k) = (int(a, "i")?, int(a, "k")?);
        let rows = int(a, "rows")? as usize;
        let cols = int(a, "cols")? as usize;
        let entries = a.get("entries").and_then(Value::as_array).ok_or_else(|| bad("missing entries"))?;
        if entries.len() != rows * cols {
            return Err(bad(format!("action ({i}, {k}) has {} entries, expected {}", entries.len(), rows * cols)));
        }
        let values = entries.iter().map(|e| scalar(e, "matrix entry")).collect::<Result<Vec<_>>>()?;
        let row_vecs: Vec<Vec<Scalar>> = (0..rows).map(|r| values[r * cols..(r + 1) * cols].to_vec()).collect();
        actions.insert((i, k), Matrix::from_rows_with_width(row_vecs, cols));
    }

    let incomplete: BTreeSet<i64> = match v.get("incomplete") {
        None => BTreeSet::new(),
        Some(list) => list
            .as_array()
            .ok_or_else(|| bad("incomplete must be a list"))?
            .iter()
            .map(|k| k.as_i64().ok_or_else(|| bad("incomplete weights must be integers")))
            .collect::<Result<_>>()?,
    };

    let labels = match v.get("labels") {
        None | Some(Value::Null) => None,
        Some(obj) => {
            let mut out = BTreeMap::new();
            for (k, names) in obj.as_object().ok_or_else(|| bad("labels must be an object"))? {
                let names = names
                    .as_array()
                    .ok_or_else(|| bad("labels must be lists of strings"))?
                    .iter()
                    .map(|n| n.as_str().map(str::to_string).ok_or_else(|| bad("labels must be strings")))
                    .collect::<Result<Vec<_>>>()?;
                out.insert(weight_key(k)?, names);
            }
            Some(out)
        }
    };

    ModuleRealization::from_parts(window, dims, actions, central, labels, incomplete)
}
