//! JSON encodings of matrices, tower elements, fields, registries and maps.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use reidemeister_core::fieldmap::{Elem, FieldMap, Tower};
use reidemeister_core::matrix::Mat;
use reidemeister_core::ratfunc::{parse_ratfn, RatFn, Rational, VarRegistry};
use reidemeister_core::tower::TowerElem;

use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::input(msg)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field \"{key}\"")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| bad(format!("\"{what}\" must be a non-negative integer")))
}

pub fn get_usize(v: &Value, key: &str) -> Result<usize> {
    as_usize(field(v, key)?, key)
}

pub fn get_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| bad(format!("\"{key}\" must be a string")))
}

pub fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    field(v, key)
}

pub fn ratfn_to_json(f: &RatFn, reg: &VarRegistry) -> Value {
    Value::String(f.display(reg))
}

pub fn ratfn_from_json(v: &Value, reg: &VarRegistry) -> Result<RatFn> {
    let s = v.as_str().ok_or_else(|| bad("expected an expression string"))?;
    Ok(parse_ratfn(s, reg)?)
}

fn mat_to_json<F: reidemeister_core::Field>(m: &Mat<F>, mut entry: impl FnMut(&F) -> Value) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| entry(m.get(i, j))).collect()))
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

fn mat_from_json<F: reidemeister_core::Field>(v: &Value, mut entry: impl FnMut(&Value) -> Result<F>) -> Result<Mat<F>> {
    let rows = get_usize(v, "rows")?;
    let cols = get_usize(v, "cols")?;
    let entries = field(v, "entries")?
        .as_array()
        .ok_or_else(|| bad("\"entries\" must be an array of rows"))?;
    if entries.len() != rows {
        return Err(bad(format!("expected {rows} rows, found {}", entries.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in entries.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| bad("matrix rows must be arrays"))?;
        if row.len() != cols {
            return Err(bad(format!("row {i} has {} entries, expected {cols}", row.len())));
        }
        for e in row {
            data.push(entry(e)?);
        }
    }
    Ok(Mat::new(rows, cols, data)?)
}

pub fn ratmat_to_json(m: &Mat<RatFn>, reg: &VarRegistry) -> Value {
    mat_to_json(m, |f| ratfn_to_json(f, reg))
}

pub fn ratmat_from_json(v: &Value, reg: &VarRegistry) -> Result<Mat<RatFn>> {
    mat_from_json(v, |e| ratfn_from_json(e, reg))
}

fn leaves_to_json(c: &[RatFn], reg: &VarRegistry) -> Value {
    if c.len() == 1 {
        return ratfn_to_json(&c[0], reg);
    }
    let h = c.len() / 2;
    Value::Array(vec![leaves_to_json(&c[..h], reg), leaves_to_json(&c[h..], reg)])
}

/// `a + b√r` as `[a, b]`, recursively; base elements are plain strings.
pub fn elem_to_json(e: &Elem, reg: &VarRegistry) -> Value {
    leaves_to_json(e.coeffs(), reg)
}

fn leaves_from_json(v: &Value, reg: &VarRegistry, out: &mut Vec<RatFn>) -> Result<usize> {
    match v {
        Value::String(_) => {
            out.push(ratfn_from_json(v, reg)?);
            Ok(0)
        }
        Value::Array(pair) if pair.len() == 2 => {
            let da = leaves_from_json(&pair[0], reg, out)?;
            let db = leaves_from_json(&pair[1], reg, out)?;
            if da != db {
                return Err(bad("unbalanced tower element"));
            }
            Ok(da + 1)
        }
        _ => Err(bad("tower element must be a string or a pair")),
    }
}

pub fn elem_from_json(v: &Value, reg: &VarRegistry, tower: &Tower) -> Result<Elem> {
    let mut leaves = Vec::new();
    leaves_from_json(v, reg, &mut leaves)?;
    Ok(tower.element(leaves)?)
}

pub fn elem_mat_to_json(m: &Mat<Elem>, reg: &VarRegistry) -> Value {
    mat_to_json(m, |e| elem_to_json(e, reg))
}

pub fn elem_mat_from_json(v: &Value, reg: &VarRegistry, tower: &Tower) -> Result<Mat<Elem>> {
    mat_from_json(v, |e| elem_from_json(e, reg, tower))
}

pub fn registry_to_json(reg: &VarRegistry) -> Value {
    json!({ "names": reg.names(), "fresh": reg.fresh_counter() })
}

pub fn registry_from_json(v: &Value) -> Result<VarRegistry> {
    let names = field(v, "names")?
        .as_array()
        .ok_or_else(|| bad("\"names\" must be an array"))?
        .iter()
        .map(|n| n.as_str().map(str::to_owned).ok_or_else(|| bad("variable names must be strings")))
        .collect::<Result<Vec<_>>>()?;
    let fresh = field(v, "fresh")?
        .as_u64()
        .ok_or_else(|| bad("\"fresh\" must be a non-negative integer"))?;
    Ok(VarRegistry::restore(names, fresh)?)
}

pub fn field_to_json(tower: &Tower, reg: &VarRegistry) -> Value {
    let radicands: Vec<Value> = tower.radicands().iter().map(|r| elem_to_json(r, reg)).collect();
    json!({ "depth": tower.depth(), "max_depth": tower.max_depth(), "radicands": radicands })
}

/// Replays the recorded radicands; `max_depth` caps the rebuilt tower.
pub fn field_from_json(v: &Value, reg: &VarRegistry, max_depth: usize) -> Result<Tower> {
    let rs = field(v, "radicands")?
        .as_array()
        .ok_or_else(|| bad("\"radicands\" must be an array"))?;
    let mut coeffs = Vec::with_capacity(rs.len());
    for r in rs {
        let mut leaves = Vec::new();
        leaves_from_json(r, reg, &mut leaves)?;
        coeffs.push(leaves);
    }
    Ok(Tower::from_radicands(coeffs, max_depth)?)
}

pub fn map_to_json(phi: &FieldMap, reg: &VarRegistry) -> Value {
    let gens: Vec<Value> = phi
        .images()
        .iter()
        .map(|(&v, f)| json!([reg.name(v).unwrap_or("?"), f.display(reg)]))
        .collect();
    let layers: Vec<Value> = phi.radical_images().iter().map(|e| elem_to_json(e, reg)).collect();
    json!({ "generators": gens, "layer_images": layers })
}

/// The generator part of a map descriptor; layer images are returned unparsed.
pub fn map_from_json(v: &Value, reg: &VarRegistry) -> Result<(FieldMap, Vec<Value>)> {
    let gens = field(v, "generators")?
        .as_array()
        .ok_or_else(|| bad("\"generators\" must be an array"))?;
    let mut images = BTreeMap::new();
    for g in gens {
        let pair = g.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("generator entries are [name, image] pairs"))?;
        let name = pair[0].as_str().ok_or_else(|| bad("generator name must be a string"))?;
        let slot = reg
            .index_of(name)
            .ok_or_else(|| bad(format!("generator {name} is not registered")))?;
        if images.insert(slot, ratfn_from_json(&pair[1], reg)?).is_some() {
            return Err(bad(format!("generator {name} listed twice")));
        }
    }
    let layers = field(v, "layer_images")?
        .as_array()
        .ok_or_else(|| bad("\"layer_images\" must be an array"))?
        .clone();
    Ok((FieldMap::new(reg, images)?, layers))
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn point_to_json(point: &BTreeMap<usize, Rational>, reg: &VarRegistry) -> Value {
    let mut m = Map::new();
    for (&v, q) in point {
        m.insert(reg.name(v).unwrap_or("?").to_owned(), rational_to_json(q));
    }
    Value::Object(m)
}

pub fn lift(m: &Mat<RatFn>) -> Mat<Elem> {
    m.map(|f| TowerElem::base(f.clone()))
}
