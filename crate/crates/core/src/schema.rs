//! Versioned JSON formats: `hopf-algebra/v1`, `hopf-rep/v1`,
//! `voa-window/v1` and `hopf-action/v1`.
//!
//! Scalars are strings in canonical form (`"1/2"`, `"1 - z^2"`), or plain
//! JSON integers. Parse errors carry a JSON pointer to the offending field.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::action::HopfAction;
use crate::error::{Error, Result};
use crate::exactmath::{Mat, Scalar};
use crate::hopf::{HopfAlgebra, Representation};
use crate::voa::{TruncatedVoa, VoaVector};

pub const HOPF_ALGEBRA: &str = "hopf-algebra/v1";
pub const HOPF_REP: &str = "hopf-rep/v1";
pub const VOA_WINDOW: &str = "voa-window/v1";
pub const HOPF_ACTION: &str = "hopf-action/v1";

fn err(pointer: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{pointer}: {msg}"))
}

fn field<'a>(v: &'a Value, pointer: &str, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err(pointer, format!("missing field \"{key}\"")))
}

fn as_str<'a>(v: &'a Value, pointer: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| err(pointer, "expected a string"))
}

fn as_usize(v: &Value, pointer: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| err(pointer, "expected a non-negative integer"))
}

fn as_array<'a>(v: &'a Value, pointer: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(pointer, "expected an array"))
}

fn as_object<'a>(v: &'a Value, pointer: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(pointer, "expected an object"))
}

fn scalar(v: &Value, pointer: &str, conductor: u32) -> Result<Scalar> {
    if let Some(i) = v.as_i64() {
        return Ok(Scalar::from_int(i));
    }
    let text = as_str(v, pointer)?;
    Scalar::parse(text, conductor).map_err(|e| err(pointer, e))
}

fn scalar_json(c: &Scalar) -> Value {
    Value::String(c.to_string())
}

/// Check the `schema` field.
pub fn expect_schema(v: &Value, schema: &str) -> Result<()> {
    let got = as_str(field(v, "", "schema")?, "/schema")?;
    if got != schema {
        return Err(err("/schema", format!("expected \"{schema}\", found \"{got}\"")));
    }
    Ok(())
}

pub fn schema_of(v: &Value) -> Option<&str> {
    v.get("schema").and_then(Value::as_str)
}

fn conductor(v: &Value) -> Result<u32> {
    match v.get("conductor") {
        None => Ok(1),
        Some(c) => Ok(as_usize(c, "/conductor")? as u32),
    }
}

fn label_index(labels: &HashMap<&str, usize>, s: &Value, pointer: &str) -> Result<usize> {
    let name = as_str(s, pointer)?;
    labels.get(name).copied().ok_or_else(|| err(pointer, format!("unknown basis label \"{name}\"")))
}

fn matrix_json(m: &Mat) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(scalar_json).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn parse_matrix(v: &Value, pointer: &str, dim: usize, conductor: u32) -> Result<Mat> {
    let rows = as_array(v, pointer)?;
    if rows.len() != dim {
        return Err(err(pointer, format!("expected {dim} rows, found {}", rows.len())));
    }
    let mut out = Mat::zeros(dim, dim);
    for (r, row) in rows.iter().enumerate() {
        let p = format!("{pointer}/{r}");
        let cells = as_array(row, &p)?;
        if cells.len() != dim {
            return Err(err(&p, format!("expected {dim} entries, found {}", cells.len())));
        }
        for (c, cell) in cells.iter().enumerate() {
            out[(r, c)] = scalar(cell, &format!("{p}/{c}"), conductor)?;
        }
    }
    Ok(out)
}

fn sparse_json(labels: &[String], coords: &[Scalar]) -> Value {
    let map: Map<String, Value> = coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (labels[i].clone(), scalar_json(c)))
        .collect();
    Value::Object(map)
}

fn parse_sparse(v: &Value, pointer: &str, labels: &HashMap<&str, usize>, len: usize, conductor: u32) -> Result<Vec<Scalar>> {
    let mut out = vec![Scalar::zero(); len];
    for (k, c) in as_object(v, pointer)? {
        let p = format!("{pointer}/{k}");
        let i = labels.get(k.as_str()).copied().ok_or_else(|| err(&p, format!("unknown basis label \"{k}\"")))?;
        out[i] = scalar(c, &p, conductor)?;
    }
    Ok(out)
}

pub fn hopf_to_json(h: &HopfAlgebra, name: &str) -> Value {
    let d = h.dim();
    let labels = h.labels();
    let mut mul = Vec::new();
    let mut comul = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let c = h.mul_coef(i, j, k);
                if !c.is_zero() {
                    mul.push(json!([labels[i], labels[j], labels[k], scalar_json(c)]));
                }
                let c = h.comul_coef(i, j, k);
                if !c.is_zero() {
                    comul.push(json!([labels[i], labels[j], labels[k], scalar_json(c)]));
                }
            }
        }
    }
    let antipode: Map<String, Value> =
        (0..d).map(|i| (labels[i].clone(), sparse_json(labels, &h.antipode_matrix().col(i)))).collect();
    json!({
        "schema": HOPF_ALGEBRA,
        "name": name,
        "conductor": h.conductor(),
        "basis": labels,
        "unit": sparse_json(labels, h.unit()),
        "counit": sparse_json(labels, h.counit_vec()),
        "mul": mul,
        "comul": comul,
        "antipode": antipode,
    })
}

pub fn hopf_from_json(v: &Value) -> Result<HopfAlgebra> {
    expect_schema(v, HOPF_ALGEBRA)?;
    let cond = conductor(v)?;
    let basis = as_array(field(v, "", "basis")?, "/basis")?;
    let labels: Vec<String> =
        basis.iter().enumerate().map(|(i, s)| as_str(s, &format!("/basis/{i}")).map(String::from)).collect::<Result<_>>()?;
    let d = labels.len();
    if d == 0 {
        return Err(err("/basis", "basis must not be empty"));
    }
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if index.len() != d {
        return Err(err("/basis", "basis labels must be distinct"));
    }
    let tensor = |key: &str| -> Result<Vec<Scalar>> {
        let mut out = vec![Scalar::zero(); d * d * d];
        for (t, entry) in as_array(field(v, "", key)?, &format!("/{key}"))?.iter().enumerate() {
            let p = format!("/{key}/{t}");
            let e = as_array(entry, &p)?;
            if e.len() != 4 {
                return Err(err(&p, "expected [label, label, label, coefficient]"));
            }
            let i = label_index(&index, &e[0], &format!("{p}/0"))?;
            let j = label_index(&index, &e[1], &format!("{p}/1"))?;
            let k = label_index(&index, &e[2], &format!("{p}/2"))?;
            out[(i * d + j) * d + k] = scalar(&e[3], &format!("{p}/3"), cond)?;
        }
        Ok(out)
    };
    let mul = tensor("mul")?;
    let comul = tensor("comul")?;
    let unit = parse_sparse(field(v, "", "unit")?, "/unit", &index, d, cond)?;
    let counit = parse_sparse(field(v, "", "counit")?, "/counit", &index, d, cond)?;
    let anti = as_object(field(v, "", "antipode")?, "/antipode")?;
    let mut antipode = Mat::zeros(d, d);
    for (k, col) in anti {
        let p = format!("/antipode/{k}");
        let i = index.get(k.as_str()).copied().ok_or_else(|| err(&p, format!("unknown basis label \"{k}\"")))?;
        for (r, c) in parse_sparse(col, &p, &index, d, cond)?.into_iter().enumerate() {
            antipode[(r, i)] = c;
        }
    }
    HopfAlgebra::new(labels, cond, mul, unit, comul, counit, antipode)
}

pub fn rep_to_json(h: &HopfAlgebra, m: &Representation, name: &str, hopf_file: &str) -> Value {
    let mats: Map<String, Value> = (0..h.dim()).map(|i| (h.label(i).to_string(), matrix_json(m.matrix(i)))).collect();
    json!({
        "schema": HOPF_REP,
        "name": name,
        "hopf": hopf_file,
        "conductor": h.conductor(),
        "dim": m.dim(),
        "matrices": mats,
    })
}

/// Parse a representation of `h` and check it is an algebra map.
pub fn rep_from_json(v: &Value, h: &HopfAlgebra) -> Result<Representation> {
    expect_schema(v, HOPF_REP)?;
    let cond = conductor(v)?;
    let dim = as_usize(field(v, "", "dim")?, "/dim")?;
    let mats = label_matrices(field(v, "", "matrices")?, "/matrices", h, dim, cond)?;
    Representation::validated(h, dim, mats).map_err(|e| err("/matrices", e))
}

fn label_matrices(v: &Value, pointer: &str, h: &HopfAlgebra, dim: usize, cond: u32) -> Result<Vec<Mat>> {
    let obj = as_object(v, pointer)?;
    (0..h.dim())
        .map(|i| {
            let label = h.label(i);
            let p = format!("{pointer}/{label}");
            let m = obj.get(label).ok_or_else(|| err(pointer, format!("missing matrix for \"{label}\"")))?;
            parse_matrix(m, &p, dim, cond)
        })
        .collect()
}

/// Export mode tables for every basis pair with `wt a + wt b ≤ pair_budget`.
pub fn voa_to_json(v: &TruncatedVoa, pair_budget: usize) -> Result<Value> {
    let labels = v.labels();
    let by_weight: Vec<Vec<&String>> = (0..=v.window()).map(|n| labels[v.range(n)].iter().collect()).collect();
    let modes: Vec<Value> = v
        .mode_entries(pair_budget)?
        .into_iter()
        .map(|(a, b, m, r)| {
            let coords: Map<String, Value> = r.iter().map(|(i, c)| (labels[i].clone(), scalar_json(c))).collect();
            json!([labels[a], m, labels[b], coords])
        })
        .collect();
    let omega: Map<String, Value> = v.omega().iter().map(|(i, c)| (labels[i].clone(), scalar_json(c))).collect();
    Ok(json!({
        "schema": VOA_WINDOW,
        "window": v.window(),
        "conductor": v.conductor(),
        "rank": v.rank(),
        "labels": by_weight,
        "vacuum": labels[0],
        "omega": omega,
        "pair_budget": pair_budget,
        "modes": modes,
    }))
}

pub fn voa_from_json(v: &Value) -> Result<TruncatedVoa> {
    expect_schema(v, VOA_WINDOW)?;
    let cond = conductor(v)?;
    let window = as_usize(field(v, "", "window")?, "/window")?;
    let per = as_array(field(v, "", "labels")?, "/labels")?;
    if per.len() != window + 1 {
        return Err(err("/labels", format!("expected {} weight spaces, found {}", window + 1, per.len())));
    }
    let mut labels_by_weight = Vec::new();
    for (n, row) in per.iter().enumerate() {
        let p = format!("/labels/{n}");
        let row = as_array(row, &p)?;
        labels_by_weight
            .push(row.iter().enumerate().map(|(i, s)| as_str(s, &format!("{p}/{i}")).map(String::from)).collect::<Result<Vec<_>>>()?);
    }
    let flat: Vec<String> = labels_by_weight.iter().flatten().cloned().collect();
    let index: HashMap<&str, usize> = flat.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if index.len() != flat.len() {
        return Err(err("/labels", "basis labels must be distinct"));
    }
    let vacuum = as_str(field(v, "", "vacuum")?, "/vacuum")?;
    if flat.first().map(String::as_str) != Some(vacuum) {
        return Err(err("/vacuum", "the vacuum must be the single weight-0 basis vector"));
    }
    let total = flat.len();
    let sparse = |x: &Value, p: &str| -> Result<VoaVector> {
        Ok(VoaVector::from_terms(parse_sparse(x, p, &index, total, cond)?.into_iter().enumerate()))
    };
    let omega = sparse(field(v, "", "omega")?, "/omega")?;
    let pair_budget = as_usize(field(v, "", "pair_budget")?, "/pair_budget")?;
    let mut entries = HashMap::new();
    for (t, e) in as_array(field(v, "", "modes")?, "/modes")?.iter().enumerate() {
        let p = format!("/modes/{t}");
        let e = as_array(e, &p)?;
        if e.len() != 4 {
            return Err(err(&p, "expected [label, mode, label, vector]"));
        }
        let a = label_index(&index, &e[0], &format!("{p}/0"))?;
        let m = e[1].as_i64().ok_or_else(|| err(&format!("{p}/1"), "expected an integer mode"))?;
        let b = label_index(&index, &e[2], &format!("{p}/2"))?;
        entries.insert((a, b, m), sparse(&e[3], &format!("{p}/3"))?);
    }
    TruncatedVoa::from_tables(labels_by_weight, cond, omega, entries, pair_budget).map_err(|e| err("", e))
}

/// A Hopf action presented by matrices on `V_1` of a Heisenberg VOA.
#[derive(Clone, Debug)]
pub struct ActionSpec {
    pub name: String,
    pub hopf: Arc<HopfAlgebra>,
    /// Path of the Hopf algebra file, relative to the action file.
    pub hopf_file: String,
    pub rank: u32,
    pub window: usize,
    pub gen: Vec<Mat>,
}

impl ActionSpec {
    /// Build the VOA (window capped at `window_cap`) and extend the action.
    pub fn build(&self, window_cap: Option<usize>) -> Result<HopfAction> {
        let window = window_cap.map_or(self.window, |c| c.min(self.window));
        let voa = TruncatedVoa::heisenberg(self.rank, window)?;
        HopfAction::extend(Arc::clone(&self.hopf), Arc::new(voa), self.gen.clone())
    }

    pub fn to_json(&self) -> Value {
        let gen: Map<String, Value> =
            (0..self.hopf.dim()).map(|i| (self.hopf.label(i).to_string(), matrix_json(&self.gen[i]))).collect();
        json!({
            "schema": HOPF_ACTION,
            "name": self.name,
            "hopf": self.hopf_file,
            "voa": { "kind": "heisenberg", "rank": self.rank, "window": self.window },
            "gen_action": gen,
        })
    }
}

/// Parse an action; `hopf` is either an inline `hopf-algebra/v1` object or
/// a path resolved against `base_dir`.
pub fn action_from_json(v: &Value, base_dir: &Path) -> Result<ActionSpec> {
    expect_schema(v, HOPF_ACTION)?;
    let name = v.get("name").and_then(Value::as_str).unwrap_or("action").to_string();
    let hv = field(v, "", "hopf")?;
    let (hopf, hopf_file) = match hv {
        Value::String(path) => {
            let full: PathBuf = base_dir.join(path);
            let h = hopf_from_json(&read_json(&full)?).map_err(|e| err("/hopf", e))?;
            (h, path.clone())
        }
        Value::Object(_) => (hopf_from_json(hv).map_err(|e| err("/hopf", e))?, String::new()),
        _ => return Err(err("/hopf", "expected a file path or an inline Hopf algebra")),
    };
    let voa = field(v, "", "voa")?;
    let kind = as_str(field(voa, "/voa", "kind")?, "/voa/kind")?;
    if kind != "heisenberg" {
        return Err(err("/voa/kind", format!("unsupported VOA kind \"{kind}\"")));
    }
    let rank = as_usize(field(voa, "/voa", "rank")?, "/voa/rank")? as u32;
    let window = as_usize(field(voa, "/voa", "window")?, "/voa/window")?;
    if rank < 1 {
        return Err(err("/voa/rank", "rank must be at least 1"));
    }
    if window < 2 {
        return Err(err("/voa/window", "window must be at least 2"));
    }
    let gen = label_matrices(field(v, "", "gen_action")?, "/gen_action", &hopf, rank as usize, conductor(v)?.max(hopf.conductor()))?;
    Ok(ActionSpec { name, hopf: Arc::new(hopf), hopf_file, rank, window, gen })
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{cyclic, sweedler};

    #[test]
    fn hopf_round_trip() {
        for h in [cyclic(3), sweedler()] {
            let back = hopf_from_json(&hopf_to_json(&h, "x")).unwrap();
            assert_eq!(back, h);
        }
    }

    #[test]
    fn errors_point_at_fields() {
        let mut v = hopf_to_json(&cyclic(2), "Z/2");
        v["mul"][0][3] = json!("1/0");
        let e = hopf_from_json(&v).unwrap_err().to_string();
        assert!(e.contains("/mul/0/3"), "{e}");
        let mut v = hopf_to_json(&cyclic(2), "Z/2");
        v["schema"] = json!("hopf-algebra/v9");
        assert!(hopf_from_json(&v).unwrap_err().to_string().contains("/schema"));
    }

    #[test]
    fn voa_round_trip_preserves_modes() {
        let v = TruncatedVoa::heisenberg(1, 4).unwrap();
        let back = voa_from_json(&voa_to_json(&v, 4).unwrap()).unwrap();
        assert_eq!(back.labels(), v.labels());
        assert_eq!(back.central_charge().unwrap(), Scalar::one());
        let a = VoaVector::basis(v.generator(0));
        assert_eq!(back.mode(&a, -1, &a).unwrap(), v.mode(&a, -1, &a).unwrap());
        // pairs beyond the exported budget are unknown, not zero
        let top = VoaVector::basis(v.range(4).start);
        assert_eq!(back.mode(&top, 4, &a), Err(Error::Truncated));
    }
}
