//! Triple definition files.
//!
//! ```toml
//! name = "dual_dual_x"      # optional
//! max_degree = 2            # optional, lowers the degree cap for this triple
//!
//! [A]
//! dim = 2
//! unit = [1, 0]
//! mult = [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]]   # e_i e_j = Σ c e_k as [i, j, k, c]
//!
//! [B]
//! dim = 2
//! unit = [1, 0]
//! mult = [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]]
//!
//! [eps]
//! matrix = [[1, 0], [0, 1]]  # dim A rows, dim B columns; column j is ε(f_j)
//! ```
//!
//! Scalars are integers or strings `"p/q"`. Floats are rejected.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use sechh_core::algebra::FinAlgebra;
use sechh_core::linalg::SparseMat;
use sechh_core::triple::{make_triple, Triple, TripleError};
use sechh_core::Rat;
use sha2::{Digest, Sha256};
use toml::{Table, Value};

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("{0}")]
    Parse(String),
    #[error("invalid triple ({axiom}): {0}", axiom = .0.axiom())]
    Invalid(#[from] TripleError),
}

/// A parsed file: the triple plus file-level options.
#[derive(Clone, Debug)]
pub struct TripleSpec {
    pub triple: Triple,
    pub max_degree: Option<usize>,
}

/// Unvalidated contents, kept so that `validate` can report the axiom that
/// fails rather than a parse error.
#[derive(Clone, Debug)]
pub struct RawSpec {
    pub name: Option<String>,
    pub max_degree: Option<usize>,
    pub a: FinAlgebra,
    pub b: FinAlgebra,
    pub eps: SparseMat,
}

impl RawSpec {
    pub fn validate(self, fallback_name: &str) -> Result<TripleSpec, TripleError> {
        let name = self.name.unwrap_or_else(|| fallback_name.to_string());
        Ok(TripleSpec {
            triple: make_triple(self.a, self.b, self.eps)?.with_name(name),
            max_degree: self.max_degree,
        })
    }
}

fn perr(msg: impl Into<String>) -> SpecError {
    SpecError::Parse(msg.into())
}

fn rat(v: &Value, at: &str) -> Result<Rat, SpecError> {
    match v {
        Value::Integer(n) => Ok(Rat::from_int(*n)),
        Value::String(s) => s
            .parse::<Rat>()
            .map_err(|e| perr(format!("{at}: `{s}` is not an exact rational ({e})"))),
        Value::Float(f) => Err(perr(format!(
            "{at}: `{f}` is a decimal; write exact rationals as integers or \"p/q\""
        ))),
        other => Err(perr(format!("{at}: expected a rational, found `{other}`"))),
    }
}

fn index(v: &Value, at: &str, bound: usize) -> Result<usize, SpecError> {
    match v {
        Value::Integer(n) if *n >= 0 && (*n as u64) < bound as u64 => Ok(*n as usize),
        Value::Integer(n) => Err(perr(format!("{at}: index {n} out of range 0..{bound}"))),
        other => Err(perr(format!(
            "{at}: expected a basis index, found `{other}`"
        ))),
    }
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>, SpecError> {
    v.as_array()
        .ok_or_else(|| perr(format!("{at}: expected an array, found `{v}`")))
}

fn reject_unknown(t: &Table, allowed: &[&str], at: &str) -> Result<(), SpecError> {
    match t.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(perr(format!("{at}: unknown key `{k}`"))),
        None => Ok(()),
    }
}

fn algebra(root: &Table, key: &str) -> Result<FinAlgebra, SpecError> {
    let t = root
        .get(key)
        .ok_or_else(|| perr(format!("missing table [{key}]")))?
        .as_table()
        .ok_or_else(|| perr(format!("`{key}` must be a table")))?;
    reject_unknown(t, &["dim", "unit", "mult"], key)?;
    let dim = match t.get("dim") {
        Some(Value::Integer(n)) if *n >= 1 => *n as usize,
        Some(v) => {
            return Err(perr(format!(
                "{key}.dim: expected a positive integer, found `{v}`"
            )))
        }
        None => return Err(perr(format!("{key}.dim is missing"))),
    };
    let unit_v = array(
        t.get("unit")
            .ok_or_else(|| perr(format!("{key}.unit is missing")))?,
        &format!("{key}.unit"),
    )?;
    if unit_v.len() != dim {
        return Err(perr(format!(
            "{key}.unit has {} entries, expected {dim}",
            unit_v.len()
        )));
    }
    let unit = unit_v
        .iter()
        .enumerate()
        .map(|(i, v)| rat(v, &format!("{key}.unit[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let empty = Vec::new();
    let mult = match t.get("mult") {
        Some(v) => array(v, &format!("{key}.mult"))?,
        None => &empty,
    };
    let mut seen = BTreeSet::new();
    let mut constants = Vec::with_capacity(mult.len());
    for (n, entry) in mult.iter().enumerate() {
        let at = format!("{key}.mult[{n}]");
        let e = array(entry, &at)?;
        if e.len() != 4 {
            return Err(perr(format!(
                "{at}: expected [i, j, k, value], found `{entry}`"
            )));
        }
        let (i, j, k) = (
            index(&e[0], &at, dim)?,
            index(&e[1], &at, dim)?,
            index(&e[2], &at, dim)?,
        );
        if !seen.insert((i, j, k)) {
            return Err(perr(format!("{at}: duplicate entry for ({i}, {j}, {k})")));
        }
        constants.push((i, j, k, rat(&e[3], &at)?));
    }
    FinAlgebra::new(dim, constants, unit).map_err(|e| perr(format!("{key}: {e}")))
}

fn eps_matrix(root: &Table, da: usize, db: usize) -> Result<SparseMat, SpecError> {
    let t = root
        .get("eps")
        .ok_or_else(|| perr("missing table [eps]"))?
        .as_table()
        .ok_or_else(|| perr("`eps` must be a table"))?;
    reject_unknown(t, &["matrix"], "eps")?;
    let rows = array(
        t.get("matrix")
            .ok_or_else(|| perr("eps.matrix is missing"))?,
        "eps.matrix",
    )?;
    if rows.len() != da {
        return Err(perr(format!(
            "eps.matrix has {} rows, expected dim A = {da}",
            rows.len()
        )));
    }
    let mut dense = Vec::with_capacity(da);
    for (i, row) in rows.iter().enumerate() {
        let at = format!("eps.matrix[{i}]");
        let row = array(row, &at)?;
        if row.len() != db {
            return Err(perr(format!(
                "{at} has {} entries, expected dim B = {db}",
                row.len()
            )));
        }
        dense.push(
            row.iter()
                .enumerate()
                .map(|(j, v)| rat(v, &format!("{at}[{j}]")))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(SparseMat::from_dense_rows(&dense, db))
}

/// Parses without validating the triple axioms.
pub fn parse_raw(text: &str) -> Result<RawSpec, SpecError> {
    let root: Table = text
        .parse()
        .map_err(|e: toml::de::Error| perr(e.to_string().trim_end().to_string()))?;
    reject_unknown(&root, &["name", "max_degree", "A", "B", "eps"], "file")?;
    let name = match root.get("name") {
        Some(Value::String(s)) => Some(s.clone()),
        Some(v) => return Err(perr(format!("name: expected a string, found `{v}`"))),
        None => None,
    };
    let max_degree = match root.get("max_degree") {
        Some(Value::Integer(n)) if *n >= 0 => Some(*n as usize),
        Some(v) => {
            return Err(perr(format!(
                "max_degree: expected a non-negative integer, found `{v}`"
            )))
        }
        None => None,
    };
    let a = algebra(&root, "A")?;
    let b = algebra(&root, "B")?;
    let eps = eps_matrix(&root, a.dim(), b.dim())?;
    Ok(RawSpec {
        name,
        max_degree,
        a,
        b,
        eps,
    })
}

pub fn parse(text: &str, fallback_name: &str) -> Result<TripleSpec, SpecError> {
    Ok(parse_raw(text)?.validate(fallback_name)?)
}

/// Bare integers only when TOML can hold them.
fn lit(r: &Rat) -> String {
    if r.is_integer() && i64::try_from(r.numer()).is_ok() {
        r.to_string()
    } else {
        format!("\"{r}\"")
    }
}

fn write_algebra(out: &mut String, key: &str, a: &FinAlgebra) {
    let unit: Vec<String> = a.unit_dense().iter().map(lit).collect();
    let mut consts = a.structure_constants();
    consts.sort_by_key(|x| (x.0, x.1, x.2));
    let _ = writeln!(
        out,
        "[{key}]\ndim = {}\nunit = [{}]",
        a.dim(),
        unit.join(", ")
    );
    if consts.is_empty() {
        out.push_str("mult = []\n");
    } else {
        out.push_str("mult = [\n");
        for (i, j, k, c) in consts {
            let _ = writeln!(out, "  [{i}, {j}, {k}, {}],", lit(&c));
        }
        out.push_str("]\n");
    }
}

/// The mathematical content in canonical form: sorted structure constants,
/// zeros dropped, rationals in lowest terms.
fn canonical_body(t: &Triple) -> String {
    let mut out = String::new();
    write_algebra(&mut out, "A", t.a());
    out.push('\n');
    write_algebra(&mut out, "B", t.b());
    out.push_str("\n[eps]\nmatrix = [\n");
    for row in t.eps().matrix().to_dense_rows() {
        let row: Vec<String> = row.iter().map(lit).collect();
        let _ = writeln!(out, "  [{}],", row.join(", "));
    }
    out.push_str("]\n");
    out
}

/// Canonical file text. Re-parsing it yields a triple with the same hash.
pub fn export(t: &Triple, max_degree: Option<usize>) -> String {
    let mut out = String::new();
    if !t.name().is_empty() {
        let _ = writeln!(out, "name = {}", Value::String(t.name().to_string()));
    }
    if let Some(m) = max_degree {
        let _ = writeln!(out, "max_degree = {m}");
    }
    if !out.is_empty() {
        out.push('\n');
    }
    out + &canonical_body(t)
}

/// SHA-256 of the canonical body; the name and options do not contribute.
pub fn triple_hash(t: &Triple) -> String {
    hex::encode(Sha256::digest(canonical_body(t).as_bytes()))
}
