//! Reports printed by every subcommand. The machine form is pretty-printed
//! JSON with a fixed field order and no timing, so identical inputs give
//! byte-identical output.

use std::fmt::Write as _;
use std::time::Duration;

use sechh_core::linalg::SparseVec;
use sechh_core::triple::{Triple, TripleError};
use sechh_core::verify::{Status, TheoremReport};
use serde::Serialize;

use crate::spec_file::triple_hash;

#[derive(Clone, Debug, Serialize)]
pub struct TripleInfo {
    pub name: String,
    pub hash: String,
    pub dim_a: usize,
    pub dim_b: usize,
    pub commutative: bool,
}

impl TripleInfo {
    pub fn of(t: &Triple) -> Self {
        TripleInfo {
            name: t.name().to_string(),
            hash: triple_hash(t),
            dim_a: t.a().dim(),
            dim_b: t.b().dim(),
            commutative: t.is_commutative(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Validation {
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axiom: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    /// The failing axiom with its witness data.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<TripleError>,
}

/// One row of a dimension table.
#[derive(Clone, Debug, Serialize)]
pub struct DimRow {
    pub triple: String,
    pub flavor: String,
    pub degree: usize,
    pub dim: usize,
    /// Value from the slow reference code, when requested and available.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<SparseVec>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub requested: Vec<String>,
    pub triples: Vec<TripleInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<Validation>,
    pub dimensions: Vec<DimRow>,
    pub theorems: Vec<TheoremReport>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            requested: Vec::new(),
            triples: Vec::new(),
            validation: None,
            dimensions: Vec::new(),
            theorems: Vec::new(),
            warnings: Vec::new(),
            error: None,
            elapsed: None,
        }
    }

    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut o = String::new();
        let _ = writeln!(o, "{} {} {}", self.tool, self.version, self.command);
        if !self.requested.is_empty() {
            let _ = writeln!(o, "requested: {}", self.requested.join(", "));
        }
        for t in &self.triples {
            let _ = writeln!(
                o,
                "triple {}: dim A = {}, dim B = {}, {}, sha256 {}",
                t.name,
                t.dim_a,
                t.dim_b,
                if t.commutative {
                    "commutative"
                } else {
                    "non-commutative"
                },
                t.hash
            );
        }
        if let Some(v) = &self.validation {
            if v.valid {
                o.push_str("valid\n");
            } else {
                let _ = writeln!(
                    o,
                    "INVALID ({}): {}",
                    v.axiom.as_deref().unwrap_or("?"),
                    v.message.as_deref().unwrap_or("")
                );
            }
        }
        if !self.dimensions.is_empty() {
            let _ = writeln!(
                o,
                "{:<20} {:<28} {:>6} {:>6}",
                "triple", "object", "degree", "dim"
            );
            for r in &self.dimensions {
                let _ = write!(
                    o,
                    "{:<20} {:<28} {:>6} {:>6}",
                    r.triple, r.flavor, r.degree, r.dim
                );
                if let Some(x) = r.oracle {
                    let _ = write!(o, "  (oracle {x})");
                }
                o.push('\n');
                for rep in r.representatives.iter().flatten() {
                    let _ = writeln!(o, "    rep {}", fmt_vec(rep));
                }
            }
        }
        for t in &self.theorems {
            let status = match t.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            let _ = writeln!(o, "{status} {:<12} {}", t.theorem.as_str(), t.triple);
            if !t.dims.is_empty() && t.status != Status::Skipped {
                let dims: Vec<String> = t
                    .dims
                    .iter()
                    .map(|d| format!("{}={}", d.object, d.dim))
                    .collect();
                let _ = writeln!(o, "    dims: {}", dims.join(", "));
            }
            for c in &t.checks {
                if !c.passed {
                    let tag = if c.required {
                        "failed"
                    } else {
                        "info: does not hold"
                    };
                    let _ = writeln!(o, "    {tag}: {}", c.name);
                    if let Some(w) = &c.witness {
                        let _ = writeln!(o, "      witness {}", fmt_vec(w));
                    }
                }
            }
            for n in &t.notes {
                let _ = writeln!(o, "    note: {n}");
            }
        }
        if !self.theorems.is_empty() {
            let count = |s| self.theorems.iter().filter(|t| t.status == s).count();
            let _ = writeln!(
                o,
                "{} passed, {} failed, {} skipped",
                count(Status::Pass),
                count(Status::Fail),
                count(Status::Skipped)
            );
        }
        for w in &self.warnings {
            let _ = writeln!(o, "warning: {w}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(o, "error ({}): {}", e.kind, e.message);
        }
        if let Some(d) = self.elapsed {
            let _ = writeln!(o, "elapsed: {:.3}s", d.as_secs_f64());
        }
        o
    }
}

fn fmt_vec(v: &SparseVec) -> String {
    let terms: Vec<String> = v.iter().map(|(i, c)| format!("{c}·[{i}]")).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
