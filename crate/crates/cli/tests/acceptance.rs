//! Acceptance criteria, one line each. Every comparison is exact: integer
//! dimensions must be equal and rational matrices must vanish identically.

use std::process::Command;
use std::time::Instant;

use sechh_cli::spec_file::export;
use sechh_core::algebra::FinAlgebra;
use sechh_core::chain::{boundary, cyclic_operator, cyclic_relations, ChainSpace};
use sechh_core::differentials::omega;
use sechh_core::homology::{connes_segment_check, hc, hh, Limits};
use sechh_core::linalg::{SparseMat, SparseVec};
use sechh_core::triple::{catalog, catalog_all, make_triple, Triple, TripleError};
use sechh_core::verify::{verify_cor_hc1, verify_main, verify_reduction_bk};
use sechh_core::Rat;

const CHAIN_BOUND: usize = 40_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn dim(t: &Triple, n: usize) -> usize {
    ChainSpace::of(t, n).map(|c| c.dim()).unwrap_or(usize::MAX)
}

/// Commutative catalog triples with `dim A, dim B ≤ 3`.
fn battery() -> Vec<Triple> {
    catalog_all()
        .into_iter()
        .filter(|t| t.is_commutative() && t.a().dim() <= 3 && t.b().dim() <= 3)
        .collect()
}

fn boundary_squares_vanish() -> Outcome {
    let mut pairs = 0;
    for t in catalog_all() {
        for n in 1..=4 {
            if dim(&t, n + 1) > CHAIN_BOUND {
                break;
            }
            let dd = boundary(&t, n)
                .unwrap()
                .mul(&boundary(&t, n + 1).unwrap())
                .unwrap();
            if !dd.is_zero() {
                return Err(format!("{} n={n}: {} nonzero entries", t.name(), dd.nnz()));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (triple, n) pairs"))
}

fn cyclic_compatibility() -> Outcome {
    let mut pairs = 0;
    for t in catalog_all() {
        for m in 1..=5 {
            let d = dim(&t, m);
            if d > CHAIN_BOUND {
                break;
            }
            let one_minus = SparseMat::identity(d)
                .sub(&cyclic_operator(&t, m).unwrap())
                .unwrap();
            let image = boundary(&t, m).unwrap().mul(&one_minus).unwrap();
            let rel = cyclic_relations(&t, m - 1).unwrap();
            for (j, col) in image.columns().iter().enumerate() {
                if !rel.contains(col).unwrap() {
                    return Err(format!(
                        "{} m={m}: column {j} escapes Im(1-lambda)",
                        t.name()
                    ));
                }
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (triple, n) pairs"))
}

fn ground_field_reduction() -> Outcome {
    let l = Limits::default();
    let algebras = [
        ("Q", FinAlgebra::ground()),
        ("Q[x]/(x^2)", FinAlgebra::truncated_polynomial(2)),
        ("Q[x]/(x^3)", FinAlgebra::truncated_polynomial(3)),
        ("QxQ", FinAlgebra::product_of_fields(2)),
    ];
    let mut summary = Vec::new();
    for (label, a) in &algebras {
        let r = verify_reduction_bk(label, a, 3, &l).map_err(|e| format!("{label}: {e}"))?;
        if !r.passed() {
            let bad: Vec<&str> = r.failed_checks().map(|c| c.name.as_str()).collect();
            return Err(format!("{label}: {}", bad.join("; ")));
        }
        let hh: Vec<String> = (0..=3)
            .map(|n| r.dim_of(&format!("HH{n}")).unwrap().to_string())
            .collect();
        summary.push(format!("{label} HH=[{}]", hh.join(",")));
    }
    Ok(summary.join(" "))
}

fn hh0_law() -> Outcome {
    for t in catalog_all() {
        let got = hh(&t, 0, &Limits::default()).unwrap().dim;
        let want = t.a().dim() - t.a().commutator_subspace().dim();
        if got != want {
            return Err(format!("{}: {got} != {want}", t.name()));
        }
    }
    let m2 = hh(&catalog("mat2_k").unwrap(), 0, &Limits::default())
        .unwrap()
        .dim;
    if m2 != 1 {
        return Err(format!("mat2_k: HH0 = {m2}, expected 1"));
    }
    Ok("all catalog triples, mat2_k HH0 = 1".into())
}

fn hc0_is_hh0() -> Outcome {
    for t in catalog_all() {
        let (a, b) = (
            hc(&t, 0, &Limits::default()).unwrap().dim,
            hh(&t, 0, &Limits::default()).unwrap().dim,
        );
        if a != b {
            return Err(format!("{}: HC0 = {a}, HH0 = {b}", t.name()));
        }
    }
    Ok("all catalog triples".into())
}

fn on_battery(f: impl Fn(&Triple) -> Result<(), String>) -> Outcome {
    let ts = battery();
    for t in &ts {
        f(t).map_err(|e| format!("{}: {e}", t.name()))?;
    }
    Ok(format!("{} triples", ts.len()))
}

fn failed(r: &sechh_core::verify::TheoremReport) -> Result<(), String> {
    if r.passed() {
        Ok(())
    } else {
        Err(r
            .failed_checks()
            .map(|c| c.name.clone())
            .collect::<Vec<_>>()
            .join("; "))
    }
}

fn main_theorem() -> Outcome {
    on_battery(|t| failed(&verify_main(t).map_err(|e| e.to_string())?))
}

fn corollary() -> Outcome {
    on_battery(|t| failed(&verify_cor_hc1(t).map_err(|e| e.to_string())?))
}

fn connes_segment() -> Outcome {
    on_battery(|t| {
        let s = connes_segment_check(t).map_err(|e| e.to_string())?;
        if s.passed() {
            Ok(())
        } else {
            Err(format!("{s:?}"))
        }
    })
}

fn consequence_identities() -> Outcome {
    let mut instances = 0;
    for t in catalog_all().iter().filter(|t| t.is_commutative()) {
        let r = omega(t).unwrap().consequence_identities();
        if let Some((name, w)) = r.failure {
            return Err(format!("{}: {name}, residue {w:?}", t.name()));
        }
        instances += r.checked;
    }
    Ok(format!("{instances} instances"))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_sechh"))
            .args(["verify", "--catalog", "--all", "--format", "machine"])
            .output()
            .unwrap()
    };
    let (x, y) = (run(), run());
    if x.status.code() != Some(0) {
        return Err(format!("exit code {:?}", x.status.code()));
    }
    if x.stdout != y.stdout {
        return Err("machine reports differ".into());
    }
    Ok(format!("{} identical bytes", x.stdout.len()))
}

/// Sets `e_1 e_1 = 1` in `A` of `dual_dual_x`, so `ε(y)² = x² = 1 ≠ ε(y²) = 0`.
fn mutation_witness() -> Outcome {
    let base = catalog("dual_dual_x").unwrap();
    let a = base.a().with_structure_constant(1, 1, 0, Rat::one());
    let err = make_triple(a.clone(), base.b().clone(), base.eps().matrix().clone())
        .err()
        .ok_or("mutated triple validated")?;
    let TripleError::NotMultiplicative {
        pair: (j, k),
        discrepancy,
    } = &err
    else {
        return Err(format!("unexpected failure {err}"));
    };
    // Re-check by hand: ε(f_j f_k) − ε(f_j) ε(f_k).
    let eps = base.eps();
    let lhs = eps.apply_sparse(base.b().basis_product(*j, *k));
    let rhs = a.multiply_sparse(eps.image_of_basis(*j), eps.image_of_basis(*k));
    let recomputed = lhs.sub(&rhs).to_dense(a.dim());
    if &recomputed != discrepancy || SparseVec::from_dense(discrepancy).is_zero() {
        return Err(format!(
            "witness {discrepancy:?} does not re-check ({recomputed:?})"
        ));
    }

    // Through the binary: the same corruption in file form. `dual_dual_x`
    // has no `e_1 e_1` entry, so one is added at the top of A's table.
    let text = export(&base, None);
    let head = "[A]\ndim = 2\nunit = [1, 0]\nmult = [\n";
    assert!(text.contains(head));
    let corrupted = text.replacen(head, &format!("{head}  [1, 1, 0, 1],\n"), 1);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mutant.toml");
    std::fs::write(&path, corrupted).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_sechh"))
        .args(["validate", path.to_str().unwrap(), "--format", "machine"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())?;
    let w = &v["validation"]["witness"]["NotMultiplicative"]["discrepancy"];
    if o.status.code() != Some(3) || w.as_array().is_none_or(|a| a.len() != 2) {
        return Err(format!("validate exit {:?}, report {v}", o.status.code()));
    }
    let shown: Vec<String> = discrepancy.iter().map(Rat::to_string).collect();
    Ok(format!(
        "eps multiplicative fails on (f_{j}, f_{k}), discrepancy [{}]",
        shown.join(", ")
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (
            "d^2 = 0 (n <= 4, dim C_{n+1} <= 40000)",
            boundary_squares_vanish,
        ),
        (
            "cyclic compatibility (dim C_n <= 40000)",
            cyclic_compatibility,
        ),
        (
            "B = Q reduction to classical HH, HC, I/I^2",
            ground_field_reduction,
        ),
        ("HH0 = A/[A,A]", hh0_law),
        ("HC0 = HH0", hc0_is_hh0),
        ("HH1 = Omega1 = J/(J^2+J-hat) battery", main_theorem),
        ("HC1 = Omega1/d(1(x)A) battery", corollary),
        ("Connes segment exactness", connes_segment),
        ("consequence identities in Omega1", consequence_identities),
        ("deterministic machine report", determinism),
        ("mutation yields a re-checkable witness", mutation_witness),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS [exact] {name}: {detail} ({secs:.1}s)",
                i + 1
            ),
            Err(detail) => {
                failures += 1;
                println!(
                    "criterion {:>2} FAIL [exact] {name}: {detail} ({secs:.1}s)",
                    i + 1
                );
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
