//! The sparse engine against the dense reference code.

use sechh_core::algebra::FinAlgebra;
use sechh_core::chain::{boundary, ChainSpace};
use sechh_core::differentials::omega;
use sechh_core::homology::{hc, hh, Limits};
use sechh_core::linalg::rank;
use sechh_core::oracles::{classical_hc, classical_hh, dense_rank, secondary_hh1_dim};
use sechh_core::triple::catalog_all;
use sechh_core::verify::verify_reduction_bk;

#[test]
fn boundary_ranks_match_dense_elimination() {
    let mut compared = 0;
    for t in catalog_all() {
        for n in 1..=4 {
            let dim = ChainSpace::of(&t, n).unwrap().dim();
            if dim > 2000 {
                break;
            }
            let d = boundary(&t, n).unwrap();
            let dense: Vec<Vec<_>> = d
                .to_dense_rows()
                .iter()
                .map(|row| row.iter().map(|r| r.to_big()).collect())
                .collect();
            assert_eq!(rank(&d), dense_rank(&dense), "{} n={n}", t.name());
            compared += 1;
        }
    }
    assert!(compared >= 24);
}

#[test]
fn hh1_matches_the_written_out_low_degree_complex() {
    for t in catalog_all() {
        let ours = hh(&t, 1, &Limits::default()).unwrap().dim;
        assert_eq!(ours, secondary_hh1_dim(&t).unwrap(), "{}", t.name());
    }
}

#[test]
fn ground_field_b_reduces_to_classical_invariants() {
    let l = Limits::default();
    let algebras = [
        ("Q", FinAlgebra::ground()),
        ("dual", FinAlgebra::truncated_polynomial(2)),
        ("trunc3", FinAlgebra::truncated_polynomial(3)),
        ("prod", FinAlgebra::product_of_fields(2)),
    ];
    for (label, a) in &algebras {
        let r = verify_reduction_bk(label, a, 3, &l).unwrap();
        assert!(r.passed(), "{label}: {:#?}", r.checks);
    }
    let m2 = FinAlgebra::matrix_algebra(2);
    assert!(verify_reduction_bk("M2", &m2, 2, &l).unwrap().passed());
}

#[test]
fn classical_truncated_polynomial_values() {
    // HH_n(ℚ[x]/(x^m)) has dimension m in degree 0 and m − 1 above.
    for m in 2..=4 {
        let a = FinAlgebra::truncated_polynomial(m);
        assert_eq!(classical_hh(&a, 0).unwrap(), m);
        for n in 1..=3 {
            assert_eq!(classical_hh(&a, n).unwrap(), m - 1);
        }
        assert_eq!(classical_hc(&a, 0).unwrap(), m);
    }
}

#[test]
fn hc1_equals_omega_modulo_exact_forms() {
    for t in catalog_all().into_iter().filter(|t| t.is_commutative()) {
        let p = omega(&t).unwrap();
        let hc1 = hc(&t, 1, &Limits::default()).unwrap().dim;
        assert_eq!(hc1 + p.d_one_a_subspace().dim(), p.dim(), "{}", t.name());
    }
}
