//! Triples `(A, B, ε)`: an algebra `A`, a commutative algebra `B` and a unital
//! algebra morphism `ε: B → A` with central image.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgMorphism, AlgebraReport, FinAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{SparseMat, SparseVec};
use crate::rational::Rat;

/// Which axiom a candidate triple violates. Every variant carries enough data
/// to re-check the failure by hand.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum TripleError {
    #[error("algebra {which} is not a valid unital associative algebra: {report:?}")]
    InvalidAlgebra {
        which: &'static str,
        report: Box<AlgebraReport>,
    },
    #[error("B is not commutative: f_{} f_{} - f_{} f_{} = {discrepancy:?}", pair.0, pair.1, pair.1, pair.0)]
    BNonCommutative {
        pair: (usize, usize),
        discrepancy: Vec<Rat>,
    },
    #[error("eps matrix has shape {found:?}, expected {expected:?}")]
    EpsShape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("eps is not unital: eps(1_B) - 1_A = {discrepancy:?}")]
    NotUnital { discrepancy: Vec<Rat> },
    #[error("eps is not multiplicative on (f_{}, f_{}): eps(f f') - eps(f) eps(f') = {discrepancy:?}", pair.0, pair.1)]
    NotMultiplicative {
        pair: (usize, usize),
        discrepancy: Vec<Rat>,
    },
    #[error("eps(f_{}) is not central: it fails to commute with e_{}, eps(f) e - e eps(f) = {discrepancy:?}", pair.0, pair.1)]
    NotCentral {
        /// `(j, i)`: `ε(f_j)` against the basis element `e_i` of `A`.
        pair: (usize, usize),
        discrepancy: Vec<Rat>,
    },
}

impl TripleError {
    /// Short name of the violated axiom.
    pub fn axiom(&self) -> &'static str {
        match self {
            TripleError::InvalidAlgebra { .. } => "algebra axioms",
            TripleError::BNonCommutative { .. } => "B commutative",
            TripleError::EpsShape { .. } => "eps shape",
            TripleError::NotUnital { .. } => "eps unital",
            TripleError::NotMultiplicative { .. } => "eps multiplicative",
            TripleError::NotCentral { .. } => "eps central",
        }
    }
}

/// A validated triple. Fields are private so that every value in circulation
/// has passed [`make_triple`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    name: String,
    a: FinAlgebra,
    b: FinAlgebra,
    eps: AlgMorphism,
    commutative: bool,
}

/// Validates `(A, B, ε)`, where `eps` is the `dim A × dim B` matrix whose
/// column `j` holds the coordinates of `ε(f_j)`.
pub fn make_triple(
    a: FinAlgebra,
    b: FinAlgebra,
    eps: SparseMat,
) -> std::result::Result<Triple, TripleError> {
    let ra = a.validate();
    if !ra.is_valid() {
        return Err(TripleError::InvalidAlgebra {
            which: "A",
            report: Box::new(ra),
        });
    }
    let rb = b.validate();
    if !rb.is_valid() {
        return Err(TripleError::InvalidAlgebra {
            which: "B",
            report: Box::new(rb),
        });
    }
    if let Some((i, j)) = rb.noncommuting_pair {
        let disc = b.basis_product(i, j).sub(b.basis_product(j, i));
        return Err(TripleError::BNonCommutative {
            pair: (i, j),
            discrepancy: disc.to_dense(b.dim()),
        });
    }
    if eps.nrows() != a.dim() || eps.ncols() != b.dim() {
        return Err(TripleError::EpsShape {
            expected: (a.dim(), b.dim()),
            found: (eps.nrows(), eps.ncols()),
        });
    }
    let eps = AlgMorphism::new(eps);
    let unit_img = eps.apply_sparse(b.unit());
    if &unit_img != a.unit() {
        return Err(TripleError::NotUnital {
            discrepancy: unit_img.sub(a.unit()).to_dense(a.dim()),
        });
    }
    for j in 0..b.dim() {
        for k in 0..b.dim() {
            let lhs = eps.apply_sparse(b.basis_product(j, k));
            let rhs = a.multiply_sparse(eps.image_of_basis(j), eps.image_of_basis(k));
            if lhs != rhs {
                return Err(TripleError::NotMultiplicative {
                    pair: (j, k),
                    discrepancy: lhs.sub(&rhs).to_dense(a.dim()),
                });
            }
        }
    }
    for j in 0..b.dim() {
        let v = eps.image_of_basis(j);
        for i in 0..a.dim() {
            let e = SparseVec::unit(i);
            let diff = a.multiply_sparse(v, &e).sub(&a.multiply_sparse(&e, v));
            if !diff.is_zero() {
                return Err(TripleError::NotCentral {
                    pair: (j, i),
                    discrepancy: diff.to_dense(a.dim()),
                });
            }
        }
    }
    let commutative = ra.is_commutative();
    Ok(Triple {
        name: String::new(),
        a,
        b,
        eps,
        commutative,
    })
}

impl Triple {
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn a(&self) -> &FinAlgebra {
        &self.a
    }

    pub fn b(&self) -> &FinAlgebra {
        &self.b
    }

    pub fn eps(&self) -> &AlgMorphism {
        &self.eps
    }

    /// True iff `A` is commutative.
    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Fails with [`Error::NonCommutative`] unless `A` is commutative.
    pub fn require_commutative(&self) -> Result<()> {
        if self.commutative {
            Ok(())
        } else {
            Err(Error::NonCommutative)
        }
    }

    /// `ε(f_j)` in coordinates of `A`.
    pub fn eps_of_basis(&self, j: usize) -> &SparseVec {
        self.eps.image_of_basis(j)
    }

    /// `ε(β)` for a sparse vector `β ∈ B`.
    pub fn eps_of(&self, beta: &SparseVec) -> SparseVec {
        self.eps.apply_sparse(beta)
    }
}

/// Names accepted by [`catalog`], in a fixed order.
pub const CATALOG_NAMES: &[&str] = &[
    "k_k",
    "dual_k",
    "dual_dual_zero",
    "dual_dual_x",
    "prod_k",
    "trunc3_k",
    "dual_over_dual_id",
    "mat2_k",
    "trunc3_dual_x2",
    "dual_over_prod",
    "prod_over_prod_id",
    "trunc3_trunc3_x",
];

/// Builds the eps matrix from `ε(f_j)` columns given densely.
fn eps_from_columns(a_dim: usize, cols: &[&[i64]]) -> SparseMat {
    let cols = cols
        .iter()
        .map(|c| {
            assert_eq!(c.len(), a_dim);
            SparseVec::from_dense(&c.iter().map(|&x| Rat::from_int(x)).collect::<Vec<_>>())
        })
        .collect();
    SparseMat::from_columns(a_dim, cols)
}

/// The built-in example triples. Polynomial quotients use the monomial basis
/// `1, x, x², …` (and `y` for `B`); products of fields use orthogonal
/// idempotents; matrices use row-major matrix units.
///
/// - `k_k`: `A = B = ℚ`.
/// - `dual_k`: `A = ℚ[x]/(x²)`, `B = ℚ`.
/// - `dual_dual_zero`: `A = ℚ[x]/(x²)`, `B = ℚ[y]/(y²)`, `ε(y) = 0`.
/// - `dual_dual_x`: as above with `ε(y) = x`.
/// - `prod_k`: `A = ℚ × ℚ`, `B = ℚ`.
/// - `trunc3_k`: `A = ℚ[x]/(x³)`, `B = ℚ`.
/// - `dual_over_dual_id`: `A = B = ℚ[x]/(x²)`, `ε = id`.
/// - `mat2_k`: `A = M₂(ℚ)`, `B = ℚ`; not commutative.
/// - `trunc3_dual_x2`: `A = ℚ[x]/(x³)`, `B = ℚ[y]/(y²)`, `ε(y) = x²`.
/// - `dual_over_prod`: `A = ℚ[x]/(x²)`, `B = ℚ × ℚ`, `ε(p₀) = 1`, `ε(p₁) = 0`.
/// - `prod_over_prod_id`: `A = B = ℚ × ℚ`, `ε = id`.
/// - `trunc3_trunc3_x`: `A = B = ℚ[x]/(x³)`, `ε(y) = x`.
pub fn catalog(name: &str) -> Result<Triple> {
    use FinAlgebra as F;
    let (a, b, eps) = match name {
        "k_k" => (F::ground(), F::ground(), eps_from_columns(1, &[&[1]])),
        "dual_k" => (
            F::truncated_polynomial(2),
            F::ground(),
            eps_from_columns(2, &[&[1, 0]]),
        ),
        "dual_dual_zero" => (
            F::truncated_polynomial(2),
            F::truncated_polynomial(2),
            eps_from_columns(2, &[&[1, 0], &[0, 0]]),
        ),
        "dual_dual_x" | "dual_over_dual_id" => (
            F::truncated_polynomial(2),
            F::truncated_polynomial(2),
            eps_from_columns(2, &[&[1, 0], &[0, 1]]),
        ),
        "prod_k" => (
            F::product_of_fields(2),
            F::ground(),
            eps_from_columns(2, &[&[1, 1]]),
        ),
        "trunc3_k" => (
            F::truncated_polynomial(3),
            F::ground(),
            eps_from_columns(3, &[&[1, 0, 0]]),
        ),
        "mat2_k" => (
            F::matrix_algebra(2),
            F::ground(),
            eps_from_columns(4, &[&[1, 0, 0, 1]]),
        ),
        "trunc3_dual_x2" => (
            F::truncated_polynomial(3),
            F::truncated_polynomial(2),
            eps_from_columns(3, &[&[1, 0, 0], &[0, 0, 1]]),
        ),
        "dual_over_prod" => (
            F::truncated_polynomial(2),
            F::product_of_fields(2),
            eps_from_columns(2, &[&[1, 0], &[0, 0]]),
        ),
        "prod_over_prod_id" => (
            F::product_of_fields(2),
            F::product_of_fields(2),
            eps_from_columns(2, &[&[1, 0], &[0, 1]]),
        ),
        "trunc3_trunc3_x" => (
            F::truncated_polynomial(3),
            F::truncated_polynomial(3),
            eps_from_columns(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        ),
        other => return Err(Error::UnknownCatalog(other.to_string())),
    };
    Ok(make_triple(a, b, eps)?.with_name(name))
}

/// Every catalog triple, in [`CATALOG_NAMES`] order.
pub fn catalog_all() -> Vec<Triple> {
    CATALOG_NAMES
        .iter()
        .map(|n| catalog(n).expect("catalog entries validate"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn make_triple_examples() {
        let t = make_triple(
            FinAlgebra::truncated_polynomial(2),
            FinAlgebra::ground(),
            eps_from_columns(2, &[&[1, 0]]),
        )
        .unwrap();
        assert!(t.is_commutative());

        let t = make_triple(
            FinAlgebra::truncated_polynomial(2),
            FinAlgebra::truncated_polynomial(2),
            eps_from_columns(2, &[&[1, 0], &[0, 1]]),
        )
        .unwrap();
        assert!(t.is_commutative());

        // ε(y) = E12 in M2: E12 is not central.
        let err = make_triple(
            FinAlgebra::matrix_algebra(2),
            FinAlgebra::truncated_polynomial(2),
            eps_from_columns(4, &[&[1, 0, 0, 1], &[0, 1, 0, 0]]),
        )
        .unwrap_err();
        let TripleError::NotCentral { pair, discrepancy } = &err else {
            panic!("expected a centrality failure, got {err:?}");
        };
        assert_eq!(pair.0, 1);
        let m = FinAlgebra::matrix_algebra(2);
        let e12 = SparseVec::unit(1).to_dense(4);
        let ei = SparseVec::unit(pair.1).to_dense(4);
        let lhs = m.multiply(&e12, &ei).unwrap();
        let rhs = m.multiply(&ei, &e12).unwrap();
        let diff: Vec<Rat> = lhs.iter().zip(&rhs).map(|(p, q)| p - q).collect();
        assert_eq!(&diff, discrepancy);
        assert_eq!(err.axiom(), "eps central");
    }

    #[test]
    fn non_multiplicative_eps_rejected() {
        // ε(y) = 1 would need 1 = ε(y)² = ε(y²) = 0.
        let err = make_triple(
            FinAlgebra::truncated_polynomial(2),
            FinAlgebra::truncated_polynomial(2),
            eps_from_columns(2, &[&[1, 0], &[1, 0]]),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            TripleError::NotMultiplicative { pair: (1, 1), .. }
        ));
    }

    #[test]
    fn noncommutative_b_rejected() {
        let err = make_triple(
            FinAlgebra::matrix_algebra(2),
            FinAlgebra::matrix_algebra(2),
            SparseMat::identity(4),
        )
        .unwrap_err();
        assert!(matches!(err, TripleError::BNonCommutative { .. }));
    }

    #[test]
    fn ground_b_eps_is_forced() {
        // B = ℚ: only the unit column is accepted.
        for t in catalog_all().iter().filter(|t| t.b().dim() == 1) {
            let a = t.a().clone();
            assert!(make_triple(
                a.clone(),
                FinAlgebra::ground(),
                SparseMat::from_columns(a.dim(), vec![a.unit().clone()])
            )
            .is_ok());
            for k in 0..a.dim() {
                let bumped = a.unit().add(&SparseVec::unit(k));
                let err = make_triple(
                    a.clone(),
                    FinAlgebra::ground(),
                    SparseMat::from_columns(a.dim(), vec![bumped]),
                )
                .unwrap_err();
                assert!(matches!(err, TripleError::NotUnital { .. }));
            }
        }
    }

    #[test]
    fn catalog_examples() {
        assert_eq!(catalog("k_k").unwrap().a().dim(), 1);
        let t = catalog("dual_dual_x").unwrap();
        assert_eq!(t.eps_of_basis(0), &SparseVec::unit(0));
        assert_eq!(t.eps_of_basis(1), &SparseVec::unit(1));
        assert!(!catalog("mat2_k").unwrap().is_commutative());
        assert!(matches!(catalog("nope"), Err(Error::UnknownCatalog(_))));
        let all = catalog_all();
        assert_eq!(all.len(), CATALOG_NAMES.len());
        for (t, n) in all.iter().zip(CATALOG_NAMES) {
            assert_eq!(t.name(), *n);
        }
        let x2 = catalog("trunc3_dual_x2").unwrap();
        assert_eq!(
            x2.eps_of(&SparseVec::unit(1)),
            SparseVec::from_entries([(2, r(1))])
        );
    }
}
