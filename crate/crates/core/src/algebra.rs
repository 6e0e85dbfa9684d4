//! Finite-dimensional unital associative algebras over ℚ given by structure
//! constants, and linear maps between them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{SparseMat, SparseVec, Subspace};
use crate::rational::Rat;

/// `e_i · e_j = Σ_k c[i][j][k] e_k`, with an explicit unit vector.
///
/// Construction does not validate the axioms; call [`FinAlgebra::validate`]
/// (triples always do).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAlgebra {
    dim: usize,
    products: Vec<SparseVec>,
    unit: SparseVec,
}

/// Outcome of [`FinAlgebra::validate`]; each failing axiom carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub associativity: Option<AssociativityWitness>,
    pub unit: Option<UnitWitness>,
    pub noncommuting_pair: Option<(usize, usize)>,
}

/// `(e_i e_j) e_k ≠ e_i (e_j e_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssociativityWitness {
    pub triple: (usize, usize, usize),
    pub left: Vec<Rat>,
    pub right: Vec<Rat>,
}

/// `u · e_i ≠ e_i` (left) or `e_i · u ≠ e_i` (right).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitWitness {
    pub basis: usize,
    pub left_side: bool,
    pub product: Vec<Rat>,
}

impl AlgebraReport {
    pub fn is_associative(&self) -> bool {
        self.associativity.is_none()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_none()
    }

    pub fn is_commutative(&self) -> bool {
        self.noncommuting_pair.is_none()
    }

    pub fn is_valid(&self) -> bool {
        self.is_associative() && self.is_unital()
    }
}

impl FinAlgebra {
    /// Sparse structure constants `(i, j, k, c)`; repeated coordinates add up.
    pub fn new<I>(dim: usize, constants: I, unit: Vec<Rat>) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Rat)>,
    {
        if unit.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: unit.len(),
            });
        }
        let mut buckets: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Parse(format!(
                    "structure constant index ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            buckets[i * dim + j].push((k, c));
        }
        Ok(FinAlgebra {
            dim,
            products: buckets.into_iter().map(SparseVec::from_entries).collect(),
            unit: SparseVec::from_dense(&unit),
        })
    }

    /// The ground field ℚ.
    pub fn ground() -> Self {
        Self::truncated_polynomial(1)
    }

    /// ℚ[x]/(x^n) on the basis 1, x, …, x^{n-1}.
    pub fn truncated_polynomial(n: usize) -> Self {
        assert!(n >= 1);
        let consts = (0..n).flat_map(|i| {
            (0..n)
                .filter(move |j| i + j < n)
                .map(move |j| (i, j, i + j, Rat::one()))
        });
        let mut unit = vec![Rat::zero(); n];
        unit[0] = Rat::one();
        Self::new(n, consts, unit).expect("well-formed table")
    }

    /// ℚ^n with the basis of orthogonal idempotents.
    pub fn product_of_fields(n: usize) -> Self {
        let consts = (0..n).map(|i| (i, i, i, Rat::one()));
        Self::new(n, consts, vec![Rat::one(); n]).expect("well-formed table")
    }

    /// n×n matrices on the matrix units E_{rc}, ordered row-major.
    pub fn matrix_algebra(n: usize) -> Self {
        let idx = |r: usize, c: usize| r * n + c;
        let mut consts = Vec::new();
        for r in 0..n {
            for c in 0..n {
                for d in 0..n {
                    consts.push((idx(r, c), idx(c, d), idx(r, d), Rat::one()));
                }
            }
        }
        let mut unit = vec![Rat::zero(); n * n];
        for r in 0..n {
            unit[idx(r, r)] = Rat::one();
        }
        Self::new(n * n, consts, unit).expect("well-formed table")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn unit_dense(&self) -> Vec<Rat> {
        self.unit.to_dense(self.dim)
    }

    /// `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rat {
        self.basis_product(i, j).get(k)
    }

    /// Nonzero structure constants `(i, j, k, c)` in lexicographic order.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Rat)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.basis_product(i, j).iter() {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    /// Replaces one structure constant.
    pub fn with_structure_constant(&self, i: usize, j: usize, k: usize, c: Rat) -> Self {
        let mut out = self.clone();
        let old = self.structure_constant(i, j, k);
        let delta = SparseVec::from_entries([(k, c - old)]);
        out.products[i * self.dim + j] = self.basis_product(i, j).add(&delta);
        out
    }

    pub fn multiply_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a * b;
                for (k, c) in self.basis_product(*i, *j).iter() {
                    terms.push((*k, &ab * c));
                }
            }
        }
        SparseVec::from_entries(terms)
    }

    fn check_len(&self, v: &[Rat]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply(&self, x: &[Rat], y: &[Rat]) -> Result<Vec<Rat>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let p = self.multiply_sparse(&SparseVec::from_dense(x), &SparseVec::from_dense(y));
        Ok(p.to_dense(self.dim))
    }

    pub fn validate(&self) -> AlgebraReport {
        let d = self.dim;
        let mut associativity = None;
        'outer: for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let left = self.multiply_sparse(ij, &SparseVec::unit(k));
                    let right = self.multiply_sparse(&SparseVec::unit(i), self.basis_product(j, k));
                    if left != right {
                        associativity = Some(AssociativityWitness {
                            triple: (i, j, k),
                            left: left.to_dense(d),
                            right: right.to_dense(d),
                        });
                        break 'outer;
                    }
                }
            }
        }
        let mut unit = None;
        for i in 0..d {
            let e = SparseVec::unit(i);
            let l = self.multiply_sparse(&self.unit, &e);
            if l != e {
                unit = Some(UnitWitness {
                    basis: i,
                    left_side: true,
                    product: l.to_dense(d),
                });
                break;
            }
            let r = self.multiply_sparse(&e, &self.unit);
            if r != e {
                unit = Some(UnitWitness {
                    basis: i,
                    left_side: false,
                    product: r.to_dense(d),
                });
                break;
            }
        }
        let noncommuting_pair = (0..d)
            .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
            .find(|&(i, j)| self.basis_product(i, j) != self.basis_product(j, i));
        AlgebraReport {
            associativity,
            unit,
            noncommuting_pair,
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.validate().is_commutative()
    }

    pub fn is_central_sparse(&self, v: &SparseVec) -> bool {
        (0..self.dim).all(|i| {
            let e = SparseVec::unit(i);
            self.multiply_sparse(v, &e) == self.multiply_sparse(&e, v)
        })
    }

    /// `v · e_i = e_i · v` for every basis element.
    pub fn is_central(&self, v: &[Rat]) -> Result<bool> {
        self.check_len(v)?;
        Ok(self.is_central_sparse(&SparseVec::from_dense(v)))
    }

    /// `[A, A] = span{e_i e_j − e_j e_i}`.
    pub fn commutator_subspace(&self) -> Subspace {
        let comms: Vec<SparseVec> = (0..self.dim)
            .flat_map(|i| (i + 1..self.dim).map(move |j| (i, j)))
            .map(|(i, j)| self.basis_product(i, j).sub(self.basis_product(j, i)))
            .collect();
        Subspace::span(self.dim, &comms).expect("commutators live in A")
    }

    /// `A ⊗ B` on the basis `e_i ⊗ f_j` at index `i · dim B + j`, with the
    /// componentwise product.
    pub fn tensor(&self, other: &FinAlgebra) -> FinAlgebra {
        let (da, db) = (self.dim, other.dim);
        let mut consts = Vec::new();
        for i1 in 0..da {
            for j1 in 0..db {
                for i2 in 0..da {
                    for j2 in 0..db {
                        for (ka, ca) in self.basis_product(i1, i2).iter() {
                            for (kb, cb) in other.basis_product(j1, j2).iter() {
                                consts.push((i1 * db + j1, i2 * db + j2, ka * db + kb, ca * cb));
                            }
                        }
                    }
                }
            }
        }
        let mut unit = Vec::new();
        for (ka, ca) in self.unit.iter() {
            for (kb, cb) in other.unit.iter() {
                unit.push((ka * db + kb, ca * cb));
            }
        }
        FinAlgebra::new(
            da * db,
            consts,
            SparseVec::from_entries(unit).to_dense(da * db),
        )
        .expect("tensor indices are in range")
    }
}

/// A linear map `source → target` given by its `target.dim × source.dim`
/// matrix. Whether it is an algebra morphism is checked by the triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgMorphism {
    matrix: SparseMat,
}

impl AlgMorphism {
    pub fn new(matrix: SparseMat) -> Self {
        AlgMorphism { matrix }
    }

    /// From dense rows (`target.dim` rows of `source.dim` entries).
    pub fn from_rows(rows: &[Vec<Rat>], source_dim: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != source_dim) {
            return Err(Error::DimensionMismatch {
                expected: source_dim,
                found: bad.len(),
            });
        }
        Ok(AlgMorphism {
            matrix: SparseMat::from_dense_rows(rows, source_dim),
        })
    }

    pub fn matrix(&self) -> &SparseMat {
        &self.matrix
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Image of the source basis element `f_j`.
    pub fn image_of_basis(&self, j: usize) -> &SparseVec {
        self.matrix.col(j)
    }

    pub fn apply_sparse(&self, v: &SparseVec) -> SparseVec {
        self.matrix
            .mul_vec(v)
            .expect("vector length checked by caller")
    }

    pub fn apply(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        self.matrix.mul_dense(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn e(d: usize, i: usize) -> Vec<Rat> {
        SparseVec::unit(i).to_dense(d)
    }

    #[test]
    fn multiply_examples() {
        let dual = FinAlgebra::truncated_polynomial(2);
        let y = vec![r(3), r(-2)];
        assert_eq!(dual.multiply(&dual.unit_dense(), &y).unwrap(), y);
        assert_eq!(dual.multiply(&e(2, 1), &e(2, 1)).unwrap(), vec![r(0), r(0)]);
        let prod = FinAlgebra::product_of_fields(2);
        assert_eq!(prod.multiply(&e(2, 0), &e(2, 1)).unwrap(), vec![r(0), r(0)]);
        assert!(matches!(
            dual.multiply(&[r(1)], &y),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn validate_examples() {
        let rep = FinAlgebra::truncated_polynomial(2).validate();
        assert!(rep.is_valid() && rep.is_commutative());

        let rep = FinAlgebra::matrix_algebra(2).validate();
        assert!(rep.is_valid());
        let (i, j) = rep.noncommuting_pair.expect("M2 is not commutative");
        let m = FinAlgebra::matrix_algebra(2);
        assert_ne!(m.basis_product(i, j), m.basis_product(j, i));
    }

    #[test]
    fn corrupted_dual_numbers_are_caught() {
        // x·x = 1 instead of 0: still associative (it is ℚ[x]/(x²-1)), so
        // corrupt the unit row instead to break the axioms.
        let dual = FinAlgebra::truncated_polynomial(2);
        let bad = dual.with_structure_constant(1, 1, 0, r(1));
        assert!(bad.validate().is_valid());
        let bad = dual.with_structure_constant(0, 1, 0, r(1));
        let rep = bad.validate();
        assert!(!rep.is_valid());
        // Re-check the witness directly.
        if let Some(w) = &rep.associativity {
            let (i, j, k) = w.triple;
            let left = bad
                .multiply(&bad.multiply(&e(2, i), &e(2, j)).unwrap(), &e(2, k))
                .unwrap();
            let right = bad
                .multiply(&e(2, i), &bad.multiply(&e(2, j), &e(2, k)).unwrap())
                .unwrap();
            assert_ne!(left, right);
        }
        if let Some(w) = &rep.unit {
            let p = if w.left_side {
                bad.multiply(&bad.unit_dense(), &e(2, w.basis)).unwrap()
            } else {
                bad.multiply(&e(2, w.basis), &bad.unit_dense()).unwrap()
            };
            assert_ne!(p, e(2, w.basis));
        }
    }

    #[test]
    fn centrality() {
        let m = FinAlgebra::matrix_algebra(2);
        assert!(m.is_central(&m.unit_dense()).unwrap());
        assert!(!m.is_central(&e(4, 1)).unwrap());
        let t = FinAlgebra::truncated_polynomial(3);
        assert!(t.is_central(&[r(2), r(-1), r(5)]).unwrap());
    }

    #[test]
    fn commutator_of_matrices_is_trace_zero() {
        let m = FinAlgebra::matrix_algebra(2);
        let c = m.commutator_subspace();
        // trace-zero matrices: E12, E21, E11 − E22
        let trace_zero =
            Subspace::span_dense(4, &[e(4, 1), e(4, 2), vec![r(1), r(0), r(0), r(-1)]]).unwrap();
        assert_eq!(c, trace_zero);
        assert!(FinAlgebra::truncated_polynomial(3)
            .commutator_subspace()
            .is_zero());
        assert!(FinAlgebra::ground().commutator_subspace().is_zero());
    }

    #[test]
    fn tensor_examples() {
        let a = FinAlgebra::truncated_polynomial(2);
        let b = FinAlgebra::product_of_fields(3);
        let t = a.tensor(&b);
        assert_eq!(t.dim(), 6);
        assert!(t.validate().is_valid());
        assert!(t.validate().is_commutative());
        assert_eq!(FinAlgebra::ground().tensor(&b), b);
        let mt = FinAlgebra::matrix_algebra(2).tensor(&a);
        assert!(mt.validate().is_valid());
    }

    fn arb_vec(d: usize) -> impl Strategy<Value = Vec<Rat>> {
        proptest::collection::vec((-4i64..=4, 1i64..=3), d)
            .prop_map(|v| v.into_iter().map(|(n, q)| Rat::new(n, q)).collect())
    }

    proptest! {
        #[test]
        fn multiply_is_bilinear(
            x in arb_vec(4), x2 in arb_vec(4), y in arb_vec(4),
            a in -3i64..=3, b in -3i64..=3,
        ) {
            let m = FinAlgebra::matrix_algebra(2);
            let comb: Vec<Rat> = x.iter().zip(&x2).map(|(p, q)| r(a) * p + r(b) * q).collect();
            let lhs = m.multiply(&comb, &y).unwrap();
            let px = m.multiply(&x, &y).unwrap();
            let px2 = m.multiply(&x2, &y).unwrap();
            let rhs: Vec<Rat> = px.iter().zip(&px2).map(|(p, q)| r(a) * p + r(b) * q).collect();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn commutative_means_everything_central(v in arb_vec(3)) {
            for alg in [FinAlgebra::truncated_polynomial(3), FinAlgebra::product_of_fields(3)] {
                prop_assert!(alg.validate().is_commutative());
                prop_assert!(alg.is_central(&v).unwrap());
                prop_assert!(alg.commutator_subspace().is_zero());
            }
        }
    }
}
