//! The kernel `J` of `m: A ⊗ A ⊗ B → A`, `a ⊗ b ⊗ α ↦ abε(α)`, its square
//! `J²`, the twist subspace `Ĵ`, and the quotient `J/(J² + Ĵ)`.
//!
//! `Ĵ` is generated by `g(α) = 2(1⊗1⊗α) − ε(α)⊗1⊗1 − 1⊗ε(α)⊗1`. Two readings
//! are computed: the plain ℚ-span of the `g(f_α)`, and its A-bimodule
//! closure, spanned by `(e_m⊗e_n⊗1)·g(f_α)`. The quotient uses the closure;
//! the span reading is kept for comparison.

use serde::Serialize;

use crate::algebra::FinAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Quotient, SparseMat, SparseVec, Subspace};
use crate::rational::Rat;
use crate::triple::Triple;

#[derive(Clone, Debug)]
pub struct KernelData {
    triple: Triple,
    /// `A ⊗ A ⊗ B` on the basis `e_i ⊗ e_j ⊗ f_k` at `(i·dim A + j)·dim B + k`.
    ring: FinAlgebra,
    m: SparseMat,
    j: Subspace,
    jsq: Subspace,
    jhat_span: Subspace,
    jhat: Subspace,
    quotient: Quotient,
    span_reading_dim: usize,
}

/// Dimensions of every object in [`KernelData`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelDims {
    pub ambient: usize,
    pub j: usize,
    pub j_squared: usize,
    pub j_hat_span: usize,
    pub j_hat_bimodule: usize,
    pub sum_with_span: usize,
    pub sum_with_bimodule: usize,
    /// `dim J/(J² + span Ĵ)`.
    pub quotient_span_reading: usize,
    /// `dim J/(J² + A·Ĵ·A)`, the value used by the isomorphism checks.
    pub quotient: usize,
}

impl KernelDims {
    pub fn readings_agree(&self) -> bool {
        self.sum_with_span == self.sum_with_bimodule
    }
}

fn pure(t: &Triple, x: &SparseVec, y: &SparseVec, z: &SparseVec) -> SparseVec {
    let (da, db) = (t.a().dim(), t.b().dim());
    let mut terms = Vec::with_capacity(x.nnz() * y.nnz() * z.nnz());
    for (i, ci) in x.iter() {
        for (j, cj) in y.iter() {
            let cij = ci * cj;
            for (k, ck) in z.iter() {
                terms.push(((i * da + j) * db + k, &cij * ck));
            }
        }
    }
    SparseVec::from_entries(terms)
}

/// `x ⊗ y ⊗ z` in `A ⊗ A ⊗ B` coordinates.
pub fn pure_tensor(t: &Triple, x: &SparseVec, y: &SparseVec, z: &SparseVec) -> SparseVec {
    pure(t, x, y, z)
}

/// The matrix of `m`, `dim A × (dim A)²(dim B)`.
pub fn multiplication_matrix(t: &Triple) -> SparseMat {
    let (da, db) = (t.a().dim(), t.b().dim());
    let a = t.a();
    SparseMat::from_column_fn(da, da * da * db, |c| {
        let (i, j, k) = (c / (da * db), (c / db) % da, c % db);
        a.multiply_sparse(a.basis_product(i, j), t.eps_of_basis(k))
    })
}

/// `g(β) = 2(1⊗1⊗β) − ε(β)⊗1⊗1 − 1⊗ε(β)⊗1`.
pub fn jhat_generator(t: &Triple, beta: &SparseVec) -> SparseVec {
    let one_a = t.a().unit();
    let eb = t.eps_of(beta);
    pure(t, one_a, one_a, beta)
        .scale(&Rat::from_int(2))
        .sub(&pure(t, &eb, one_a, t.b().unit()))
        .sub(&pure(t, one_a, &eb, t.b().unit()))
}

/// `1⊗a⊗α − aε(α)⊗1⊗1`, an element of `J`.
pub fn j_generator(t: &Triple, alpha: &[Rat], a: &[Rat]) -> Result<SparseVec> {
    if alpha.len() != t.b().dim() {
        return Err(Error::DimensionMismatch {
            expected: t.b().dim(),
            found: alpha.len(),
        });
    }
    if a.len() != t.a().dim() {
        return Err(Error::DimensionMismatch {
            expected: t.a().dim(),
            found: a.len(),
        });
    }
    let (alpha, a) = (SparseVec::from_dense(alpha), SparseVec::from_dense(a));
    Ok(j_generator_sparse(t, &alpha, &a))
}

pub fn j_generator_sparse(t: &Triple, alpha: &SparseVec, a: &SparseVec) -> SparseVec {
    let one_a = t.a().unit();
    let ae = t.a().multiply_sparse(a, &t.eps_of(alpha));
    let v = pure(t, one_a, a, alpha).sub(&pure(t, &ae, one_a, t.b().unit()));
    debug_assert!(multiplication_matrix(t).mul_vec(&v).unwrap().is_zero());
    v
}

/// Builds `J`, `J²`, both readings of `Ĵ` and the quotient. Requires a
/// commutative triple.
pub fn kernel_data(t: &Triple) -> Result<KernelData> {
    t.require_commutative()?;
    let (da, db) = (t.a().dim(), t.b().dim());
    let ring = t.a().tensor(t.a()).tensor(t.b());
    let ambient = ring.dim();
    let m = multiplication_matrix(t);
    let j = nullspace(&m);
    let basis = j.basis();
    let mut products = Vec::new();
    for (p, u) in basis.iter().enumerate() {
        for v in &basis[p..] {
            products.push(ring.multiply_sparse(u, v));
        }
    }
    let jsq = Subspace::span(ambient, &products)?;
    let gens: Vec<SparseVec> = (0..db)
        .map(|al| jhat_generator(t, &SparseVec::unit(al)))
        .collect();
    let jhat_span = Subspace::span(ambient, &gens)?;
    let one_b = t.b().unit();
    let mut closure = Vec::new();
    for mm in 0..da {
        for nn in 0..da {
            let act = pure(t, &SparseVec::unit(mm), &SparseVec::unit(nn), one_b);
            closure.extend(gens.iter().map(|g| ring.multiply_sparse(&act, g)));
        }
    }
    let jhat = Subspace::span(ambient, &closure)?;
    for (what, s) in [("J squared", &jsq), ("J hat", &jhat)] {
        if let Some(w) = s.first_escape(&j)? {
            return Err(Error::Internal(format!("{what} is not inside J: {w:?}")));
        }
    }
    let span_reading_dim = j.dim() - jsq.sum(&jhat_span)?.dim();
    let quotient = Quotient::of_subspace(j.clone(), jsq.sum(&jhat)?)?;
    Ok(KernelData {
        triple: t.clone(),
        ring,
        m,
        j,
        jsq,
        jhat_span,
        jhat,
        quotient,
        span_reading_dim,
    })
}

impl KernelData {
    pub fn triple(&self) -> &Triple {
        &self.triple
    }

    pub fn ring(&self) -> &FinAlgebra {
        &self.ring
    }

    pub fn m_matrix(&self) -> &SparseMat {
        &self.m
    }

    pub fn j(&self) -> &Subspace {
        &self.j
    }

    pub fn j_squared(&self) -> &Subspace {
        &self.jsq
    }

    /// The ℚ-span of the `g(f_α)`.
    pub fn j_hat_span(&self) -> &Subspace {
        &self.jhat_span
    }

    /// The A-bimodule generated by the `g(f_α)`.
    pub fn j_hat(&self) -> &Subspace {
        &self.jhat
    }

    /// `J/(J² + Ĵ)` with the bimodule reading.
    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn dims(&self) -> KernelDims {
        let sum_span = self.jsq.sum(&self.jhat_span).expect("same ambient").dim();
        KernelDims {
            ambient: self.ring.dim(),
            j: self.j.dim(),
            j_squared: self.jsq.dim(),
            j_hat_span: self.jhat_span.dim(),
            j_hat_bimodule: self.jhat.dim(),
            sum_with_span: sum_span,
            sum_with_bimodule: self.quotient.relations().dim(),
            quotient_span_reading: self.span_reading_dim,
            quotient: self.quotient.dim(),
        }
    }

    /// First `(e_m⊗1⊗1)v − (1⊗e_m⊗1)v` outside `J² + Ĵ`, over basis `e_m`
    /// and basis vectors `v` of `J`.
    pub fn symmetry_witness(&self) -> Option<SparseVec> {
        let t = &self.triple;
        let one_a = t.a().unit();
        let one_b = t.b().unit();
        let rel = self.quotient.relations();
        for mm in 0..t.a().dim() {
            let em = SparseVec::unit(mm);
            let left = pure(t, &em, one_a, one_b);
            let right = pure(t, one_a, &em, one_b);
            for v in self.j.basis() {
                let diff = self
                    .ring
                    .multiply_sparse(&left, v)
                    .sub(&self.ring.multiply_sparse(&right, v));
                if !rel.reduce(&diff).is_zero() {
                    return Some(diff);
                }
            }
        }
        None
    }

    /// Whether the two A-module structures on `J/(J² + Ĵ)` agree.
    pub fn symmetry_check(&self) -> bool {
        self.symmetry_witness().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use crate::triple::{catalog, catalog_all};

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_data(&catalog("k_k").unwrap()).unwrap();
        assert_eq!(k.j().dim(), 0);
        assert_eq!(k.dim(), 0);
        for t in catalog_all()
            .iter()
            .filter(|t| t.is_commutative() && t.b().dim() == 1)
        {
            let k = kernel_data(t).unwrap();
            assert!(k.j_hat_span().is_zero(), "{}", t.name());
            assert!(k.j_hat().is_zero(), "{}", t.name());
            assert_eq!(k.dim(), k.j().dim() - k.j_squared().dim());
        }
        assert!(matches!(
            kernel_data(&catalog("mat2_k").unwrap()),
            Err(Error::NonCommutative)
        ));
    }

    #[test]
    fn kernel_invariants() {
        for t in catalog_all().iter().filter(|t| t.is_commutative()) {
            let k = kernel_data(t).unwrap();
            let (da, db) = (t.a().dim(), t.b().dim());
            assert_eq!(rank(k.m_matrix()), da);
            assert_eq!(k.j().dim(), da * da * db - da);
            assert!(k.j_squared().is_subspace_of(k.j()).unwrap());
            assert!(k.j_hat().is_subspace_of(k.j()).unwrap());
            assert!(k.j_hat_span().is_subspace_of(k.j_hat()).unwrap());
            let d = k.dims();
            assert_eq!(d.quotient, d.j - d.sum_with_bimodule);
            assert!(k.symmetry_check(), "{}", t.name());
        }
    }

    #[test]
    fn j_generator_examples() {
        let t = catalog("dual_dual_x").unwrap();
        assert!(j_generator(&t, &[r(1), r(0)], &[r(1), r(0)])
            .unwrap()
            .is_zero());
        let m = multiplication_matrix(&t);
        for al in 0..2 {
            for a in 0..2 {
                let g = j_generator_sparse(&t, &SparseVec::unit(al), &SparseVec::unit(a));
                assert!(m.mul_vec(&g).unwrap().is_zero());
            }
        }
        // dual_k: 1⊗x⊗1 − x⊗1⊗1
        let t = catalog("dual_k").unwrap();
        let g = j_generator(&t, &[r(1)], &[r(0), r(1)]).unwrap();
        assert_eq!(g, SparseVec::from_entries([(1, r(1)), (2, r(-1))]));
        assert!(matches!(
            j_generator(&t, &[r(1), r(0)], &[r(0), r(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn span_reading_is_too_small_on_dual_dual_zero() {
        let k = kernel_data(&catalog("dual_dual_zero").unwrap()).unwrap();
        let d = k.dims();
        assert!(!d.readings_agree());
        assert_eq!(d.quotient_span_reading, 2);
        assert_eq!(d.quotient, 1);
    }
}
