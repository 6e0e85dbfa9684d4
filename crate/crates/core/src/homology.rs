//! Secondary Hochschild homology `HH_n` and secondary cyclic homology `HC_n`,
//! plus the low-degree Connes segment `A → HH₁ → HC₁ → 0`.

use serde::Serialize;

use crate::chain::{boundary, cyclic_boundary, cyclic_relations, ChainSpace, CyclicQuotient};
use crate::error::{Error, Result};
use crate::linalg::{colspace, nullspace, rank, Quotient, SparseMat, SparseVec, Subspace};
use crate::triple::Triple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Flavor {
    HH,
    HC,
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Flavor::HH => "HH",
            Flavor::HC => "HC",
        })
    }
}

/// Degree cap for homology computations. Degree `n` needs `C̄_{n+1}`, of
/// dimension `(dim A)^{n+2} (dim B)^{(n+1)(n+2)/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_degree: 3 }
    }
}

impl Limits {
    /// Allows degree 4. Memory use grows steeply; callers should warn.
    pub fn extended() -> Self {
        Limits { max_degree: 4 }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if n > self.max_degree {
            return Err(Error::DegreeCap {
                requested: n,
                cap: self.max_degree,
            });
        }
        Ok(())
    }
}

/// A homology group realized as `Z / B` inside chain coordinates (HH) or
/// cyclic-quotient coordinates (HC).
#[derive(Clone, Debug)]
pub struct Homology {
    pub flavor: Flavor,
    pub degree: usize,
    /// `Z_n / B_n`.
    pub quotient: Quotient,
    /// For HC, the cyclic quotient `C̄^λ_n` whose coordinates `quotient` uses.
    pub chains: Option<CyclicQuotient>,
}

impl Homology {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Cycles whose classes form a basis of the homology group.
    pub fn representatives(&self) -> &[SparseVec] {
        self.quotient.representatives()
    }

    pub fn cycles(&self) -> &Subspace {
        self.quotient
            .top()
            .expect("homology quotients have a cycle space")
    }

    pub fn boundaries(&self) -> &Subspace {
        self.quotient.relations()
    }

    pub fn to_result(&self, triple: &Triple, with_representatives: bool) -> HomologyResult {
        HomologyResult {
            triple: triple.name().to_string(),
            flavor: self.flavor,
            degree: self.degree,
            dim: self.dim(),
            representatives: if with_representatives {
                self.representatives().to_vec()
            } else {
                Vec::new()
            },
        }
    }
}

/// Serializable summary of a homology computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub triple: String,
    pub flavor: Flavor,
    pub degree: usize,
    pub dim: usize,
    pub representatives: Vec<SparseVec>,
}

/// `HH_n = Ker ∂_n / Im ∂_{n+1}` with `∂_0 = 0`.
pub fn hh_homology(t: &Triple, n: usize, limits: &Limits) -> Result<Homology> {
    limits.check(n)?;
    ChainSpace::of(t, n + 1)?;
    let z = nullspace(&boundary(t, n)?);
    let b = colspace(&boundary(t, n + 1)?);
    log::debug!(
        "HH_{n}({}): dim Z = {}, dim B = {}",
        t.name(),
        z.dim(),
        b.dim()
    );
    let quotient =
        Quotient::of_subspace(z, b).map_err(|e| internal("boundaries are not cycles", e))?;
    Ok(Homology {
        flavor: Flavor::HH,
        degree: n,
        quotient,
        chains: None,
    })
}

fn cyclic_chains(t: &Triple, n: usize) -> Result<CyclicQuotient> {
    let dim = ChainSpace::of(t, n)?.dim();
    Ok(CyclicQuotient {
        degree: n,
        quotient: Quotient::new(dim, cyclic_relations(t, n)?)?,
    })
}

/// `HC_n`: homology of `C̄^λ_•` with the induced boundaries.
pub fn hc_homology(t: &Triple, n: usize, limits: &Limits) -> Result<Homology> {
    limits.check(n)?;
    ChainSpace::of(t, n + 1)?;
    let here = cyclic_chains(t, n)?;
    let above = cyclic_chains(t, n + 1)?;
    let d_here = if n == 0 {
        SparseMat::zero(0, here.dim())
    } else {
        let below = cyclic_chains(t, n - 1)?;
        cyclic_boundary(t, n, &here, &below)?
    };
    let d_above = cyclic_boundary(t, n + 1, &above, &here)?;
    let z = nullspace(&d_here);
    let b = colspace(&d_above);
    log::debug!(
        "HC_{n}({}): dim Z = {}, dim B = {}",
        t.name(),
        z.dim(),
        b.dim()
    );
    let quotient =
        Quotient::of_subspace(z, b).map_err(|e| internal("cyclic boundaries are not cycles", e))?;
    Ok(Homology {
        flavor: Flavor::HC,
        degree: n,
        quotient,
        chains: Some(here),
    })
}

fn internal(what: &str, e: Error) -> Error {
    Error::Internal(format!("{what}: {e}"))
}

pub fn hh(t: &Triple, n: usize, limits: &Limits) -> Result<HomologyResult> {
    Ok(hh_homology(t, n, limits)?.to_result(t, false))
}

pub fn hc(t: &Triple, n: usize, limits: &Limits) -> Result<HomologyResult> {
    Ok(hc_homology(t, n, limits)?.to_result(t, false))
}

/// Connes' map `B: A → C̄_1`, `a ↦ (1, a; 1_B) + (a, 1; 1_B)` in the
/// `(a_0, a_1; b_{0,1})` notation.
pub fn connes_b_chain(t: &Triple) -> SparseMat {
    let (da, db) = (t.a().dim(), t.b().dim());
    let ua = t.a().unit();
    let ub = t.b().unit();
    let cols = (0..da)
        .map(|i| {
            let mut terms = Vec::new();
            for (p, cp) in ua.iter() {
                for (q, cq) in ub.iter() {
                    let c = cp * cq;
                    terms.push(((p * da + i) * db + q, c.clone()));
                    terms.push(((i * da + p) * db + q, c));
                }
            }
            SparseVec::from_entries(terms)
        })
        .collect();
    SparseMat::from_columns(da * da * db, cols)
}

/// Exactness data for `A →B_* HH₁ →I_* HC₁ → 0`, with `I_*` induced by the
/// projection `C̄₁ → C̄^λ₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnesSegment {
    pub dim_a: usize,
    pub dim_hh1: usize,
    pub dim_hc1: usize,
    pub rank_b: usize,
    pub rank_i: usize,
    pub dim_ker_i: usize,
    /// Every `B(e_i)` is a ∂₁-cycle.
    pub b_lands_in_cycles: bool,
    pub i_surjective: bool,
    /// `Ker I_* = Im B_*` inside `HH₁`.
    pub exact_at_hh1: bool,
    /// A chain violating one of the checks.
    pub witness: Option<SparseVec>,
}

impl ConnesSegment {
    pub fn passed(&self) -> bool {
        self.b_lands_in_cycles && self.i_surjective && self.exact_at_hh1
    }
}

pub fn connes_segment_check(t: &Triple) -> Result<ConnesSegment> {
    t.require_commutative()?;
    let limits = Limits::default();
    let h = hh_homology(t, 1, &limits)?;
    let c = hc_homology(t, 1, &limits)?;
    let cyc = &c.chains.as_ref().expect("HC carries its chains").quotient;
    let bmat = connes_b_chain(t);
    let mut witness = None;

    let mut b_cols = Vec::new();
    let mut b_lands_in_cycles = true;
    for col in bmat.columns() {
        match h.quotient.project(col) {
            Ok(v) => b_cols.push(v),
            Err(_) => {
                b_lands_in_cycles = false;
                witness.get_or_insert_with(|| col.clone());
            }
        }
    }
    let image_b = Subspace::span(h.dim(), &b_cols)?;

    let mut i_cols = Vec::new();
    let mut i_defined = true;
    for rep in h.representatives() {
        let proj = cyc.project(rep)?;
        match c.quotient.project(&proj) {
            Ok(v) => i_cols.push(v),
            Err(_) => {
                i_defined = false;
                witness.get_or_insert_with(|| rep.clone());
                i_cols.push(SparseVec::new());
            }
        }
    }
    let i_mat = SparseMat::from_columns(c.dim(), i_cols);
    let rank_i = rank(&i_mat);
    let ker_i = nullspace(&i_mat);
    let exact_at_hh1 = i_defined && ker_i == image_b;
    if !exact_at_hh1 && witness.is_none() {
        let w = ker_i
            .first_escape(&image_b)?
            .or(image_b.first_escape(&ker_i)?)
            .expect("unequal subspaces have an escaping vector");
        witness = Some(h.quotient.section(&w)?);
    }
    Ok(ConnesSegment {
        dim_a: t.a().dim(),
        dim_hh1: h.dim(),
        dim_hc1: c.dim(),
        rank_b: image_b.dim(),
        rank_i,
        dim_ker_i: ker_i.dim(),
        b_lands_in_cycles,
        i_surjective: i_defined && rank_i == c.dim(),
        exact_at_hh1,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::{catalog, catalog_all};

    #[test]
    fn limits_cap_degree() {
        let t = catalog("k_k").unwrap();
        assert!(matches!(
            hh(&t, 4, &Limits::default()),
            Err(Error::DegreeCap {
                requested: 4,
                cap: 3
            })
        ));
        assert_eq!(hh(&t, 4, &Limits::extended()).unwrap().dim, 0);
    }

    #[test]
    fn hh_examples() {
        let kk = catalog("k_k").unwrap();
        assert_eq!(hh(&kk, 0, &Limits::default()).unwrap().dim, 1);
        for n in 1..=3 {
            assert_eq!(hh(&kk, n, &Limits::default()).unwrap().dim, 0);
        }
        for t in catalog_all() {
            let h0 = hh(&t, 0, &Limits::default()).unwrap().dim;
            assert_eq!(
                h0,
                t.a().dim() - t.a().commutator_subspace().dim(),
                "{}",
                t.name()
            );
        }
    }

    #[test]
    fn hc_examples() {
        let kk = catalog("k_k").unwrap();
        assert_eq!(hc(&kk, 1, &Limits::default()).unwrap().dim, 0);
        for t in catalog_all() {
            assert_eq!(
                hc(&t, 0, &Limits::default()).unwrap().dim,
                hh(&t, 0, &Limits::default()).unwrap().dim,
                "{}",
                t.name()
            );
        }
    }

    #[test]
    fn representatives_are_cycles() {
        let t = catalog("dual_dual_x").unwrap();
        let h = hh_homology(&t, 2, &Limits::default()).unwrap();
        let d = boundary(&t, 2).unwrap();
        for r in h.representatives() {
            assert!(d.mul_vec(r).unwrap().is_zero());
        }
        let reps = h.to_result(&t, true).representatives;
        assert_eq!(reps.len(), h.dim());
    }

    #[test]
    fn connes_b_examples() {
        let t = catalog("dual_k").unwrap();
        let b = connes_b_chain(&t);
        // 1_A ↦ 2 (1 ⊗ 1 ⊗ 1)
        assert_eq!(
            b.col(0),
            &SparseVec::from_entries([(0, crate::Rat::from_int(2))])
        );
        let d1 = boundary(&t, 1).unwrap();
        assert!(d1.mul(&b).unwrap().is_zero());
        // prod_k: unit is (1, 1), so B(e_0) has several terms.
        let p = catalog("prod_k").unwrap();
        assert_eq!(connes_b_chain(&p).col(0).nnz(), 3);
    }

    #[test]
    fn connes_segment_examples() {
        for name in ["k_k", "dual_k", "dual_dual_x"] {
            let r = connes_segment_check(&catalog(name).unwrap()).unwrap();
            assert!(r.passed(), "{name}: {r:?}");
        }
        assert!(matches!(
            connes_segment_check(&catalog("mat2_k").unwrap()),
            Err(Error::NonCommutative)
        ));
    }
}
