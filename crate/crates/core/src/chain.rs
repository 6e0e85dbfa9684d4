//! The chain spaces `C̄_n = A^{⊗n+1} ⊗ B^{⊗n(n+1)/2}`, their boundary maps,
//! the signed cyclic operator and the cyclic quotient.
//!
//! A basis tensor of `C̄_n` is a complete graph on the vertices `0..=n`:
//! vertex `v` carries `a_v ∈ A`, edge `{r, s}` carries `b_{r,s} ∈ B`.
//! Face `i < n` merges vertices `i` and `i+1`; face `n` merges vertex `n`
//! into vertex `0`. Merged vertices multiply as `a_left ε(b_{left,right})
//! a_right`, and each pair of edges that becomes parallel multiplies in `B`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{induced_map, Induced, Quotient, SparseMat, SparseVec, Subspace};
use crate::rational::Rat;
use crate::triple::Triple;

/// Chain spaces larger than this are refused.
pub const MAX_CHAIN_DIM: usize = 1 << 24;

/// One basis tensor of `C̄_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainIndex {
    /// `a_0, …, a_n`.
    pub a: Vec<usize>,
    /// `b_{r,s}` for `r < s` in lexicographic order.
    pub b: Vec<usize>,
}

impl ChainIndex {
    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    pub fn b_at(&self, r: usize, s: usize) -> usize {
        self.b[pair_position(self.degree(), r, s)]
    }
}

/// Position of the pair `(r, s)`, `r < s ≤ n`, in lexicographic order.
pub fn pair_position(n: usize, r: usize, s: usize) -> usize {
    debug_assert!(r < s && s <= n);
    r * n - r * r.saturating_sub(1) / 2 + (s - r - 1)
}

/// All pairs `(r, s)`, `r < s ≤ n`, in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..=n)
        .flat_map(|r| (r + 1..=n).map(move |s| (r, s)))
        .collect()
}

/// Shape of `C̄_n` with mixed-radix linearization: `a_0` is the most
/// significant digit, then `a_1 … a_n`, then the `b` slots in pair order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpace {
    degree: usize,
    dim_a: usize,
    dim_b: usize,
    total: usize,
}

impl ChainSpace {
    pub fn new(degree: usize, dim_a: usize, dim_b: usize) -> Result<Self> {
        let n_b = degree * (degree + 1) / 2;
        let too_large = || Error::TooLarge {
            degree,
            limit: MAX_CHAIN_DIM,
        };
        let total = checked_pow(dim_a, degree + 1)
            .zip(checked_pow(dim_b, n_b))
            .and_then(|(pa, pb)| pa.checked_mul(pb))
            .filter(|&t| t <= MAX_CHAIN_DIM)
            .ok_or_else(too_large)?;
        Ok(ChainSpace {
            degree,
            dim_a,
            dim_b,
            total,
        })
    }

    pub fn of(t: &Triple, degree: usize) -> Result<Self> {
        Self::new(degree, t.a().dim(), t.b().dim())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.total
    }

    pub fn num_b_slots(&self) -> usize {
        self.degree * (self.degree + 1) / 2
    }

    pub fn linearize(&self, idx: &ChainIndex) -> usize {
        assert_eq!(idx.a.len(), self.degree + 1);
        assert_eq!(idx.b.len(), self.num_b_slots());
        let mut out = 0;
        for &d in &idx.a {
            debug_assert!(d < self.dim_a);
            out = out * self.dim_a + d;
        }
        for &d in &idx.b {
            debug_assert!(d < self.dim_b);
            out = out * self.dim_b + d;
        }
        out
    }

    pub fn delinearize(&self, mut lin: usize) -> ChainIndex {
        assert!(lin < self.total);
        let mut b = vec![0; self.num_b_slots()];
        for slot in b.iter_mut().rev() {
            *slot = lin % self.dim_b;
            lin /= self.dim_b;
        }
        let mut a = vec![0; self.degree + 1];
        for slot in a.iter_mut().rev() {
            *slot = lin % self.dim_a;
            lin /= self.dim_a;
        }
        ChainIndex { a, b }
    }

    /// Linearizes a tensor product of vectors, one per slot in slot order
    /// (`a` slots then `b` slots). Lexicographic expansion keeps the output
    /// sorted.
    fn expand(&self, a_factors: &[SparseVec], b_factors: &[SparseVec]) -> SparseVec {
        let mut cur: Vec<(usize, Rat)> = vec![(0, Rat::one())];
        let slots = a_factors
            .iter()
            .map(|f| (f, self.dim_a))
            .chain(b_factors.iter().map(|f| (f, self.dim_b)));
        for (f, radix) in slots {
            if f.is_zero() {
                return SparseVec::new();
            }
            let mut next = Vec::with_capacity(cur.len() * f.nnz());
            for (idx, c) in &cur {
                for (k, v) in f.iter() {
                    let coeff = if v.is_one() { c.clone() } else { c * v };
                    next.push((idx * radix + k, coeff));
                }
            }
            cur = next;
        }
        SparseVec::from_entries(cur)
    }
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

/// Precomputed combinatorics of one face.
struct FacePlan {
    /// For each new vertex, its old vertices (one, or `[left, right]`).
    vertex_src: Vec<Vec<usize>>,
    /// Old pair whose value moves into `ε`.
    collapsed: usize,
    /// For each new pair, the old pair positions multiplied into it.
    pair_src: Vec<Vec<usize>>,
}

impl FacePlan {
    fn new(n: usize, i: usize) -> Self {
        let (left, right) = if i < n { (i, i + 1) } else { (n, 0) };
        let rho = |v: usize| -> usize {
            if i < n {
                if v <= i {
                    v
                } else {
                    v - 1
                }
            } else if v == n {
                0
            } else {
                v
            }
        };
        let mut vertex_src = vec![Vec::new(); n];
        for v in 0..=n {
            if v != left && v != right {
                vertex_src[rho(v)].push(v);
            }
        }
        vertex_src[rho(left)] = vec![left, right];
        let new_pairs = pairs(n - 1);
        let mut pair_src = vec![Vec::new(); new_pairs.len()];
        let mut collapsed = usize::MAX;
        for (pos, (r, s)) in pairs(n).into_iter().enumerate() {
            let (x, y) = (rho(r), rho(s));
            if x == y {
                collapsed = pos;
                continue;
            }
            let (x, y) = (x.min(y), x.max(y));
            pair_src[pair_position(n - 1, x, y)].push(pos);
        }
        debug_assert!(collapsed != usize::MAX);
        FacePlan {
            vertex_src,
            collapsed,
            pair_src,
        }
    }
}

/// Engine for the maps of one triple: caches `a ε(f) a'` products.
struct FaceBuilder<'t> {
    t: &'t Triple,
    /// `merge[(l * dim_b + j) * dim_a + r] = e_l ε(f_j) e_r`.
    merge: Vec<SparseVec>,
}

impl<'t> FaceBuilder<'t> {
    fn new(t: &'t Triple) -> Self {
        let (da, db) = (t.a().dim(), t.b().dim());
        let mut merge = Vec::with_capacity(da * db * da);
        for l in 0..da {
            for j in 0..db {
                let le = t
                    .a()
                    .multiply_sparse(&SparseVec::unit(l), t.eps_of_basis(j));
                for r in 0..da {
                    merge.push(t.a().multiply_sparse(&le, &SparseVec::unit(r)));
                }
            }
        }
        FaceBuilder { t, merge }
    }

    fn face_column(
        &self,
        plan: &FacePlan,
        src: &ChainSpace,
        dst: &ChainSpace,
        col: usize,
    ) -> SparseVec {
        let (da, db) = (self.t.a().dim(), self.t.b().dim());
        let idx = src.delinearize(col);
        let a_factors: Vec<SparseVec> = plan
            .vertex_src
            .iter()
            .map(|vs| match vs[..] {
                [v] => SparseVec::unit(idx.a[v]),
                [l, r] => {
                    self.merge[(idx.a[l] * db + idx.b[plan.collapsed]) * da + idx.a[r]].clone()
                }
                _ => unreachable!(),
            })
            .collect();
        let b_factors: Vec<SparseVec> = plan
            .pair_src
            .iter()
            .map(|ps| match ps[..] {
                [p] => SparseVec::unit(idx.b[p]),
                [p, q] => self.t.b().basis_product(idx.b[p], idx.b[q]).clone(),
                _ => unreachable!(),
            })
            .collect();
        dst.expand(&a_factors, &b_factors)
    }
}

/// Unsigned matrix of face `i` of `∂_n`, `C̄_n → C̄_{n−1}`.
pub fn face_map(t: &Triple, n: usize, i: usize) -> Result<SparseMat> {
    if n == 0 {
        return Err(Error::NoFaces);
    }
    if i > n {
        return Err(Error::FaceOutOfRange { face: i, degree: n });
    }
    let src = ChainSpace::of(t, n)?;
    let dst = ChainSpace::of(t, n - 1)?;
    let plan = FacePlan::new(n, i);
    let fb = FaceBuilder::new(t);
    Ok(SparseMat::from_column_fn(dst.dim(), src.dim(), |c| {
        fb.face_column(&plan, &src, &dst, c)
    }))
}

/// `∂_n = Σ_i (−1)^i face_i`; `∂_0` is the zero map to the zero space.
pub fn boundary(t: &Triple, n: usize) -> Result<SparseMat> {
    if n == 0 {
        return Ok(SparseMat::zero(0, t.a().dim()));
    }
    let src = ChainSpace::of(t, n)?;
    let dst = ChainSpace::of(t, n - 1)?;
    let plans: Vec<FacePlan> = (0..=n).map(|i| FacePlan::new(n, i)).collect();
    let fb = FaceBuilder::new(t);
    Ok(SparseMat::from_column_fn(dst.dim(), src.dim(), |c| {
        let mut terms = Vec::new();
        for (i, plan) in plans.iter().enumerate() {
            let col = fb.face_column(plan, &src, &dst, c);
            if i % 2 == 0 {
                terms.extend(col.into_entries());
            } else {
                terms.extend(col.into_entries().into_iter().map(|(k, v)| (k, -v)));
            }
        }
        SparseVec::from_entries(terms)
    }))
}

/// Sign of `λ` on `C̄_n`.
fn cyclic_sign(n: usize) -> Rat {
    if n.is_multiple_of(2) {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// `λ(basis tensor) = sign · e_{perm[col]}`.
fn cyclic_permutation(space: &ChainSpace) -> Vec<usize> {
    let n = space.degree();
    let sigma = |v: usize| (v + 1) % (n + 1);
    let old_pairs = pairs(n);
    let targets: Vec<usize> = old_pairs
        .iter()
        .map(|&(r, s)| {
            let (x, y) = (sigma(r), sigma(s));
            pair_position(n, x.min(y), x.max(y))
        })
        .collect();
    (0..space.dim())
        .into_par_iter()
        .map(|col| {
            let idx = space.delinearize(col);
            let mut a = vec![0; n + 1];
            for v in 0..=n {
                a[sigma(v)] = idx.a[v];
            }
            let mut b = vec![0; idx.b.len()];
            for (p, &tp) in targets.iter().enumerate() {
                b[tp] = idx.b[p];
            }
            space.linearize(&ChainIndex { a, b })
        })
        .collect()
}

/// The signed cyclic operator `λ` on `C̄_n`.
pub fn cyclic_operator(t: &Triple, n: usize) -> Result<SparseMat> {
    let space = ChainSpace::of(t, n)?;
    let perm = cyclic_permutation(&space);
    let sign = cyclic_sign(n);
    let cols = perm
        .into_iter()
        .map(|p| SparseVec::from_entries([(p, sign.clone())]))
        .collect();
    Ok(SparseMat::from_columns(space.dim(), cols))
}

/// `Im(1 − λ_n)`, assembled orbit by orbit: orbits have disjoint supports,
/// so their pieces sum directly.
pub fn cyclic_relations(t: &Triple, n: usize) -> Result<Subspace> {
    let space = ChainSpace::of(t, n)?;
    let perm = cyclic_permutation(&space);
    let sign = cyclic_sign(n);
    let mut seen = vec![false; space.dim()];
    let mut orbits = Vec::new();
    for start in 0..space.dim() {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut c = perm[start];
        while c != start {
            seen[c] = true;
            orbit.push(c);
            c = perm[c];
        }
        orbits.push(orbit);
    }
    let parts: Vec<Subspace> = orbits
        .par_iter()
        .map(|orbit| {
            let gens: Vec<SparseVec> = orbit
                .iter()
                .map(|&c| SparseVec::from_entries([(c, Rat::one()), (perm[c], -sign.clone())]))
                .collect();
            Subspace::span(space.dim(), &gens).expect("orbit vectors in range")
        })
        .collect();
    Ok(Subspace::direct_sum_disjoint(space.dim(), parts))
}

/// `C̄^λ_n = C̄_n / Im(1 − λ_n)`.
#[derive(Clone, Debug)]
pub struct CyclicQuotient {
    pub degree: usize,
    pub quotient: Quotient,
}

impl CyclicQuotient {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

/// Builds `C̄^λ_n` and checks that `∂_n` sends `Im(1 − λ_n)` into
/// `Im(1 − λ_{n−1})`; a failure is an internal error carrying the witness.
pub fn cyclic_quotient(t: &Triple, n: usize) -> Result<CyclicQuotient> {
    let q = Quotient::new(ChainSpace::of(t, n)?.dim(), cyclic_relations(t, n)?)?;
    if n > 0 {
        let below = Quotient::new(ChainSpace::of(t, n - 1)?.dim(), cyclic_relations(t, n - 1)?)?;
        if let Some(w) = cyclic_compatibility_witness(t, n, &q, &below)? {
            return Err(Error::Internal(format!(
                "boundary of degree {n} does not preserve Im(1 - lambda): {w:?}"
            )));
        }
    }
    Ok(CyclicQuotient {
        degree: n,
        quotient: q,
    })
}

/// A vector of `Im(1 − λ_n)` whose boundary leaves `Im(1 − λ_{n−1})`.
fn cyclic_compatibility_witness(
    t: &Triple,
    n: usize,
    q: &Quotient,
    below: &Quotient,
) -> Result<Option<SparseVec>> {
    let d = boundary(t, n)?;
    Ok(match induced_map(&d, q, below)? {
        Induced::Map(_) => None,
        Induced::NotWellDefined { source, .. } => Some(source),
    })
}

/// The map `C̄^λ_n → C̄^λ_{n−1}` induced by `∂_n`.
pub fn cyclic_boundary(
    t: &Triple,
    n: usize,
    src: &CyclicQuotient,
    dst: &CyclicQuotient,
) -> Result<SparseMat> {
    if n == 0 {
        return Ok(SparseMat::zero(0, src.dim()));
    }
    match induced_map(&boundary(t, n)?, &src.quotient, &dst.quotient)? {
        Induced::Map(m) => Ok(m),
        Induced::NotWellDefined { source, .. } => Err(Error::Internal(format!(
            "boundary of degree {n} does not preserve Im(1 - lambda): {source:?}"
        ))),
    }
}
