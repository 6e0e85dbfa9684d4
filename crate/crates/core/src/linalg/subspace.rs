use super::matrix::SparseMat;
use super::vector::SparseVec;
use crate::error::{Error, Result};
use crate::rational::Rat;

/// A subspace of ℚ^d held as its reduced row-echelon basis.
///
/// Rows are sorted by pivot, each pivot entry is 1, and every pivot column is
/// zero in all other rows. The form is unique, so two subspaces are equal iff
/// their data compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::coordinate(ambient, (0..ambient).collect())
    }

    /// Span of the standard basis vectors at `indices` (sorted, distinct).
    pub fn coordinate(ambient: usize, indices: Vec<usize>) -> Self {
        assert!(indices.windows(2).all(|w| w[0] < w[1]));
        assert!(indices.last().is_none_or(|&i| i < ambient));
        Subspace {
            ambient,
            rows: indices.iter().map(|&i| SparseVec::unit(i)).collect(),
            pivots: indices,
        }
    }

    pub fn span<'a, I>(ambient: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a SparseVec>,
    {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            if s.dim() == ambient {
                // Still validate lengths of the remaining input.
                s.check_len(v)?;
                continue;
            }
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn span_dense(ambient: usize, vectors: &[Vec<Rat>]) -> Result<Self> {
        let sparse: Vec<SparseVec> = vectors
            .iter()
            .map(|v| {
                if v.len() != ambient {
                    Err(Error::DimensionMismatch {
                        expected: ambient,
                        found: v.len(),
                    })
                } else {
                    Ok(SparseVec::from_dense(v))
                }
            })
            .collect::<Result<_>>()?;
        Self::span(ambient, &sparse)
    }

    /// Direct sum of subspaces whose bases have pairwise disjoint supports.
    /// The union of the echelon bases is already reduced, so no elimination
    /// happens.
    pub fn direct_sum_disjoint(ambient: usize, parts: Vec<Subspace>) -> Self {
        let mut rows: Vec<(usize, SparseVec)> = Vec::new();
        for part in parts {
            assert_eq!(part.ambient, ambient);
            rows.extend(part.pivots.into_iter().zip(part.rows));
        }
        rows.sort_by_key(|(p, _)| *p);
        debug_assert!(rows.windows(2).all(|w| w[0].0 < w[1].0));
        let (pivots, rows) = rows.into_iter().unzip();
        Subspace {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &SparseVec) -> Result<()> {
        if v.support_bound() > self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.support_bound(),
            });
        }
        Ok(())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    fn pivot_row(&self, col: usize) -> Option<usize> {
        self.pivots.binary_search(&col).ok()
    }

    /// Coefficients of `v` on the basis rows, read off at the pivots.
    fn pivot_coeffs(&self, v: &SparseVec) -> Vec<(usize, Rat)> {
        v.iter()
            .filter_map(|(i, c)| self.pivot_row(*i).map(|r| (r, c.clone())))
            .collect()
    }

    /// The remainder of `v` after clearing every pivot column. Zero iff `v`
    /// lies in the subspace.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (r, c) in self.pivot_coeffs(v) {
            out = out.axpy(&-c, &self.rows[r]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> Result<bool> {
        self.check_len(v)?;
        Ok(self.reduce(v).is_zero())
    }

    pub fn contains_dense(&self, v: &[Rat]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        self.contains(&SparseVec::from_dense(v))
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Rat>> {
        if !self.reduce(v).is_zero() {
            return None;
        }
        let mut out = vec![Rat::zero(); self.dim()];
        for (r, c) in self.pivot_coeffs(v) {
            out[r] = c;
        }
        Some(out)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> Result<bool> {
        self.check_len(v)?;
        let rem = self.reduce(v);
        let Some((p, lead)) = rem.leading().cloned() else {
            return Ok(false);
        };
        let new_row = rem.scale(&lead.recip());
        for row in &mut self.rows {
            let c = row.get(p);
            if !c.is_zero() {
                *row = row.axpy(&-c, &new_row);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, new_row);
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let (big, small) = if self.dim() >= other.dim() {
            (self, other)
        } else {
            (other, self)
        };
        let mut s = big.clone();
        for v in &small.rows {
            if s.dim() == s.ambient {
                break;
            }
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.rows.iter().all(|r| other.reduce(r).is_zero()))
    }

    /// First basis vector of `self` outside `other`.
    pub fn first_escape(&self, other: &Subspace) -> Result<Option<SparseVec>> {
        self.check_ambient(other)?;
        Ok(self
            .rows
            .iter()
            .find(|r| !other.reduce(r).is_zero())
            .cloned())
    }

    /// Basis as the columns of an `ambient × dim` matrix.
    pub fn to_matrix(&self) -> SparseMat {
        SparseMat::from_columns(self.ambient, self.rows.clone())
    }

    /// Image of the subspace under a linear map.
    pub fn image_under(&self, f: &SparseMat) -> Result<Subspace> {
        if f.ncols() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: f.ncols(),
                found: self.ambient,
            });
        }
        let imgs: Vec<SparseVec> = self
            .rows
            .iter()
            .map(|r| f.mul_vec(r))
            .collect::<Result<_>>()?;
        Subspace::span(f.nrows(), &imgs)
    }
}

/// Rank over ℚ, exact. Eliminates along the shorter side.
pub fn rank(m: &SparseMat) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let s = if m.nrows() <= m.ncols() {
        Subspace::span(m.nrows(), m.columns())
    } else {
        Subspace::span(m.ncols(), &m.rows())
    };
    s.expect("matrix vectors are in range").dim()
}

/// Ker(M) ⊆ ℚ^{cols}.
pub fn nullspace(m: &SparseMat) -> Subspace {
    let n = m.ncols();
    let row_space = Subspace::span(n, &m.rows()).expect("rows are in range");
    let pivots = row_space.pivots();
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let kernel: Vec<SparseVec> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut entries = vec![(f, Rat::one())];
            for (row, &p) in row_space.basis().iter().zip(pivots) {
                let c = row.get(f);
                if !c.is_zero() {
                    entries.push((p, -c));
                }
            }
            SparseVec::from_entries(entries)
        })
        .collect();
    Subspace::span(n, &kernel).expect("kernel vectors are in range")
}

/// Span of the columns of M.
pub fn colspace(m: &SparseMat) -> Subspace {
    Subspace::span(m.nrows(), m.columns()).expect("columns are in range")
}

pub fn subspace_sum(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    u.sum(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn mat(rows: &[&[i64]]) -> SparseMat {
        let ncols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Rat>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| r(x)).collect())
            .collect();
        SparseMat::from_dense_rows(&dense, ncols)
    }

    fn vecs(v: &[i64]) -> SparseVec {
        SparseVec::from_dense(&v.iter().map(|&x| r(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMat::zero(0, 0)), 0);
        assert_eq!(rank(&SparseMat::identity(2)), 2);
        assert_eq!(rank(&mat(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn nullspace_examples() {
        let k = nullspace(&mat(&[&[1, -1]]));
        assert_eq!(k, Subspace::span(2, &[vecs(&[1, 1])]).unwrap());
        assert_eq!(nullspace(&SparseMat::zero(3, 3)), Subspace::full(3));
        assert_eq!(nullspace(&SparseMat::identity(2)), Subspace::zero(2));
    }

    #[test]
    fn colspace_examples() {
        assert_eq!(colspace(&SparseMat::identity(2)), Subspace::full(2));
        assert!(colspace(&SparseMat::zero(2, 3)).is_zero());
        assert_eq!(
            colspace(&mat(&[&[1], &[2]])),
            Subspace::span(2, &[vecs(&[1, 2])]).unwrap()
        );
    }

    #[test]
    fn sum_examples() {
        let e0 = Subspace::span(2, &[vecs(&[1, 0])]).unwrap();
        let e1 = Subspace::span(2, &[vecs(&[0, 1])]).unwrap();
        assert_eq!(e0.sum(&e1).unwrap(), Subspace::full(2));
        assert_eq!(e0.sum(&e0).unwrap(), e0);
        assert_eq!(e0.sum(&Subspace::zero(2)).unwrap(), e0);
        assert!(matches!(
            e0.sum(&Subspace::zero(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn contains_examples() {
        let e1 = Subspace::span(2, &[vecs(&[0, 1])]).unwrap();
        assert!(e1.contains(&SparseVec::new()).unwrap());
        assert!(!e1.contains(&vecs(&[1, 0])).unwrap());
        let diag = Subspace::span(2, &[vecs(&[1, 1])]).unwrap();
        assert!(diag.contains(&vecs(&[2, 2])).unwrap());
        assert!(matches!(
            diag.contains_dense(&[r(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn echelon_is_reduced() {
        let s = Subspace::span(3, &[vecs(&[2, 4, 6]), vecs(&[1, 3, 5])]).unwrap();
        assert_eq!(s.pivots(), &[0, 1]);
        assert_eq!(s.basis()[0], vecs(&[1, 0, -1]));
        assert_eq!(s.basis()[1], vecs(&[0, 1, 2]));
    }

    fn arb_matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = SparseMat> {
        (1..=max_r, 1..=max_c).prop_flat_map(|(nr, nc)| {
            proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], nr * nc)
                .prop_map(move |vals| {
                    let dense: Vec<Vec<Rat>> = vals
                        .chunks(nc)
                        .map(|c| c.iter().map(|&x| r(x)).collect())
                        .collect();
                    SparseMat::from_dense_rows(&dense, nc)
                })
        })
    }

    fn arb_subspace(d: usize) -> impl Strategy<Value = Subspace> {
        proptest::collection::vec(proptest::collection::vec(-2i64..=2, d), 0..=d).prop_map(
            move |vs| {
                let sv: Vec<SparseVec> = vs.iter().map(|v| vecs(v)).collect();
                Subspace::span(d, &sv).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(7, 9)) {
            let k = nullspace(&m);
            prop_assert_eq!(rank(&m) + k.dim(), m.ncols());
            for v in k.basis() {
                prop_assert!(m.mul_vec(v).unwrap().is_zero());
            }
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
            prop_assert_eq!(colspace(&m).dim(), rank(&m));
        }

        #[test]
        fn sum_laws(u in arb_subspace(6), v in arb_subspace(6), w in arb_subspace(6)) {
            prop_assert_eq!(u.sum(&v).unwrap(), v.sum(&u).unwrap());
            prop_assert_eq!(u.sum(&v).unwrap().sum(&w).unwrap(), u.sum(&v.sum(&w).unwrap()).unwrap());
            prop_assert_eq!(u.sum(&u).unwrap(), u.clone());
            prop_assert_eq!(u.sum(&Subspace::zero(6)).unwrap(), u.clone());
            prop_assert!(u.is_subspace_of(&u.sum(&v).unwrap()).unwrap());
        }

        #[test]
        fn span_is_canonical(u in arb_subspace(5)) {
            // Re-spanning a basis in reverse order gives identical data.
            let rev: Vec<SparseVec> = u.basis().iter().rev().map(|v| v.scale(&r(3))).collect();
            prop_assert_eq!(Subspace::span(5, &rev).unwrap(), u);
        }
    }
}
