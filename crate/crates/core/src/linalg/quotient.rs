use super::matrix::SparseMat;
use super::subspace::Subspace;
use super::vector::SparseVec;
use crate::error::{Error, Result};
use crate::rational::Rat;

/// An explicit quotient `W / R` with `R ⊆ W ⊆ ℚ^d`, where `W` defaults to the
/// whole space.
///
/// The quotient basis is a complement of `R` in `W`: echelon vectors that
/// vanish on every pivot column of `R`. Projection reduces modulo `R` and
/// reads coordinates off the complement pivots; the section returns the
/// complement vectors themselves, so `project ∘ section = id`.
#[derive(Clone, Debug)]
pub struct Quotient {
    ambient: usize,
    top: Option<Subspace>,
    relations: Subspace,
    complement: Subspace,
}

impl Quotient {
    /// `ℚ^d / R`.
    pub fn new(ambient: usize, relations: Subspace) -> Result<Self> {
        if relations.ambient_dim() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: relations.ambient_dim(),
            });
        }
        let mut is_pivot = vec![false; ambient];
        for &p in relations.pivots() {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..ambient).filter(|&j| !is_pivot[j]).collect();
        let complement = Subspace::coordinate(ambient, free);
        Ok(Quotient {
            ambient,
            top: None,
            relations,
            complement,
        })
    }

    /// `W / R`; fails if `R ⊄ W`.
    pub fn of_subspace(top: Subspace, relations: Subspace) -> Result<Self> {
        let ambient = top.ambient_dim();
        if relations.ambient_dim() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: relations.ambient_dim(),
            });
        }
        if let Some(w) = relations.first_escape(&top)? {
            return Err(Error::NotContained {
                what: "quotient relations".into(),
                witness: w,
            });
        }
        let reduced: Vec<SparseVec> = top.basis().iter().map(|v| relations.reduce(v)).collect();
        let complement = Subspace::span(ambient, &reduced)?;
        debug_assert_eq!(complement.dim() + relations.dim(), top.dim());
        Ok(Quotient {
            ambient,
            top: Some(top),
            relations,
            complement,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.complement.dim()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// `W`, or `None` when it is the whole ambient space.
    pub fn top(&self) -> Option<&Subspace> {
        self.top.as_ref()
    }

    pub fn top_contains(&self, v: &SparseVec) -> Result<bool> {
        match &self.top {
            Some(t) => t.contains(v),
            None => Ok(v.support_bound() <= self.ambient),
        }
    }

    /// Representative vectors of the quotient basis.
    pub fn representatives(&self) -> &[SparseVec] {
        self.complement.basis()
    }

    /// Quotient coordinates of `v`; errors if `v ∉ W`.
    pub fn project(&self, v: &SparseVec) -> Result<SparseVec> {
        if v.support_bound() > self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.support_bound(),
            });
        }
        let w = self.relations.reduce(v);
        let pivots = self.complement.pivots();
        let coords: Vec<(usize, Rat)> = w
            .iter()
            .filter_map(|(i, c)| pivots.binary_search(i).ok().map(|k| (k, c.clone())))
            .collect();
        if self.top.is_some() {
            let mut rem = w;
            for (k, c) in &coords {
                rem = rem.axpy(&-c, &self.complement.basis()[*k]);
            }
            if !rem.is_zero() {
                return Err(Error::NotContained {
                    what: "quotient numerator".into(),
                    witness: v.clone(),
                });
            }
        }
        Ok(SparseVec::from_sorted_unchecked(coords))
    }

    pub fn project_dense(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        Ok(self
            .project(&SparseVec::from_dense(v))?
            .to_dense(self.dim()))
    }

    /// Representative of the class with the given coordinates.
    pub fn section(&self, coords: &SparseVec) -> Result<SparseVec> {
        if coords.support_bound() > self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coords.support_bound(),
            });
        }
        let mut out = SparseVec::new();
        for (k, c) in coords.iter() {
            out = out.axpy(c, &self.complement.basis()[*k]);
        }
        Ok(out)
    }

    /// The projection as a `dim × ambient` matrix; only for quotients of the
    /// whole space.
    pub fn projection_matrix(&self) -> Result<SparseMat> {
        if self.top.is_some() {
            return Err(Error::Unsupported(
                "projection matrix of a quotient of a proper subspace".into(),
            ));
        }
        let cols = (0..self.ambient)
            .map(|j| self.project(&SparseVec::unit(j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMat::from_columns(self.dim(), cols))
    }

    /// The subspace of quotient coordinates spanned by the classes of `vs`.
    pub fn image_of<'a, I>(&self, vs: I) -> Result<Subspace>
    where
        I: IntoIterator<Item = &'a SparseVec>,
    {
        let coords = vs
            .into_iter()
            .map(|v| self.project(v))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(self.dim(), &coords)
    }
}

/// Result of pushing a linear map down to quotients.
#[derive(Clone, Debug)]
pub enum Induced {
    Map(SparseMat),
    /// A relation (or numerator) vector of the source whose image escapes the
    /// target relations (or numerator).
    NotWellDefined {
        source: SparseVec,
        image: SparseVec,
        reason: &'static str,
    },
}

/// The map `src → dst` induced by `f: ℚ^{src.ambient} → ℚ^{dst.ambient}`,
/// after checking `f(W_src) ⊆ W_dst` and `f(R_src) ⊆ R_dst`.
pub fn induced_map(f: &SparseMat, src: &Quotient, dst: &Quotient) -> Result<Induced> {
    if f.ncols() != src.ambient_dim() || f.nrows() != dst.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: src.ambient_dim() * dst.ambient_dim(),
            found: f.ncols() * f.nrows(),
        });
    }
    for r in src.relations().basis() {
        let img = f.mul_vec(r)?;
        if !dst.relations().contains(&img)? {
            return Ok(Induced::NotWellDefined {
                source: r.clone(),
                image: img,
                reason: "relation not sent into target relations",
            });
        }
    }
    let mut cols = Vec::with_capacity(src.dim());
    for rep in src.representatives() {
        let img = f.mul_vec(rep)?;
        if !dst.top_contains(&img)? {
            return Ok(Induced::NotWellDefined {
                source: rep.clone(),
                image: img,
                reason: "numerator not sent into target numerator",
            });
        }
        cols.push(dst.project(&img)?);
    }
    Ok(Induced::Map(SparseMat::from_columns(dst.dim(), cols)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn vecs(v: &[i64]) -> SparseVec {
        SparseVec::from_dense(&v.iter().map(|&x| r(x)).collect::<Vec<_>>())
    }

    #[test]
    fn quotient_examples() {
        let q = Quotient::new(3, Subspace::span(3, &[vecs(&[1, 0, 0])]).unwrap()).unwrap();
        assert_eq!(q.dim(), 2);
        let q = Quotient::new(2, Subspace::full(2)).unwrap();
        assert_eq!(q.dim(), 0);
        let q = Quotient::new(2, Subspace::zero(2)).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.project(&vecs(&[3, -1])).unwrap(), vecs(&[3, -1]));
        assert!(matches!(
            Quotient::new(2, Subspace::zero(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn subspace_quotient() {
        // W = span{(1,1,0),(0,0,1)}, R = span{(1,1,1)}
        let w = Subspace::span(3, &[vecs(&[1, 1, 0]), vecs(&[0, 0, 1])]).unwrap();
        let rel = Subspace::span(3, &[vecs(&[1, 1, 1])]).unwrap();
        let q = Quotient::of_subspace(w, rel).unwrap();
        assert_eq!(q.dim(), 1);
        let a = q.project(&vecs(&[1, 1, 0])).unwrap();
        let b = q.project(&vecs(&[0, 0, -1])).unwrap();
        assert_eq!(a, b);
        assert!(q.project(&vecs(&[1, 0, 0])).is_err());
        let bad = Quotient::of_subspace(
            Subspace::span(3, &[vecs(&[1, 0, 0])]).unwrap(),
            Subspace::span(3, &[vecs(&[0, 1, 0])]).unwrap(),
        );
        assert!(matches!(bad, Err(Error::NotContained { .. })));
    }

    fn arb_vec(d: usize) -> impl Strategy<Value = SparseVec> {
        proptest::collection::vec(-3i64..=3, d).prop_map(|v| vecs(&v))
    }

    proptest! {
        #[test]
        fn projection_kills_relations(
            gens in proptest::collection::vec(arb_vec(6), 0..5),
            v in arb_vec(6),
            coeffs in proptest::collection::vec(-2i64..=2, 5),
        ) {
            let rel = Subspace::span(6, &gens).unwrap();
            let q = Quotient::new(6, rel.clone()).unwrap();
            prop_assert_eq!(q.dim(), 6 - rel.dim());
            let mut shifted = v.clone();
            for (g, c) in gens.iter().zip(&coeffs) {
                shifted = shifted.axpy(&r(*c), g);
            }
            prop_assert_eq!(q.project(&shifted).unwrap(), q.project(&v).unwrap());
            for k in 0..q.dim() {
                let e = SparseVec::unit(k);
                prop_assert_eq!(q.project(&q.section(&e).unwrap()).unwrap(), e);
            }
        }
    }
}
