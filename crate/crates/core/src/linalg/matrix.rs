use std::fmt::Write as _;

use rayon::prelude::*;

use super::vector::{Accumulator, SparseVec};
use crate::error::{Error, Result};
use crate::rational::Rat;

/// Sparse matrix over the rationals, stored by columns.
///
/// Columns are the natural unit here: every linear map in the engine is
/// built by sending one basis vector at a time to its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMat {
            rows: n,
            cols: (0..n).map(SparseVec::unit).collect(),
        }
    }

    /// Panics if a column has an index out of range.
    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        assert!(
            cols.iter().all(|c| c.support_bound() <= rows),
            "column entry out of range"
        );
        SparseMat { rows, cols }
    }

    /// Builds the matrix column by column in parallel. Output is independent
    /// of scheduling.
    pub fn from_column_fn<F>(rows: usize, cols: usize, f: F) -> Self
    where
        F: Fn(usize) -> SparseVec + Sync + Send,
    {
        let cols: Vec<SparseVec> = (0..cols).into_par_iter().map(f).collect();
        Self::from_columns(rows, cols)
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rat)>,
    ) -> Result<Self> {
        let mut buckets: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::IndexOutOfRange {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            buckets[c].push((r, v));
        }
        Ok(SparseMat {
            rows,
            cols: buckets.into_iter().map(SparseVec::from_entries).collect(),
        })
    }

    pub fn from_dense_rows(rows: &[Vec<Rat>], ncols: usize) -> Self {
        let triplets = rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(j, v)| (i, j, v.clone()))
        });
        Self::from_triplets(rows.len(), ncols, triplets).expect("dense rows in range")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        self.cols[j].get(i)
    }

    /// Triplets in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, Rat)> {
        let mut out: Vec<(usize, usize, Rat)> = self
            .cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v.clone())))
            .collect();
        out.sort_by_key(|(i, j, _)| (*i, *j));
        out
    }

    pub fn transpose(&self) -> SparseMat {
        let mut buckets: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                buckets[*i].push((j, v.clone()));
            }
        }
        SparseMat {
            rows: self.cols.len(),
            cols: buckets
                .into_iter()
                .map(SparseVec::from_sorted_unchecked)
                .collect(),
        }
    }

    /// Row vectors of the matrix.
    pub fn rows(&self) -> Vec<SparseVec> {
        self.transpose().cols
    }

    pub fn mul_vec(&self, v: &SparseVec) -> Result<SparseVec> {
        if v.support_bound() > self.ncols() {
            return Err(Error::DimensionMismatch {
                expected: self.ncols(),
                found: v.support_bound(),
            });
        }
        let mut acc = Accumulator::new(self.rows);
        Ok(self.mul_vec_with(v, &mut acc))
    }

    pub(crate) fn mul_vec_with(&self, v: &SparseVec, acc: &mut Accumulator) -> SparseVec {
        for (j, c) in v.iter() {
            acc.add_scaled(c, &self.cols[*j]);
        }
        acc.take()
    }

    pub fn mul_dense(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.ncols() {
            return Err(Error::DimensionMismatch {
                expected: self.ncols(),
                found: v.len(),
            });
        }
        let sv = SparseVec::from_dense(v);
        Ok(self.mul_vec(&sv)?.to_dense(self.rows))
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMat) -> Result<SparseMat> {
        if self.ncols() != other.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.ncols(),
                found: other.nrows(),
            });
        }
        let cols: Vec<SparseVec> = other
            .cols
            .par_iter()
            .map_init(
                || Accumulator::new(self.rows),
                |acc, c| self.mul_vec_with(c, acc),
            )
            .collect();
        Ok(SparseMat {
            rows: self.rows,
            cols,
        })
    }

    pub fn scale(&self, c: &Rat) -> SparseMat {
        SparseMat {
            rows: self.rows,
            cols: self.cols.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMat) -> Result<SparseMat> {
        self.axpy(&Rat::one(), other)
    }

    pub fn sub(&self, other: &SparseMat) -> Result<SparseMat> {
        self.axpy(&-Rat::one(), other)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Rat, other: &SparseMat) -> Result<SparseMat> {
        if self.rows != other.rows || self.ncols() != other.ncols() {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.ncols(),
                found: other.rows * other.ncols(),
            });
        }
        Ok(SparseMat {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| a.axpy(c, b))
                .collect(),
        })
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<Rat>> {
        let mut out = vec![vec![Rat::zero(); self.ncols()]; self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    /// Sparse triplet text: a `rows cols nnz` header, then one
    /// `row col numerator/denominator` line per nonzero in row-major order.
    pub fn to_triplet_text(&self) -> String {
        let trip = self.triplets();
        let mut out = format!("{} {} {}\n", self.rows, self.ncols(), trip.len());
        for (i, j, v) in trip {
            writeln!(out, "{} {} {}/{}", i, j, v.numer(), v.denom()).unwrap();
        }
        out
    }

    pub fn from_triplet_text(text: &str) -> Result<SparseMat> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing triplet header".into()))?;
        let h: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad header token `{t}`")))
            })
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = h[..] else {
            return Err(Error::Parse(format!("bad triplet header `{header}`")));
        };
        let mut trip = Vec::with_capacity(nnz);
        for line in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = toks[..] else {
                return Err(Error::Parse(format!("bad triplet line `{line}`")));
            };
            let r = r
                .parse()
                .map_err(|_| Error::Parse(format!("bad row `{r}`")))?;
            let c = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad col `{c}`")))?;
            let v: Rat = v.parse().map_err(|e| Error::Parse(format!("{e}")))?;
            trip.push((r, c, v));
        }
        if trip.len() != nnz {
            return Err(Error::Parse(format!(
                "header announces {nnz} entries, found {}",
                trip.len()
            )));
        }
        SparseMat::from_triplets(rows, cols, trip)
    }
}
