use serde::Serialize;

use crate::rational::Rat;

/// A sparse vector: entries sorted by index, no duplicates, no stored zeros.
///
/// Serializes as its list of `[index, "p/q"]` entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SparseVec {
    entries: Vec<(usize, Rat)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Rat::one())],
        }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_entries<I: IntoIterator<Item = (usize, Rat)>>(items: I) -> Self {
        let mut raw: Vec<(usize, Rat)> = items.into_iter().collect();
        raw.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Rat)> = Vec::with_capacity(raw.len());
        for (i, v) in raw {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w += &v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    /// Caller guarantees sorted, duplicate-free, zero-free entries.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, Rat)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Rat]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Rat)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Rat)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Rat)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<&(usize, Rat)> {
        self.entries.first()
    }

    /// Largest stored index plus one (0 for the zero vector).
    pub fn support_bound(&self) -> usize {
        self.entries.last().map_or(0, |(i, _)| i + 1)
    }

    pub fn get(&self, i: usize) -> Rat {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn scale(&self, c: &Rat) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect(),
        }
    }

    /// `self + c * other`, computed by merging.
    pub fn axpy(&self, c: &Rat, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut p, mut q) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while p < a.len() || q < b.len() {
            if q == b.len() || (p < a.len() && a[p].0 < b[q].0) {
                out.push(a[p].clone());
                p += 1;
            } else if p == a.len() || b[q].0 < a[p].0 {
                out.push((b[q].0, c * &b[q].1));
                q += 1;
            } else {
                let v = &a[p].1 + &(c * &b[q].1);
                if !v.is_zero() {
                    out.push((a[p].0, v));
                }
                p += 1;
                q += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Rat::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&-Rat::one(), other)
    }

    pub fn dot_dense(&self, dense: &[Rat]) -> Rat {
        self.entries.iter().map(|(i, v)| v * &dense[*i]).sum()
    }

    /// Applies an index map; the map must be injective on the support.
    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }
}

impl FromIterator<(usize, Rat)> for SparseVec {
    fn from_iter<I: IntoIterator<Item = (usize, Rat)>>(iter: I) -> Self {
        SparseVec::from_entries(iter)
    }
}

/// Sparse accumulator: a dense scratch buffer plus the list of touched slots,
/// reusable across many accumulations into the same ambient space.
pub struct Accumulator {
    values: Vec<Rat>,
    touched: Vec<usize>,
    flags: Vec<bool>,
}

impl Accumulator {
    pub fn new(len: usize) -> Self {
        Accumulator {
            values: vec![Rat::zero(); len],
            touched: Vec::new(),
            flags: vec![false; len],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&mut self, i: usize, v: &Rat) {
        if !self.flags[i] {
            self.flags[i] = true;
            self.touched.push(i);
        }
        self.values[i] += v;
    }

    pub fn add_scaled(&mut self, c: &Rat, v: &SparseVec) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            let t = c * x;
            self.add(*i, &t);
        }
    }

    /// Drains into a sparse vector and resets the scratch state.
    pub fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut entries = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            let v = std::mem::take(&mut self.values[i]);
            self.flags[i] = false;
            if !v.is_zero() {
                entries.push((i, v));
            }
        }
        self.touched.clear();
        SparseVec::from_sorted_unchecked(entries)
    }
}
