use std::collections::BTreeMap;
use std::ops::Bound;

use num_traits::{One, Zero};

use super::Q;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self {
            entries: vec![(i, Q::one())],
        }
    }

    /// Builds from unsorted entries, summing duplicates and dropping zeros.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut map: BTreeMap<usize, Q> = BTreeMap::new();
        for (i, v) in entries {
            *map.entry(i).or_insert_with(Q::zero) += v;
        }
        Self::from_map(map)
    }

    pub fn from_map(map: BTreeMap<usize, Q>) -> Self {
        Self {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// Builds from entries already sorted by index with no zeros.
    pub(crate) fn from_sorted(entries: Vec<(usize, Q)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        Self { entries }
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Q)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(usize, Q)> {
        self.entries.first()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Q, other: &SparseVec) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let ib = other.entries.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, c * &other.entries[b].1));
                b += 1;
            } else {
                let v = &self.entries[a].1 + c * &other.entries[b].1;
                if !v.is_zero() {
                    out.push((ia, v));
                }
                a += 1;
                b += 1;
            }
        }
        Self { entries: out }
    }

    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_entries(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }
}

/// Row echelon form built incrementally. Every stored row has leading
/// entry 1 at its pivot column and no entries left of it.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SparseVec)> {
        self.rows.iter()
    }

    /// Eliminates every pivot column from `v`, scanning left to right from
    /// column `from`.
    fn eliminate(&self, v: &SparseVec, from: usize) -> SparseVec {
        let mut work: BTreeMap<usize, Q> = v.entries().iter().cloned().collect();
        let mut cursor = from;
        loop {
            let next = work
                .range((Bound::Included(cursor), Bound::Unbounded))
                .next()
                .map(|(c, val)| (*c, val.clone()));
            let Some((col, val)) = next else { break };
            if let Some(row) = self.rows.get(&col) {
                for (c, rv) in row.entries() {
                    let e = work.entry(*c).or_insert_with(Q::zero);
                    *e -= &val * rv;
                    if e.is_zero() {
                        work.remove(c);
                    }
                }
            }
            cursor = col + 1;
        }
        SparseVec::from_sorted(work.into_iter().collect())
    }

    /// Residual of `v` after reduction; zero iff `v` lies in the row span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.eliminate(v, 0)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns the new pivot if `v` was independent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let r = self.reduce(v);
        let (pivot, lead) = r.leading()?.clone();
        let inv = Q::one() / lead;
        self.rows.insert(pivot, r.scale(&inv));
        Some(pivot)
    }

    /// Brings the rows to reduced row echelon form.
    pub fn make_reduced(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for p in pivots {
            let row = self.rows.remove(&p).expect("pivot row");
            let reduced = self.eliminate(&row, p + 1);
            self.rows.insert(p, reduced);
        }
    }

    /// Rows in pivot order.
    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows.into_values().collect()
    }

    /// Basis of the null space of the stored rows inside `Q^dim`, one vector
    /// per free column in increasing order. Requires reduced form.
    pub fn null_space(&self, dim: usize) -> Vec<SparseVec> {
        let mut per_free: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
        for f in 0..dim {
            if !self.rows.contains_key(&f) {
                per_free.insert(f, vec![(f, Q::one())]);
            }
        }
        for (&p, row) in &self.rows {
            for (c, v) in row.entries() {
                if *c == p {
                    continue;
                }
                per_free
                    .get_mut(c)
                    .expect("reduced form has no pivot entries off the diagonal")
                    .push((p, -v.clone()));
            }
        }
        per_free
            .into_values()
            .map(|mut e| {
                e.sort_by_key(|x| x.0);
                SparseVec::from_sorted(e)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::q;

    fn sv(e: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_entries(e.iter().map(|&(i, v)| (i, q(v))))
    }

    #[test]
    fn add_scaled_cancels() {
        let a = sv(&[(0, 1), (2, 3)]);
        let b = sv(&[(2, 1), (5, 1)]);
        assert_eq!(a.add_scaled(&q(-3), &b), sv(&[(0, 1), (5, -3)]));
    }

    #[test]
    fn echelon_rank_and_kernel() {
        let mut e = Echelon::new();
        assert!(e.insert(&sv(&[(0, 1), (1, 2)])).is_some());
        assert!(e.insert(&sv(&[(0, 2), (1, 4)])).is_none());
        assert!(e.insert(&sv(&[(1, 1), (2, 1)])).is_some());
        assert_eq!(e.rank(), 2);
        e.make_reduced();
        let ker = e.null_space(3);
        assert_eq!(ker, vec![sv(&[(0, 2), (1, -1), (2, 1)])]);
    }
}
