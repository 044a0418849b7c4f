use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{q, Parity, SparseVec, SuperModule, Q};
use crate::error::{Error, Result};

/// A parity-homogeneous linear map between based super vector spaces,
/// stored column by column: column `j` is the image of basis vector `j`.
#[derive(Debug, Clone)]
pub struct GradedOperator {
    domain: Arc<SuperModule>,
    codomain: Arc<SuperModule>,
    parity: Parity,
    cols: Vec<SparseVec>,
}

pub(crate) fn same_space(a: &Arc<SuperModule>, b: &Arc<SuperModule>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl PartialEq for GradedOperator {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.domain, &other.domain)
            && same_space(&self.codomain, &other.codomain)
            && (self.parity == other.parity || (self.is_zero() && other.is_zero()))
            && self.cols == other.cols
    }
}

impl GradedOperator {
    /// Builds an operator and checks that every entry shifts parity by
    /// exactly `parity`.
    pub fn from_columns(
        domain: Arc<SuperModule>,
        codomain: Arc<SuperModule>,
        parity: Parity,
        cols: Vec<SparseVec>,
    ) -> Result<Self> {
        if cols.len() != domain.dim() {
            return Err(Error::SpaceMismatch(format!(
                "{} columns for a domain of dimension {}",
                cols.len(),
                domain.dim()
            )));
        }
        for (j, col) in cols.iter().enumerate() {
            for (i, _) in col.entries() {
                if *i >= codomain.dim() {
                    return Err(Error::IndexOutOfRange(format!("row {i} in column {j}")));
                }
                if codomain.parity(*i) != domain.parity(j) + parity {
                    return Err(Error::NotHomogeneous(format!(
                        "entry ({}, {}) breaks {} parity",
                        codomain.label(*i),
                        domain.label(j),
                        parity
                    )));
                }
            }
        }
        Ok(Self {
            domain,
            codomain,
            parity,
            cols,
        })
    }

    /// Endomorphism from a column function `j -> image of basis vector j`.
    pub fn from_fn(
        space: &Arc<SuperModule>,
        parity: Parity,
        f: impl Fn(usize) -> SparseVec,
    ) -> Result<Self> {
        let cols = (0..space.dim()).map(f).collect();
        Self::from_columns(space.clone(), space.clone(), parity, cols)
    }

    pub fn identity(space: &Arc<SuperModule>) -> Self {
        Self {
            domain: space.clone(),
            codomain: space.clone(),
            parity: Parity::Even,
            cols: (0..space.dim()).map(SparseVec::unit).collect(),
        }
    }

    pub fn zero(space: &Arc<SuperModule>, parity: Parity) -> Self {
        Self {
            domain: space.clone(),
            codomain: space.clone(),
            parity,
            cols: vec![SparseVec::new(); space.dim()],
        }
    }

    /// The parity operator `v -> (-1)^{p(v)} v`.
    pub fn parity_operator(space: &Arc<SuperModule>) -> Self {
        let cols = (0..space.dim())
            .map(|j| {
                let s = if space.parity(j).is_odd() { -1 } else { 1 };
                SparseVec::from_sorted(vec![(j, q(s))])
            })
            .collect();
        Self {
            domain: space.clone(),
            codomain: space.clone(),
            parity: Parity::Even,
            cols,
        }
    }

    pub fn domain(&self) -> &Arc<SuperModule> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<SuperModule> {
        &self.codomain
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Q {
        self.cols[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn is_endomorphism(&self) -> bool {
        same_space(&self.domain, &self.codomain)
    }

    /// Row lists: `rows[i]` holds `(j, entry)` for nonzero entries in row `i`.
    pub fn rows(&self) -> Vec<Vec<(usize, Q)>> {
        let mut rows = vec![Vec::new(); self.codomain.dim()];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.entries() {
                rows[*i].push((j, v.clone()));
            }
        }
        rows
    }

    pub fn is_diagonal(&self) -> bool {
        self.cols
            .iter()
            .enumerate()
            .all(|(j, c)| c.entries().iter().all(|(i, _)| *i == j))
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (j, c) in v.entries() {
            for (i, a) in self.cols[*j].entries() {
                *acc.entry(*i).or_insert_with(Q::zero) += a * c;
            }
        }
        SparseVec::from_map(acc)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedOperator) -> Result<GradedOperator> {
        if !same_space(&other.codomain, &self.domain) {
            return Err(Error::SpaceMismatch("compose: codomain/domain differ".into()));
        }
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        Ok(Self {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            parity: self.parity + other.parity,
            cols,
        })
    }

    fn check_same_shape(&self, other: &GradedOperator) -> Result<()> {
        if !same_space(&self.domain, &other.domain) || !same_space(&self.codomain, &other.codomain) {
            return Err(Error::SpaceMismatch("operators on different spaces".into()));
        }
        Ok(())
    }

    /// `self + c * other`; the parities must agree unless one side is zero.
    pub fn add_scaled(&self, c: &Q, other: &GradedOperator) -> Result<GradedOperator> {
        self.check_same_shape(other)?;
        let parity = if other.is_zero() || c.is_zero() {
            self.parity
        } else if self.is_zero() {
            other.parity
        } else if self.parity == other.parity {
            self.parity
        } else {
            return Err(Error::NotHomogeneous("adding operators of different parity".into()));
        };
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| a.add_scaled(c, b))
            .collect();
        Ok(Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            parity,
            cols,
        })
    }

    pub fn add(&self, other: &GradedOperator) -> Result<GradedOperator> {
        self.add_scaled(&Q::one(), other)
    }

    pub fn sub(&self, other: &GradedOperator) -> Result<GradedOperator> {
        self.add_scaled(&-Q::one(), other)
    }

    pub fn scale(&self, c: &Q) -> GradedOperator {
        Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            parity: self.parity,
            cols: self.cols.iter().map(|col| col.scale(c)).collect(),
        }
    }

    /// `[X, Y] = XY - (-1)^{p(X)p(Y)} YX`.
    pub fn superbracket(&self, other: &GradedOperator) -> Result<GradedOperator> {
        if !self.is_endomorphism() || !other.is_endomorphism() {
            return Err(Error::SpaceMismatch("superbracket needs endomorphisms".into()));
        }
        self.check_same_shape(other)?;
        let xy = self.compose(other)?;
        let yx = other.compose(self)?;
        let s = q(-self.parity.koszul(other.parity));
        xy.add_scaled(&s, &yx)
    }

    /// Ordinary commutator `XY - YX`.
    pub fn commutator(&self, other: &GradedOperator) -> Result<GradedOperator> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// Entries flattened column-major into a vector of length
    /// `dim(codomain) * dim(domain)`.
    pub fn flatten(&self) -> SparseVec {
        let n = self.codomain.dim();
        let entries = self
            .cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.entries().iter().map(move |(i, v)| (j * n + i, v.clone())))
            .collect();
        SparseVec::from_sorted(entries)
    }

    /// Inverse of [`flatten`](Self::flatten).
    pub fn unflatten(
        domain: &Arc<SuperModule>,
        codomain: &Arc<SuperModule>,
        parity: Parity,
        v: &SparseVec,
    ) -> Result<GradedOperator> {
        let n = codomain.dim();
        let mut cols = vec![Vec::new(); domain.dim()];
        for (idx, val) in v.entries() {
            cols[idx / n].push((idx % n, val.clone()));
        }
        let cols = cols.into_iter().map(SparseVec::from_sorted).collect();
        Self::from_columns(domain.clone(), codomain.clone(), parity, cols)
    }

    /// The weight shift `w(i) - w(j)` shared by every nonzero entry, when
    /// the spaces carry weights and the operator is weight-homogeneous.
    /// `Some(None)` is returned for the zero operator.
    pub fn weight_shift(&self) -> Option<Option<Vec<i64>>> {
        let wd = self.domain.weights()?;
        let wc = self.codomain.weights()?;
        let mut shift: Option<Vec<i64>> = None;
        for (j, col) in self.cols.iter().enumerate() {
            for (i, _) in col.entries() {
                let s: Vec<i64> = wc[*i].iter().zip(&wd[j]).map(|(a, b)| a - b).collect();
                match &shift {
                    None => shift = Some(s),
                    Some(t) if *t != s => return None,
                    _ => {}
                }
            }
        }
        Some(shift)
    }

    /// Adds 1 to the first stored entry (negative-control hook). The zero
    /// operator is left unchanged.
    pub fn tamper(&mut self) {
        if let Some(col) = self.cols.iter_mut().find(|c| !c.is_zero()) {
            let i = col.entries()[0].0;
            *col = col.add_scaled(&Q::one(), &SparseVec::unit(i));
        }
    }

    /// Restriction to an invariant subspace with a reduced echelon basis:
    /// coordinates of an image are read off at the pivot columns.
    pub fn restrict(
        &self,
        basis: &[SparseVec],
        pivots: &[usize],
        sub: &Arc<SuperModule>,
    ) -> Result<GradedOperator> {
        let mut cols = Vec::with_capacity(basis.len());
        for b in basis {
            let img = self.apply(b);
            let coords: Vec<(usize, Q)> = pivots
                .iter()
                .enumerate()
                .map(|(t, p)| (t, img.get(*p)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            let coords = SparseVec::from_sorted(coords);
            let back = coords
                .entries()
                .iter()
                .fold(SparseVec::new(), |acc, (t, v)| acc.add_scaled(v, &basis[*t]));
            if back != img {
                return Err(Error::Construction("subspace is not invariant".into()));
            }
            cols.push(coords);
        }
        GradedOperator::from_columns(sub.clone(), sub.clone(), self.parity, cols)
    }
}
