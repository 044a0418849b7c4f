use std::time::Instant;

use num_traits::Zero;

use super::element::QElement;
use super::superpoly::{PolySpace, Variable};
use super::tensor::representation_defect;
use crate::dualities::{Params, ReportBuilder, VerificationReport};
use crate::error::{Error, Result};
use crate::exactla::{q, GradedOperator, Parity, Q};

/// The four families of first-order operators on `S(C^{mn|mn})`.
///
/// Upper operators carry `q(n)` indices and sum over the lower index `i`;
/// lower operators carry `q(m)` indices and sum over the upper index `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HoweKind {
    /// `Σ_i x_i^p ∂/∂x_i^q + ξ_i^p ∂/∂ξ_i^q`
    AUpper,
    /// `Σ_i x_i^p ∂/∂ξ_i^q − ξ_i^p ∂/∂x_i^q`
    BUpper,
    /// `Σ_j x_p^j ∂/∂x_q^j + ξ_p^j ∂/∂ξ_q^j`
    ALower,
    /// `Σ_j x_p^j ∂/∂ξ_q^j + ξ_p^j ∂/∂x_q^j`
    BLower,
}

impl HoweKind {
    pub fn is_upper(self) -> bool {
        matches!(self, HoweKind::AUpper | HoweKind::BUpper)
    }

    pub fn parity(self) -> Parity {
        match self {
            HoweKind::AUpper | HoweKind::ALower => Parity::Even,
            HoweKind::BUpper | HoweKind::BLower => Parity::Odd,
        }
    }
}

/// `S^k(C^{mn|mn})` in even variables `x_i^j` and odd variables `ξ_i^j`
/// (`i` lower, `j` upper). Variables are ordered all `x` first, then all
/// `ξ`, each by `(i, j)`. Weights are `(lower weight in Z^m, upper weight in Z^n)`.
#[derive(Debug, Clone)]
pub struct HoweSpace {
    m: usize,
    n: usize,
    poly: PolySpace,
}

impl HoweSpace {
    pub fn new(m: usize, n: usize, k: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Construction("ranks m and n must be positive".into()));
        }
        let mut vars = Vec::with_capacity(2 * m * n);
        for (parity, stem) in [(Parity::Even, "x"), (Parity::Odd, "xi")] {
            for i in 0..m {
                for j in 0..n {
                    let mut weight = vec![0i64; m + n];
                    weight[i] = 1;
                    weight[m + j] = 1;
                    vars.push(Variable {
                        name: format!("{stem}{}{}", i + 1, j + 1),
                        parity,
                        weight,
                    });
                }
            }
        }
        Ok(Self {
            m,
            n,
            poly: PolySpace::new(vars, k)?,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &PolySpace {
        &self.poly
    }

    /// Index of `x_i^j` (0-based).
    pub fn x(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    /// Index of `ξ_i^j` (0-based).
    pub fn xi(&self, i: usize, j: usize) -> usize {
        self.m * self.n + i * self.n + j
    }

    fn terms(&self, kind: HoweKind, p: usize, r: usize, c: &Q, out: &mut Vec<(usize, usize, Q)>) {
        match kind {
            HoweKind::AUpper => {
                for i in 0..self.m {
                    out.push((self.x(i, p), self.x(i, r), c.clone()));
                    out.push((self.xi(i, p), self.xi(i, r), c.clone()));
                }
            }
            HoweKind::BUpper => {
                for i in 0..self.m {
                    out.push((self.x(i, p), self.xi(i, r), c.clone()));
                    out.push((self.xi(i, p), self.x(i, r), -c));
                }
            }
            HoweKind::ALower => {
                for j in 0..self.n {
                    out.push((self.x(p, j), self.x(r, j), c.clone()));
                    out.push((self.xi(p, j), self.xi(r, j), c.clone()));
                }
            }
            HoweKind::BLower => {
                for j in 0..self.n {
                    out.push((self.x(p, j), self.xi(r, j), c.clone()));
                    out.push((self.xi(p, j), self.x(r, j), c.clone()));
                }
            }
        }
    }

    /// One operator with 0-based indices `p, q`.
    pub fn operator(&self, kind: HoweKind, p: usize, r: usize) -> Result<GradedOperator> {
        let bound = if kind.is_upper() { self.n } else { self.m };
        if p >= bound || r >= bound {
            return Err(Error::IndexOutOfRange(format!(
                "{kind:?} indices ({}, {}) outside 1..={bound}",
                p + 1,
                r + 1
            )));
        }
        let mut t = Vec::new();
        self.terms(kind, p, r, &q(1), &mut t);
        self.poly.derivation(&t)
    }

    fn element_action(&self, x: &QElement, upper: bool) -> Result<GradedOperator> {
        let (a_kind, b_kind, rank) = if upper {
            (HoweKind::AUpper, HoweKind::BUpper, self.n)
        } else {
            (HoweKind::ALower, HoweKind::BLower, self.m)
        };
        if x.rank() != rank {
            return Err(Error::SpaceMismatch(format!("q({}) element, expected q({rank})", x.rank())));
        }
        x.parity()
            .ok_or_else(|| Error::NotHomogeneous(format!("{x} is not parity-homogeneous")))?;
        let mut t = Vec::new();
        for p in 0..rank {
            for r in 0..rank {
                let a = &x.even_block()[p][r];
                if !a.is_zero() {
                    self.terms(a_kind, p, r, a, &mut t);
                }
                let b = &x.odd_block()[p][r];
                if !b.is_zero() {
                    self.terms(b_kind, p, r, b, &mut t);
                }
            }
        }
        self.poly.derivation(&t)
    }

    /// Action of a `q(m)` element through the lower operators.
    pub fn lower_action(&self, x: &QElement) -> Result<GradedOperator> {
        self.element_action(x, false)
    }

    /// Action of a `q(n)` element through the upper operators.
    pub fn upper_action(&self, y: &QElement) -> Result<GradedOperator> {
        self.element_action(y, true)
    }

    pub fn lower_basis_actions(&self) -> Result<Vec<GradedOperator>> {
        QElement::basis(self.m).iter().map(|x| self.lower_action(x)).collect()
    }

    pub fn upper_basis_actions(&self) -> Result<Vec<GradedOperator>> {
        QElement::basis(self.n).iter().map(|y| self.upper_action(y)).collect()
    }

    /// Relabels lower indices by `lower` and upper indices by `upper`
    /// (`x_i^j -> x_{lower[i]}^{upper[j]}`, likewise for `ξ`).
    pub fn relabel(&self, lower: &[usize], upper: &[usize]) -> Result<GradedOperator> {
        let mut map = vec![0; 2 * self.m * self.n];
        for i in 0..self.m {
            for j in 0..self.n {
                map[self.x(i, j)] = self.x(lower[i], upper[j]);
                map[self.xi(i, j)] = self.xi(lower[i], upper[j]);
            }
        }
        self.poly.substitution(&map)
    }

    /// Raising operators (`p < q`) of the lower copy.
    pub fn lower_raising(&self) -> Result<Vec<GradedOperator>> {
        super::tensor::raising_elements(self.m)
            .iter()
            .map(|x| self.lower_action(x))
            .collect()
    }

    /// Raising operators (`p < q`) of the upper copy.
    pub fn upper_raising(&self) -> Result<Vec<GradedOperator>> {
        super::tensor::raising_elements(self.n)
            .iter()
            .map(|y| self.upper_action(y))
            .collect()
    }
}

/// A single operator on `S^k(C^{mn|mn})`, 0-based indices.
pub fn howe_operator(kind: HoweKind, p: usize, r: usize, m: usize, n: usize, k: usize) -> Result<GradedOperator> {
    HoweSpace::new(m, n, k)?.operator(kind, p, r)
}

/// Checks that the lower operators realize `q(m)`, the upper operators
/// realize `q(n)` and that the two families supercommute.
///
/// The upper odd operators satisfy the `q(n)` relations after `B -> sqrt(-1) B`:
/// their anticommutators carry an extra sign, which the check accounts for
/// and reports.
pub fn realization_check(m: usize, n: usize, k: usize, tamper: bool) -> VerificationReport {
    let start = Instant::now();
    let params = Params::new()
        .with("m", m)
        .with("n", n)
        .with("k", k)
        .with_if(tamper, "tamper", true);
    match realization_inner(m, n, k, tamper, params.clone()) {
        Ok(mut b) => {
            if tamper {
                b.note("negative control: one lower operator perturbed".into());
            }
            b.finish(start)
        }
        Err(e) => VerificationReport::error("howe-realization", params, e.to_string()),
    }
}

fn realization_inner(m: usize, n: usize, k: usize, tamper: bool, params: Params) -> Result<ReportBuilder> {
    let space = HoweSpace::new(m, n, k)?;
    let mut b = ReportBuilder::new("howe-realization", params);
    let mut lower = space.lower_basis_actions()?;
    if tamper {
        if let Some(op) = lower.iter_mut().find(|o| !o.is_zero()) {
            op.tamper();
        }
    }
    let upper = space.upper_basis_actions()?;
    record_realization(m, n, &lower, &upper, &mut b)?;
    Ok(b)
}

/// Records the three realization sub-checks for given lower and upper
/// basis images.
pub fn record_realization(
    m: usize,
    n: usize,
    lower: &[GradedOperator],
    upper: &[GradedOperator],
    b: &mut ReportBuilder,
) -> Result<()> {
    let defect = representation_defect(m, lower, 1)?;
    b.check("lower operators satisfy the q(m) brackets", defect.is_none(), || {
        format!("bracket {} not reproduced", defect.clone().unwrap_or_default())
    });

    let defect = representation_defect(n, upper, -1)?;
    b.check(
        "upper operators satisfy the q(n) brackets (odd generators scaled by sqrt(-1))",
        defect.is_none(),
        || format!("bracket {} not reproduced", defect.clone().unwrap_or_default()),
    );
    let untwisted = representation_defect(n, upper, 1)?;
    b.note(match untwisted {
        None => "upper operators also satisfy the untwisted q(n) brackets".into(),
        Some(pair) => format!(
            "upper odd operators anticommute with the opposite sign to q(n) (first seen at {pair}); \
             they realize q(n) via B -> sqrt(-1) B"
        ),
    });

    let mut super_ok = None;
    let mut ordinary_ok = true;
    'outer: for (i, x) in lower.iter().enumerate() {
        for (j, y) in upper.iter().enumerate() {
            if !x.superbracket(y)?.is_zero() {
                super_ok = Some((i, j));
                break 'outer;
            }
            if ordinary_ok && !x.commutator(y)?.is_zero() {
                ordinary_ok = false;
            }
        }
    }
    let (lm, ln) = (QElement::basis_labels(m), QElement::basis_labels(n));
    b.check("lower and upper operators supercommute", super_ok.is_none(), || {
        let (i, j) = super_ok.unwrap();
        format!("superbracket of lower {} and upper {} is nonzero", lm[i], ln[j])
    });
    if super_ok.is_none() {
        b.note(if ordinary_ok {
            "the two actions also commute in the ordinary sense".into()
        } else {
            "the two actions supercommute; odd-odd pairs anticommute rather than commute".into()
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::SparseVec;

    fn at(space: &HoweSpace, label: &str) -> usize {
        space.poly().module().position(label).unwrap()
    }

    #[test]
    fn b_lower_squares_to_a_lower() {
        let s = HoweSpace::new(1, 1, 2).unwrap();
        let b = s.operator(HoweKind::BLower, 0, 0).unwrap();
        let a = s.operator(HoweKind::ALower, 0, 0).unwrap();
        let x2 = SparseVec::unit(at(&s, "x11^2"));
        let xxi = SparseVec::unit(at(&s, "x11*xi11"));
        assert_eq!(b.apply(&x2), xxi.scale(&q(2)));
        assert_eq!(b.apply(&xxi), x2);
        assert_eq!(b.apply(&b.apply(&x2)), x2.scale(&q(2)));
        assert_eq!(b.compose(&b).unwrap(), a);
    }

    #[test]
    fn a_upper_counts_upper_index() {
        let s = HoweSpace::new(1, 2, 2).unwrap();
        let a = s.operator(HoweKind::AUpper, 0, 0).unwrap();
        let v = SparseVec::unit(at(&s, "x11*x12"));
        assert_eq!(a.apply(&v), v);
    }

    #[test]
    fn b_upper_on_degree_one() {
        let s = HoweSpace::new(1, 1, 1).unwrap();
        let b = s.operator(HoweKind::BUpper, 0, 0).unwrap();
        let (x, xi) = (at(&s, "x11"), at(&s, "xi11"));
        assert_eq!(b.apply(&SparseVec::unit(xi)), SparseVec::unit(x));
        assert_eq!(b.apply(&SparseVec::unit(x)), SparseVec::unit(xi).scale(&q(-1)));
    }

    #[test]
    fn index_out_of_range() {
        assert!(howe_operator(HoweKind::AUpper, 0, 2, 3, 2, 1).is_err());
        assert!(howe_operator(HoweKind::ALower, 2, 0, 3, 2, 1).is_ok());
    }

    #[test]
    fn realization_examples() {
        for (m, n, k) in [(1, 1, 2), (2, 2, 2), (2, 2, 1), (1, 2, 3), (2, 1, 3)] {
            let r = realization_check(m, n, k, false);
            assert!(r.is_verified(), "{m} {n} {k}: {:?}", r.detail());
        }
        assert!(!realization_check(2, 2, 2, true).is_verified());
    }

    #[test]
    fn representation_property_small() {
        for m in 1..=2 {
            for n in 1..=2 {
                for k in 0..=3 {
                    let s = HoweSpace::new(m, n, k).unwrap();
                    let lower = s.lower_basis_actions().unwrap();
                    assert_eq!(representation_defect(m, &lower, 1).unwrap(), None);
                }
            }
        }
    }
}
