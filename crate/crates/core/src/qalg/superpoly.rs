use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{q, GradedOperator, Parity, SparseVec, SuperModule, Q};

/// A polynomial generator: even variables commute, odd ones anticommute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub parity: Parity,
    pub weight: Vec<i64>,
}

/// Degree-`k` part of the free supercommutative algebra on `vars`.
///
/// A monomial is an exponent vector (odd exponents are 0 or 1) read as the
/// ordered product of the variables in list order; every basis vector is
/// such a canonically ordered monomial.
#[derive(Debug, Clone)]
pub struct PolySpace {
    vars: Vec<Variable>,
    degree: usize,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    module: Arc<SuperModule>,
}

fn enumerate(vars: &[Variable], pos: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos == vars.len() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let top = if vars[pos].parity.is_odd() { left.min(1) } else { left };
    for e in (0..=top).rev() {
        cur.push(e as u32);
        enumerate(vars, pos + 1, left - e, cur, out);
        cur.pop();
    }
}

impl PolySpace {
    pub fn new(vars: Vec<Variable>, degree: usize) -> Result<Self> {
        let wlen = vars.first().map_or(0, |v| v.weight.len());
        if vars.iter().any(|v| v.weight.len() != wlen) {
            return Err(Error::Construction("variable weights of unequal length".into()));
        }
        let mut monomials = Vec::new();
        enumerate(&vars, 0, degree, &mut Vec::new(), &mut monomials);
        let index = monomials.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut labels = Vec::with_capacity(monomials.len());
        let mut parities = Vec::with_capacity(monomials.len());
        let mut weights = Vec::with_capacity(monomials.len());
        for e in &monomials {
            labels.push(Self::format(&vars, e));
            let odd: u32 = e.iter().zip(&vars).filter(|(_, v)| v.parity.is_odd()).map(|(x, _)| *x).sum();
            parities.push(Parity::from_count(odd as usize));
            let mut w = vec![0i64; wlen];
            for (x, v) in e.iter().zip(&vars) {
                for (a, b) in w.iter_mut().zip(&v.weight) {
                    *a += i64::from(*x) * b;
                }
            }
            weights.push(w);
        }
        let module = Arc::new(SuperModule::new(labels, parities, Some(weights))?);
        Ok(Self {
            vars,
            degree,
            monomials,
            index,
            module,
        })
    }

    fn format(vars: &[Variable], e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .zip(vars)
            .filter(|(x, _)| **x > 0)
            .map(|(x, v)| if *x == 1 { v.name.clone() } else { format!("{}^{x}", v.name) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn module(&self) -> &Arc<SuperModule> {
        &self.module
    }

    pub fn monomial(&self, i: usize) -> &[u32] {
        &self.monomials[i]
    }

    pub fn position(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    /// Number of odd variables present strictly before position `b`.
    fn odd_before(&self, e: &[u32], b: usize) -> usize {
        e[..b]
            .iter()
            .zip(&self.vars)
            .filter(|(x, v)| v.parity.is_odd() && **x > 0)
            .count()
    }

    /// `y_c ∂/∂y_b` applied to monomial `e`, with `∂` the left derivative.
    pub fn apply_term(&self, e: &[u32], c: usize, b: usize) -> Option<(Vec<u32>, Q)> {
        if e[b] == 0 {
            return None;
        }
        let mut out = e.to_vec();
        let mut coeff = q(1);
        if self.vars[b].parity.is_odd() {
            if self.odd_before(e, b) % 2 == 1 {
                coeff = -coeff;
            }
        } else {
            coeff = q(i64::from(e[b]));
        }
        out[b] -= 1;
        if self.vars[c].parity.is_odd() {
            if out[c] > 0 {
                return None;
            }
            if self.odd_before(&out, c) % 2 == 1 {
                coeff = -coeff;
            }
        }
        out[c] += 1;
        Some((out, coeff))
    }

    /// The first-order operator `Σ coeff · y_c ∂/∂y_b` over `(c, b, coeff)`.
    /// All terms must share the parity `p(y_c) + p(y_b)`.
    pub fn derivation(&self, terms: &[(usize, usize, Q)]) -> Result<GradedOperator> {
        let mut parity = None;
        for (c, b, _) in terms {
            if *c >= self.vars.len() || *b >= self.vars.len() {
                return Err(Error::IndexOutOfRange(format!("variable {c} or {b}")));
            }
            let p = self.vars[*c].parity + self.vars[*b].parity;
            if parity.is_some_and(|x| x != p) {
                return Err(Error::NotHomogeneous("mixed-parity derivation".into()));
            }
            parity = Some(p);
        }
        let parity = parity.unwrap_or(Parity::Even);
        GradedOperator::from_fn(&self.module, parity, |j| {
            let e = &self.monomials[j];
            let mut acc: Vec<(usize, Q)> = Vec::new();
            for (c, b, k) in terms {
                if k.is_zero() {
                    continue;
                }
                if let Some((f, v)) = self.apply_term(e, *c, *b) {
                    acc.push((self.index[&f], v * k));
                }
            }
            SparseVec::from_entries(acc)
        })
    }
}

impl PolySpace {
    /// The algebra automorphism induced by a parity-preserving permutation
    /// of the variables; reordering odd factors contributes Koszul signs.
    pub fn substitution(&self, map: &[usize]) -> Result<GradedOperator> {
        let nv = self.vars.len();
        let mut seen = vec![false; nv];
        if map.len() != nv {
            return Err(Error::SpaceMismatch("substitution needs one image per variable".into()));
        }
        for (a, &b) in map.iter().enumerate() {
            if b >= nv || seen[b] || self.vars[a].parity != self.vars[b].parity {
                return Err(Error::Construction("not a parity-preserving permutation".into()));
            }
            seen[b] = true;
        }
        GradedOperator::from_fn(&self.module, Parity::Even, |j| {
            let e = &self.monomials[j];
            let mut out = vec![0u32; nv];
            let mut odd_images = Vec::new();
            for (a, &x) in e.iter().enumerate() {
                out[map[a]] += x;
                if x > 0 && self.vars[a].parity.is_odd() {
                    odd_images.push(map[a]);
                }
            }
            let mut inversions = 0;
            for s in 0..odd_images.len() {
                for t in s + 1..odd_images.len() {
                    if odd_images[s] > odd_images[t] {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            SparseVec::from_entries([(self.index[&out], q(sign))])
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_one() -> Vec<Variable> {
        vec![
            Variable {
                name: "x".into(),
                parity: Parity::Even,
                weight: vec![1],
            },
            Variable {
                name: "xi".into(),
                parity: Parity::Odd,
                weight: vec![1],
            },
        ]
    }

    #[test]
    fn dimensions_count_supermonomials() {
        let s = PolySpace::new(one_one(), 2).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.module().labels(), ["x^2", "x*xi"]);
    }

    #[test]
    fn odd_derivative_signs() {
        let vars = vec![
            Variable { name: "a".into(), parity: Parity::Odd, weight: vec![] },
            Variable { name: "b".into(), parity: Parity::Odd, weight: vec![] },
        ];
        let s = PolySpace::new(vars, 2).unwrap();
        // ∂_b (a b) = -a, so a ∂_b kills nothing but b ∂_b(ab) = ab
        assert_eq!(s.apply_term(&[1, 1], 1, 1), Some((vec![1, 1], q(1))));
        // a ∂_b (ab) = a(-a) = 0
        assert_eq!(s.apply_term(&[1, 1], 0, 1), None);
        // b ∂_a (ab) = b b = 0 ; a ∂_a(ab) = ab
        assert_eq!(s.apply_term(&[1, 1], 0, 0), Some((vec![1, 1], q(1))));
    }

    #[test]
    fn substitution_signs() {
        let vars = vec![
            Variable { name: "a".into(), parity: Parity::Odd, weight: vec![] },
            Variable { name: "b".into(), parity: Parity::Odd, weight: vec![] },
        ];
        let s = PolySpace::new(vars, 2).unwrap();
        let swap = s.substitution(&[1, 0]).unwrap();
        assert_eq!(swap.entry(0, 0), q(-1));
        assert!(s.substitution(&[0, 0]).is_err());
    }

    #[test]
    fn euler_operator_is_degree() {
        let s = PolySpace::new(one_one(), 3).unwrap();
        let e = s.derivation(&[(0, 0, q(1)), (1, 1, q(1))]).unwrap();
        for j in 0..s.dim() {
            assert_eq!(e.entry(j, j), q(3));
        }
    }
}
