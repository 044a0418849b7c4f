use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::exactla::Rational as Q;

pub type Exponents = Vec<u32>;

/// Multivariate polynomial with exact rational coefficients, truncated at a
/// total-degree bound. Terms above the bound are dropped by every operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPolynomial {
    vars: usize,
    degree_bound: usize,
    terms: BTreeMap<Exponents, Q>,
}

fn degree(e: &[u32]) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

impl TruncatedPolynomial {
    pub fn zero(vars: usize, degree_bound: usize) -> Self {
        Self {
            vars,
            degree_bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Q, vars: usize, degree_bound: usize) -> Self {
        let mut p = Self::zero(vars, degree_bound);
        p.add_term(vec![0; vars], c);
        p
    }

    pub fn one(vars: usize, degree_bound: usize) -> Self {
        Self::constant(Q::one(), vars, degree_bound)
    }

    /// The monomial `c * x^exps`.
    pub fn monomial(exps: Exponents, c: Q, degree_bound: usize) -> Self {
        let mut p = Self::zero(exps.len(), degree_bound);
        p.add_term(exps, c);
        p
    }

    pub fn variable(i: usize, vars: usize, degree_bound: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Self::monomial(e, Q::one(), degree_bound)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    /// Adds `c * x^exps`, dropping it if it exceeds the degree bound.
    pub fn add_term(&mut self, exps: Exponents, c: Q) {
        assert_eq!(exps.len(), self.vars, "exponent vector length");
        if c.is_zero() || degree(&exps) > self.degree_bound {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.vars, self.degree_bound);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    /// Same polynomial with a different degree bound (terms above it dropped).
    pub fn with_bound(&self, degree_bound: usize) -> Self {
        let mut out = Self::zero(self.vars, degree_bound);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }

    /// Re-indexes variables into a larger ring: variable `i` becomes
    /// `offset + i` out of `total_vars`.
    pub fn embed(&self, offset: usize, total_vars: usize, degree_bound: usize) -> Self {
        assert!(offset + self.vars <= total_vars);
        let mut out = Self::zero(total_vars, degree_bound);
        for (e, v) in &self.terms {
            let mut ne = vec![0; total_vars];
            ne[offset..offset + self.vars].copy_from_slice(e);
            out.add_term(ne, v.clone());
        }
        out
    }

    /// Applies the variable permutation `x_i -> x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.vars, self.degree_bound);
        for (e, v) in &self.terms {
            let mut ne = vec![0; self.vars];
            for (i, &x) in e.iter().enumerate() {
                ne[perm[i]] = x;
            }
            out.add_term(ne, v.clone());
        }
        out
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let mut out = Self::zero(self.vars, self.degree_bound);
        for (e, v) in &self.terms {
            if degree(e) == d {
                out.terms.insert(e.clone(), v.clone());
            }
        }
        out
    }

    /// Sum of all coefficients (every variable set to 1).
    pub fn evaluate_at_ones(&self) -> Q {
        self.terms.values().fold(Q::zero(), |acc, v| acc + v)
    }

    pub fn has_nonnegative_integer_coefficients(&self) -> bool {
        self.terms
            .values()
            .all(|v| v.is_integer() && !v.is_negative())
    }

    /// Terms in canonical display order: increasing total degree, then
    /// decreasing lexicographic exponent order.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &Q)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| degree(a.0).cmp(&degree(b.0)).then_with(|| b.0.cmp(a.0)));
        t
    }

    /// Formats with the given variable names.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (j, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(names[j].clone()),
                    _ => factors.push(format!("{}^{}", names[j], x)),
                }
            }
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Default names `x1, x2, ...`.
    pub fn default_names(vars: usize) -> Vec<String> {
        (1..=vars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for TruncatedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&Self::default_names(self.vars)))
    }
}

impl<'a> Add<&'a TruncatedPolynomial> for &'a TruncatedPolynomial {
    type Output = TruncatedPolynomial;

    fn add(self, rhs: &TruncatedPolynomial) -> TruncatedPolynomial {
        assert_eq!(self.vars, rhs.vars, "variable count mismatch");
        let mut out = self.with_bound(self.degree_bound.min(rhs.degree_bound));
        for (e, v) in &rhs.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }
}

impl<'a> Sub<&'a TruncatedPolynomial> for &'a TruncatedPolynomial {
    type Output = TruncatedPolynomial;

    fn sub(self, rhs: &TruncatedPolynomial) -> TruncatedPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;

    fn neg(self) -> TruncatedPolynomial {
        self.scale(&-Q::one())
    }
}

impl<'a> Mul<&'a TruncatedPolynomial> for &'a TruncatedPolynomial {
    type Output = TruncatedPolynomial;

    fn mul(self, rhs: &TruncatedPolynomial) -> TruncatedPolynomial {
        assert_eq!(self.vars, rhs.vars, "variable count mismatch");
        let bound = self.degree_bound.min(rhs.degree_bound);
        let mut out = TruncatedPolynomial::zero(self.vars, bound);
        for (ea, va) in &self.terms {
            let da = degree(ea);
            for (eb, vb) in &rhs.terms {
                if da + degree(eb) > bound {
                    continue;
                }
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, va * vb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat as q;

    #[test]
    fn truncation_drops_high_terms() {
        let x = TruncatedPolynomial::variable(0, 1, 2);
        let x2 = &x * &x;
        let x3 = &x2 * &x;
        assert!(x3.is_zero());
        assert_eq!(x2.coeff(&[2]), q(1));
    }

    #[test]
    fn display_order() {
        let mut p = TruncatedPolynomial::zero(2, 4);
        p.add_term(vec![1, 2], q(4));
        p.add_term(vec![2, 1], q(4));
        p.add_term(vec![0, 0], q(-1));
        assert_eq!(p.to_string(), "-1 + 4*x1^2*x2 + 4*x1*x2^2");
    }
}
