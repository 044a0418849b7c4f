use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{q, Parity, Q};

pub type Matrix = Vec<Vec<Q>>;

fn zeros(r: usize, c: usize) -> Matrix {
    vec![vec![Q::zero(); c]; r]
}

fn mat_mul(x: &Matrix, y: &Matrix) -> Matrix {
    let (r, inner, c) = (x.len(), y.len(), y.first().map_or(0, Vec::len));
    let mut out = zeros(r, c);
    for i in 0..r {
        for k in 0..inner {
            if x[i][k].is_zero() {
                continue;
            }
            for j in 0..c {
                if !y[k][j].is_zero() {
                    out[i][j] += &x[i][k] * &y[k][j];
                }
            }
        }
    }
    out
}

fn mat_lin(x: &Matrix, c: &Q, y: &Matrix) -> Matrix {
    x.iter()
        .zip(y)
        .map(|(a, b)| a.iter().zip(b).map(|(u, v)| u + c * v).collect())
        .collect()
}

/// How the odd part of q(n) is embedded into `gl(n|n)`.
///
/// `Standard` is the block form `[[A, B], [B, A]]`. `Twisted` is
/// `[[A, B], [-B, A]]`, the form in which the upper (n-side) differential
/// operators act on the variables; its odd-odd brackets carry an extra
/// sign, i.e. it is the standard form after `B -> sqrt(-1) B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Realization {
    Standard,
    Twisted,
}

impl Realization {
    /// Sign picked up by odd-odd brackets relative to the standard form.
    pub fn odd_bracket_sign(self) -> i64 {
        match self {
            Realization::Standard => 1,
            Realization::Twisted => -1,
        }
    }
}

/// An element of q(n), given by its even block `A` and odd block `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QElement {
    n: usize,
    a: Matrix,
    b: Matrix,
}

impl QElement {
    pub fn new(a: Matrix, b: Matrix) -> Result<Self> {
        let n = a.len();
        if b.len() != n || a.iter().chain(&b).any(|row| row.len() != n) {
            return Err(Error::Construction("blocks must be square of equal size".into()));
        }
        Ok(Self { n, a, b })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            a: zeros(n, n),
            b: zeros(n, n),
        }
    }

    /// `Ã_pq`: `A = E_pq`, `B = 0` (0-based indices).
    pub fn even_unit(n: usize, p: usize, q: usize) -> Self {
        let mut x = Self::zero(n);
        x.a[p][q] = Q::one();
        x
    }

    /// `B̃_pq`: `A = 0`, `B = E_pq` (0-based indices).
    pub fn odd_unit(n: usize, p: usize, q: usize) -> Self {
        let mut x = Self::zero(n);
        x.b[p][q] = Q::one();
        x
    }

    /// Basis `Ã_pq` (row-major), then `B̃_pq` (row-major).
    pub fn basis(n: usize) -> Vec<QElement> {
        let mut out = Vec::with_capacity(2 * n * n);
        for p in 0..n {
            for q in 0..n {
                out.push(Self::even_unit(n, p, q));
            }
        }
        for p in 0..n {
            for q in 0..n {
                out.push(Self::odd_unit(n, p, q));
            }
        }
        out
    }

    /// Basis labels matching [`basis`](Self::basis), 1-based: `A12`, `B21`.
    pub fn basis_labels(n: usize) -> Vec<String> {
        let mut out = Vec::new();
        for kind in ["A", "B"] {
            for p in 1..=n {
                for q in 1..=n {
                    out.push(format!("{kind}{p}{q}"));
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn even_block(&self) -> &Matrix {
        &self.a
    }

    pub fn odd_block(&self) -> &Matrix {
        &self.b
    }

    fn block_is_zero(m: &Matrix) -> bool {
        m.iter().flatten().all(Zero::is_zero)
    }

    /// Parity if homogeneous; the zero element counts as even.
    pub fn parity(&self) -> Option<Parity> {
        match (Self::block_is_zero(&self.a), Self::block_is_zero(&self.b)) {
            (_, true) => Some(Parity::Even),
            (true, false) => Some(Parity::Odd),
            (false, false) => None,
        }
    }

    fn homogeneous_parity(&self) -> Result<Parity> {
        self.parity()
            .ok_or_else(|| Error::NotHomogeneous(format!("{self} mixes even and odd parts")))
    }

    /// The `2n x 2n` matrix of this element in the given realization.
    pub fn matrix(&self, realization: Realization) -> Matrix {
        let n = self.n;
        let mut m = zeros(2 * n, 2 * n);
        let lower_sign = match realization {
            Realization::Standard => Q::one(),
            Realization::Twisted => -Q::one(),
        };
        for i in 0..n {
            for j in 0..n {
                m[i][j] = self.a[i][j].clone();
                m[n + i][n + j] = self.a[i][j].clone();
                m[i][n + j] = self.b[i][j].clone();
                m[n + i][j] = &lower_sign * &self.b[i][j];
            }
        }
        m
    }

    /// Reads an element back from a standard-form `2n x 2n` matrix, checking
    /// the `[[A, B], [B, A]]` block pattern.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        let size = m.len();
        if !size.is_multiple_of(2) || m.iter().any(|r| r.len() != size) {
            return Err(Error::Construction("expected a square matrix of even size".into()));
        }
        let n = size / 2;
        let mut a = zeros(n, n);
        let mut b = zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if m[i][j] != m[n + i][n + j] || m[i][n + j] != m[n + i][j] {
                    return Err(Error::Construction(format!(
                        "matrix is not of the form [[A,B],[B,A]] at ({i},{j})"
                    )));
                }
                a[i][j] = m[i][j].clone();
                b[i][j] = m[i][n + j].clone();
            }
        }
        Ok(Self { n, a, b })
    }

    /// Supercommutator of homogeneous elements, computed in `gl(n|n)` and
    /// read back into block form.
    pub fn bracket(&self, other: &QElement) -> Result<QElement> {
        if self.n != other.n {
            return Err(Error::SpaceMismatch(format!(
                "bracket of q({}) and q({}) elements",
                self.n, other.n
            )));
        }
        let px = self.homogeneous_parity()?;
        let py = other.homogeneous_parity()?;
        let x = self.matrix(Realization::Standard);
        let y = other.matrix(Realization::Standard);
        let s = q(-px.koszul(py));
        let m = mat_lin(&mat_mul(&x, &y), &s, &mat_mul(&y, &x));
        Self::from_matrix(&m)
    }

    /// Coordinates in [`basis`](Self::basis) order.
    pub fn coords(&self) -> Vec<Q> {
        self.a.iter().flatten().chain(self.b.iter().flatten()).cloned().collect()
    }

    pub fn scale(&self, c: &Q) -> QElement {
        let s = |m: &Matrix| m.iter().map(|r| r.iter().map(|v| v * c).collect()).collect();
        QElement {
            n: self.n,
            a: s(&self.a),
            b: s(&self.b),
        }
    }

    pub fn add(&self, other: &QElement) -> QElement {
        QElement {
            n: self.n,
            a: mat_lin(&self.a, &Q::one(), &other.a),
            b: mat_lin(&self.b, &Q::one(), &other.b),
        }
    }
}

impl fmt::Display for QElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = Self::basis_labels(self.n);
        let terms: Vec<String> = self
            .coords()
            .iter()
            .zip(&labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| if c.is_one() { l.clone() } else { format!("{c}*{l}") })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// The odd automorphism `P = [[0, I], [-I, 0]]` of `C^{m|m}`:
/// `P(e_i) = -f_i`, `P(f_i) = e_i`.
pub fn p_map(m: usize) -> Matrix {
    let mut p = zeros(2 * m, 2 * m);
    for i in 0..m {
        p[i][m + i] = Q::one();
        p[m + i][i] = -Q::one();
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_examples() {
        let a12 = QElement::even_unit(2, 0, 1);
        let a21 = QElement::even_unit(2, 1, 0);
        let expected = QElement::even_unit(2, 0, 0).add(&QElement::even_unit(2, 1, 1).scale(&q(-1)));
        assert_eq!(a12.bracket(&a21).unwrap(), expected);

        let b11 = QElement::odd_unit(2, 0, 0);
        assert_eq!(b11.bracket(&b11).unwrap(), QElement::even_unit(2, 0, 0).scale(&q(2)));

        let a11 = QElement::even_unit(2, 0, 0);
        let b12 = QElement::odd_unit(2, 0, 1);
        assert_eq!(a11.bracket(&b12).unwrap(), b12);
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        assert!(QElement::even_unit(1, 0, 0)
            .bracket(&QElement::even_unit(2, 0, 0))
            .is_err());
    }

    #[test]
    fn p_squares_to_minus_one() {
        for m in 1..=3 {
            let p = p_map(m);
            let p2 = mat_mul(&p, &p);
            for (i, row) in p2.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    assert_eq!(*v, if i == j { q(-1) } else { q(0) });
                }
            }
        }
    }

    #[test]
    fn elements_supercommute_with_p() {
        for m in 1..=3 {
            let p = p_map(m);
            for x in QElement::basis(m) {
                let xm = x.matrix(Realization::Standard);
                let s = q(-x.parity().unwrap().koszul(Parity::Odd));
                let br = mat_lin(&mat_mul(&xm, &p), &s, &mat_mul(&p, &xm));
                assert!(br.iter().flatten().all(Zero::is_zero), "{x}");
            }
        }
    }

    #[test]
    fn graded_jacobi_on_basis_triples() {
        for n in 1..=3 {
            let basis = QElement::basis(n);
            for x in &basis {
                for y in &basis {
                    for z in &basis {
                        let (px, py, pz) = (x.parity().unwrap(), y.parity().unwrap(), z.parity().unwrap());
                        // [x,[y,z]] = [[x,y],z] + (-1)^{p(x)p(y)} [y,[x,z]]
                        let lhs = x.bracket(&y.bracket(z).unwrap()).unwrap();
                        let r1 = x.bracket(y).unwrap().bracket(z).unwrap();
                        let r2 = y.bracket(&x.bracket(z).unwrap()).unwrap();
                        let rhs = r1.add(&r2.scale(&q(px.koszul(py))));
                        assert_eq!(lhs, rhs, "{x} {y} {z}");
                        let _ = pz;
                    }
                }
            }
        }
    }

    #[test]
    fn twisted_form_odd_brackets_flip_sign() {
        let b = QElement::odd_unit(2, 0, 1);
        let c = QElement::odd_unit(2, 1, 0);
        let (bm, cm) = (b.matrix(Realization::Twisted), c.matrix(Realization::Twisted));
        let anti = mat_lin(&mat_mul(&bm, &cm), &Q::one(), &mat_mul(&cm, &bm));
        let expected = b.bracket(&c).unwrap().scale(&q(-1)).matrix(Realization::Twisted);
        assert_eq!(anti, expected);
    }
}
