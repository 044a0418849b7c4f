use std::sync::Arc;

use num_traits::Zero;

use super::element::{QElement, Realization};
use crate::error::{Error, Result};
use crate::exactla::{q, GradedOperator, Parity, SparseVec, SuperModule, Q};

/// The tensor power `⊗^k C^{m|m}` with basis `v_{i_1} ⊗ ... ⊗ v_{i_k}`.
///
/// A factor index `i < m` is `e_{i+1}` (even), `m <= i < 2m` is `f_{i-m+1}`
/// (odd). The first factor is the most significant digit of the flat index.
/// Weight coordinate `p` counts factors whose index is `p` modulo `m`.
#[derive(Debug, Clone)]
pub struct TensorSpace {
    m: usize,
    k: usize,
    module: Arc<SuperModule>,
}

pub fn factor_label(m: usize, i: usize) -> String {
    if i < m {
        format!("e{}", i + 1)
    } else {
        format!("f{}", i - m + 1)
    }
}

pub fn factor_parity(m: usize, i: usize) -> Parity {
    if i < m {
        Parity::Even
    } else {
        Parity::Odd
    }
}

impl TensorSpace {
    pub fn new(m: usize, k: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Construction("rank m must be positive".into()));
        }
        let d = 2 * m;
        let dim = d.checked_pow(k as u32).ok_or(Error::DimensionGuard {
            dim: usize::MAX,
            bound: usize::MAX,
        })?;
        let mut labels = Vec::with_capacity(dim);
        let mut parities = Vec::with_capacity(dim);
        let mut weights = Vec::with_capacity(dim);
        for idx in 0..dim {
            let t = Self::digits(d, k, idx);
            labels.push(if k == 0 {
                "1".to_string()
            } else {
                t.iter().map(|&i| factor_label(m, i)).collect::<Vec<_>>().join("⊗")
            });
            parities.push(Parity::from_count(t.iter().filter(|&&i| i >= m).count()));
            let mut w = vec![0i64; m];
            for &i in &t {
                w[i % m] += 1;
            }
            weights.push(w);
        }
        let module = Arc::new(SuperModule::new(labels, parities, Some(weights))?);
        Ok(Self { m, k, module })
    }

    fn digits(d: usize, k: usize, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = idx % d;
            idx /= d;
        }
        t
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn module(&self) -> &Arc<SuperModule> {
        &self.module
    }

    /// Factor indices of a flat basis index.
    pub fn tuple(&self, idx: usize) -> Vec<usize> {
        Self::digits(2 * self.m, self.k, idx)
    }

    /// Flat basis index of a tuple of factor indices.
    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &i| acc * 2 * self.m + i)
    }

    /// The operator `M ⊗ 1 ⊗ ... + ... + 1 ⊗ ... ⊗ M` for a homogeneous
    /// `2m x 2m` matrix `M` of parity `parity`, with Koszul signs from the
    /// factors it passes.
    pub fn derivation(&self, matrix: &[Vec<Q>], parity: Parity) -> Result<GradedOperator> {
        let m = self.m;
        GradedOperator::from_fn(&self.module, parity, |idx| {
            let t = self.tuple(idx);
            let mut out = SparseVec::new();
            let mut passed = Parity::Even;
            for pos in 0..self.k {
                let j = t[pos];
                let sign = q(parity.koszul(passed));
                let mut u = t.clone();
                for (i, row) in matrix.iter().enumerate() {
                    if !row[j].is_zero() {
                        u[pos] = i;
                        out = out.add_scaled(&(&sign * &row[j]), &SparseVec::unit(self.index(&u)));
                    }
                }
                passed = passed + factor_parity(m, j);
            }
            out
        })
    }

    /// The action of a homogeneous `q(m)` element on `⊗^k C^{m|m}`.
    pub fn action(&self, x: &QElement, realization: Realization) -> Result<GradedOperator> {
        if x.rank() != self.m {
            return Err(Error::SpaceMismatch(format!(
                "q({}) element acting on a rank {} tensor space",
                x.rank(),
                self.m
            )));
        }
        let parity = x
            .parity()
            .ok_or_else(|| Error::NotHomogeneous(format!("{x} is not parity-homogeneous")))?;
        self.derivation(&x.matrix(realization), parity)
    }

    /// Diagonal Cartan operators `Ã_pp`, whose eigenvalues are the weights.
    pub fn torus(&self) -> Result<Vec<GradedOperator>> {
        (0..self.m)
            .map(|p| self.action(&QElement::even_unit(self.m, p, p), Realization::Standard))
            .collect()
    }
}

/// `X ⊗ 1 + ... ` on `⊗^k C^{m|m}` for a homogeneous `X` in `q(m)`.
pub fn tensor_action(x: &QElement, m: usize, k: usize) -> Result<GradedOperator> {
    TensorSpace::new(m, k)?.action(x, Realization::Standard)
}

/// Images of the `Ã/B̃` basis, in basis order.
pub fn basis_actions(space: &TensorSpace) -> Result<Vec<GradedOperator>> {
    QElement::basis(space.m())
        .iter()
        .map(|x| space.action(x, Realization::Standard))
        .collect()
}

/// Raising operators `Ã_pq`, `B̃_pq` with `p < q`.
pub fn raising_elements(n: usize) -> Vec<QElement> {
    let mut out = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            out.push(QElement::even_unit(n, p, q));
            out.push(QElement::odd_unit(n, p, q));
        }
    }
    out
}

/// Checks `rho([X, Y]) = s * [rho(X), rho(Y)]` for all basis pairs, where
/// `s` is `odd_sign` on odd-odd pairs and `1` otherwise. Returns the first
/// failing pair.
pub fn representation_defect(
    n: usize,
    images: &[GradedOperator],
    odd_sign: i64,
) -> Result<Option<String>> {
    let basis = QElement::basis(n);
    let labels = QElement::basis_labels(n);
    if images.len() != basis.len() {
        return Err(Error::SpaceMismatch("one image per basis element expected".into()));
    }
    let zero = Q::zero();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let br = basis[i].bracket(&basis[j])?;
            let both_odd = basis[i].parity() == Some(Parity::Odd) && basis[j].parity() == Some(Parity::Odd);
            let s = q(if both_odd { odd_sign } else { 1 });
            let parity = basis[i].parity().unwrap() + basis[j].parity().unwrap();
            let mut expected = GradedOperator::zero(images[0].domain(), parity);
            for (c, img) in br.coords().iter().zip(images) {
                if *c != zero {
                    expected = expected.add_scaled(&(c * &s), img)?;
                }
            }
            let actual = images[i].superbracket(&images[j])?;
            if actual != expected {
                return Ok(Some(format!("[{}, {}]", labels[i], labels[j])));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(space: &TensorSpace, terms: &[(i64, &str)]) -> SparseVec {
        SparseVec::from_entries(
            terms
                .iter()
                .map(|(c, l)| (space.module().position(l).unwrap(), q(*c))),
        )
    }

    #[test]
    fn k1_is_matrix_action() {
        let s = TensorSpace::new(2, 1).unwrap();
        for x in QElement::basis(2) {
            let op = s.action(&x, Realization::Standard).unwrap();
            let m = x.matrix(Realization::Standard);
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(op.entry(i, j), m[i][j]);
                }
            }
        }
    }

    #[test]
    fn spec_examples() {
        let s = TensorSpace::new(2, 2).unwrap();
        let a11 = s.action(&QElement::even_unit(2, 0, 0), Realization::Standard).unwrap();
        let v = vec_of(&s, &[(1, "e1⊗f1")]);
        assert_eq!(a11.apply(&v), v.scale(&q(2)));
        let b11 = s.action(&QElement::odd_unit(2, 0, 0), Realization::Standard).unwrap();
        assert_eq!(
            b11.apply(&vec_of(&s, &[(1, "e1⊗e1")])),
            vec_of(&s, &[(1, "f1⊗e1"), (1, "e1⊗f1")])
        );
    }

    #[test]
    fn representation_property() {
        for m in 1..=3 {
            for k in 1..=3 {
                if m == 3 && k == 3 {
                    continue;
                }
                let s = TensorSpace::new(m, k).unwrap();
                let imgs = basis_actions(&s).unwrap();
                assert_eq!(representation_defect(m, &imgs, 1).unwrap(), None, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn twisted_realization_has_flipped_odd_brackets() {
        let s = TensorSpace::new(2, 2).unwrap();
        let imgs: Vec<_> = QElement::basis(2)
            .iter()
            .map(|x| s.action(x, Realization::Twisted).unwrap())
            .collect();
        assert_eq!(representation_defect(2, &imgs, -1).unwrap(), None);
        assert!(representation_defect(2, &imgs, 1).unwrap().is_some());
    }

    #[test]
    fn weights_match_torus() {
        let s = TensorSpace::new(2, 3).unwrap();
        let t = s.torus().unwrap();
        for i in 0..s.dim() {
            let w = s.module().weight(i).unwrap();
            for p in 0..2 {
                assert_eq!(t[p].entry(i, i), q(w[p]));
            }
        }
    }
}
