use std::collections::{BTreeMap, VecDeque};
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{joint_kernel_on, rat, Echelon, Scalar, GradedOperator, Parity, SparseVec, SuperModule};
use crate::symfunc::TruncatedPolynomial;

/// A subspace of a weighted space with a reduced echelon basis of
/// weight- and parity-homogeneous vectors.
#[derive(Debug, Clone)]
pub struct WeightedSubspace {
    ambient: Arc<SuperModule>,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
    module: Arc<SuperModule>,
}

impl WeightedSubspace {
    pub fn ambient(&self) -> &Arc<SuperModule> {
        &self.ambient
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The subspace as an abstract weighted super vector space.
    pub fn module(&self) -> &Arc<SuperModule> {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Restriction of an operator preserving the subspace.
    pub fn restrict(&self, op: &GradedOperator) -> Result<GradedOperator> {
        op.restrict(&self.basis, &self.pivots, &self.module)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut e = Echelon::new();
        for b in &self.basis {
            e.insert(b);
        }
        e.contains(v)
    }
}

/// Weight and parity of a vector all of whose entries share them.
fn homogeneous_grade(v: &SparseVec, space: &SuperModule) -> Result<(Vec<i64>, Parity)> {
    let weights = space
        .weights()
        .ok_or_else(|| Error::Construction("space carries no weights".into()))?;
    let mut grade: Option<(Vec<i64>, Parity)> = None;
    for (i, _) in v.entries() {
        let g = (weights[*i].clone(), space.parity(*i));
        match &grade {
            None => grade = Some(g),
            Some(h) if *h != g => {
                return Err(Error::NotHomogeneous("vector mixes weights or parities".into()))
            }
            _ => {}
        }
    }
    grade.ok_or_else(|| Error::NotHomogeneous("zero vector".into()))
}

/// Basis of the vectors of the given weight killed by every raising operator.
pub fn singular_vectors(
    raising: &[GradedOperator],
    space: &Arc<SuperModule>,
    weight: &[i64],
) -> Result<Vec<SparseVec>> {
    let weights = space
        .weights()
        .ok_or_else(|| Error::Construction("space carries no weights".into()))?;
    let support: Vec<usize> = (0..space.dim()).filter(|&i| weights[i] == weight).collect();
    if support.is_empty() {
        return Ok(Vec::new());
    }
    joint_kernel_on(space, raising, Some(&support))
}

/// A singular vector of weight `weight` that generates an irreducible module.
///
/// Singular vectors of a given weight form a module over the Clifford
/// algebra of the odd Cartan operators `b_i` (with `b_i² = sign·λ_i`); a
/// generic one generates several copies of the irreducible. Pairing the
/// indices with `λ_i ≠ 0` as `c_r = b_i b_j` (so `c_r² = -λ_i λ_j`), the vector
/// `Π_r (c_r + √(-λ_i λ_j)) w` is a joint eigenvector and generates a single
/// copy. The result lives over `Q(√d)` when the square roots are irrational.
pub fn irreducible_generator(
    singular: &[SparseVec],
    odd_cartan: &[GradedOperator],
    weight: &[i64],
) -> Result<SparseVec> {
    let active: Vec<usize> = (0..odd_cartan.len()).filter(|&i| weight[i] != 0).collect();
    let mut pairs = Vec::new();
    let mut radicand = None;
    for chunk in active.chunks(2) {
        if let [i, j] = *chunk {
            let mu = Scalar::sqrt(-weight[i] * weight[j]);
            if let Some(d) = mu.radicand() {
                if radicand.is_some_and(|r| r != d) {
                    return Err(Error::Construction(format!(
                        "weight {weight:?} needs a multiquadratic extension"
                    )));
                }
                radicand = Some(d);
            }
            let c = odd_cartan[i].compose(&odd_cartan[j])?;
            pairs.push((c, mu));
        }
    }
    for w in singular {
        let mut v = w.clone();
        for (c, mu) in &pairs {
            v = c.apply(&v).add_scaled(mu, &v);
        }
        if !v.is_zero() {
            return Ok(v);
        }
    }
    Err(Error::NotSingular(format!("no singular vector of weight {weight:?}")))
}

/// Smallest subspace containing `v` and stable under `ops`, built by
/// breadth-first application with one echelon per (weight, parity) block.
/// `v` must be homogeneous and killed by `raising`.
pub fn cyclic_module(
    v: &SparseVec,
    raising: &[GradedOperator],
    ops: &[GradedOperator],
    space: &Arc<SuperModule>,
) -> Result<WeightedSubspace> {
    let grade = homogeneous_grade(v, space)?;
    if raising.iter().any(|r| !r.apply(v).is_zero()) {
        return Err(Error::NotSingular(format!(
            "vector of weight {:?} is not killed by the raising operators",
            grade.0
        )));
    }
    let mut shifts = Vec::with_capacity(ops.len());
    for op in ops {
        let s = op
            .weight_shift()
            .ok_or_else(|| Error::NotHomogeneous("operator is not weight-homogeneous".into()))?;
        shifts.push(s);
    }
    let mut blocks: BTreeMap<(Vec<i64>, Parity), Echelon> = BTreeMap::new();
    let mut queue: VecDeque<(SparseVec, (Vec<i64>, Parity))> = VecDeque::new();
    blocks.entry(grade.clone()).or_default().insert(v);
    queue.push_back((v.clone(), grade));
    while let Some((u, (w, p))) = queue.pop_front() {
        for (op, shift) in ops.iter().zip(&shifts) {
            let Some(shift) = shift else { continue };
            let img = op.apply(&u);
            if img.is_zero() {
                continue;
            }
            let key: (Vec<i64>, Parity) = (w.iter().zip(shift).map(|(a, b)| a + b).collect(), p + op.parity());
            if blocks.entry(key.clone()).or_default().insert(&img).is_some() {
                queue.push_back((img, key));
            }
        }
    }
    let mut basis = Vec::new();
    let mut pivots = Vec::new();
    let mut labels = Vec::new();
    let mut parities = Vec::new();
    let mut weights = Vec::new();
    for ((w, p), mut e) in blocks {
        e.make_reduced();
        for (pivot, row) in e.rows() {
            labels.push(format!("u{}", basis.len()));
            parities.push(p);
            weights.push(w.clone());
            pivots.push(*pivot);
            basis.push(row.clone());
        }
    }
    let module = Arc::new(SuperModule::new(labels, parities, Some(weights))?);
    Ok(WeightedSubspace {
        ambient: space.clone(),
        basis,
        pivots,
        module,
    })
}

/// `Σ x^{w}` over a weight basis, using weight coordinates `coords`.
pub fn character(module: &SuperModule, coords: Range<usize>, degree_bound: usize) -> Result<TruncatedPolynomial> {
    let weights = module
        .weights()
        .ok_or_else(|| Error::Construction("module carries no weights".into()))?;
    let vars = coords.len();
    let mut out = TruncatedPolynomial::zero(vars, degree_bound);
    for w in weights {
        let exps = w[coords.clone()]
            .iter()
            .map(|&e| u32::try_from(e).map_err(|_| Error::Construction(format!("negative weight {w:?}"))))
            .collect::<Result<Vec<u32>>>()?;
        out.add_term(exps, rat(1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::partitions::StrictPartition;
    use crate::qalg::{basis_actions, raising_elements, QElement, Realization, TensorSpace};
    use crate::symfunc::char_u;

    fn setup(m: usize, k: usize) -> (TensorSpace, Vec<GradedOperator>, Vec<GradedOperator>) {
        let s = TensorSpace::new(m, k).unwrap();
        let ops = basis_actions(&s).unwrap();
        let raising = raising_elements(m)
            .iter()
            .map(|x| s.action(x, Realization::Standard).unwrap())
            .collect();
        (s, raising, ops)
    }

    #[test]
    fn singular_vector_counts() {
        let (s, r, _) = setup(2, 1);
        assert_eq!(singular_vectors(&r, s.module(), &[1, 0]).unwrap().len(), 2);
        let (s, r, _) = setup(2, 2);
        assert_eq!(singular_vectors(&r, s.module(), &[2, 0]).unwrap().len(), 4);
        let (s, r, _) = setup(1, 2);
        assert!(r.is_empty());
        assert_eq!(singular_vectors(&r, s.module(), &[2]).unwrap().len(), 4);
    }

    #[test]
    fn cyclic_modules_and_characters() {
        let (s, r, ops) = setup(2, 1);
        let e1 = SparseVec::unit(0);
        assert_eq!(cyclic_module(&e1, &r, &ops, s.module()).unwrap().dim(), 4);

        let (s, r, ops) = setup(2, 2);
        let v = SparseVec::unit(s.index(&[0, 0]));
        let c = cyclic_module(&v, &r, &ops, s.module()).unwrap();
        assert_eq!(c.dim(), 8);
        let ch = character(c.module(), 0..2, 2).unwrap();
        assert_eq!(ch, char_u(&StrictPartition::row(2), 2, 2).unwrap());

        let (s, r, ops) = setup(2, 3);
        let sing = singular_vectors(&r, s.module(), &[2, 1]).unwrap();
        assert!(!sing.is_empty());
        // over Q every singular vector of weight (2,1) generates two copies
        for v in &sing {
            assert_eq!(cyclic_module(v, &r, &ops, s.module()).unwrap().dim(), 8);
        }
        let cartan: Vec<GradedOperator> = (0..2)
            .map(|i| s.action(&QElement::odd_unit(2, i, i), Realization::Standard).unwrap())
            .collect();
        let v = irreducible_generator(&sing, &cartan, &[2, 1]).unwrap();
        let c = cyclic_module(&v, &r, &ops, s.module()).unwrap();
        assert_eq!(c.dim(), 4);
        let lambda = StrictPartition::new(vec![2, 1]).unwrap();
        assert_eq!(character(c.module(), 0..2, 3).unwrap(), char_u(&lambda, 2, 3).unwrap());
    }

    #[test]
    fn natural_character() {
        let s = TensorSpace::new(1, 1).unwrap();
        let ch = character(s.module(), 0..1, 1).unwrap();
        assert_eq!(ch.coeff(&[1]), rat(2));
    }

    #[test]
    fn non_singular_rejected() {
        let (s, r, ops) = setup(2, 1);
        let e2 = SparseVec::unit(1);
        assert!(matches!(
            cyclic_module(&e2, &r, &ops, s.module()),
            Err(Error::NotSingular(_))
        ));
    }
}
