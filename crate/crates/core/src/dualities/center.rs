use std::time::Instant;

use num_traits::Zero;

use super::report::{Params, ReportBuilder, VerificationReport};
use super::sergeev::AMBIENT_BOUND;
use crate::error::{Error, Result};
use crate::exactla::{joint_kernel_on, GradedOperator, Parity, SparseVec};
use crate::partitions::strict_partitions;
use crate::qalg::{representation_defect, PolySpace, QElement, Variable};

/// Degree-`k` invariants of `q(m)` in the symmetric algebra of its adjoint
/// representation, next to the number of strict partitions of `k` with at
/// most `m` parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CenterCount {
    pub invariant_dim: usize,
    pub strict_count: usize,
}

impl CenterCount {
    pub fn matches(&self) -> bool {
        self.invariant_dim == self.strict_count
    }
}

/// `S^k(q(m))` with one variable per basis element.
fn adjoint_space(m: usize, k: usize) -> Result<PolySpace> {
    let labels = QElement::basis_labels(m);
    let vars = QElement::basis(m)
        .into_iter()
        .zip(labels)
        .map(|(x, name)| {
            let (a, b) = (x.even_block(), x.odd_block());
            let mut weight = vec![0i64; m];
            for p in 0..m {
                for r in 0..m {
                    if !a[p][r].is_zero() || !b[p][r].is_zero() {
                        weight[p] += 1;
                        weight[r] -= 1;
                    }
                }
            }
            Variable { name, parity: x.parity().expect("basis elements are homogeneous"), weight }
        })
        .collect();
    PolySpace::new(vars, k)
}

/// Adjoint action of every basis element, extended to `S^k` as a derivation.
fn adjoint_operators(m: usize, space: &PolySpace) -> Result<Vec<GradedOperator>> {
    let basis = QElement::basis(m);
    basis
        .iter()
        .map(|x| {
            let mut terms = Vec::new();
            for (b, y) in basis.iter().enumerate() {
                for (c, coeff) in x.bracket(y)?.coords().into_iter().enumerate() {
                    if !coeff.is_zero() {
                        terms.push((c, b, coeff));
                    }
                }
            }
            space.derivation(&terms)
        })
        .collect()
}

fn zero_weight_support(space: &PolySpace) -> Vec<usize> {
    let module = space.module();
    (0..module.dim())
        .filter(|&i| module.weight(i).is_some_and(|w| w.iter().all(|x| *x == 0)))
        .collect()
}

fn invariants(space: &PolySpace, ops: &[GradedOperator]) -> Result<usize> {
    Ok(joint_kernel_on(space.module(), ops, Some(&zero_weight_support(space)))?.len())
}

fn checked_space(m: usize, k: usize) -> Result<PolySpace> {
    if m == 0 {
        return Err(Error::Construction("m must be positive".into()));
    }
    let space = adjoint_space(m, k)?;
    if space.dim() > AMBIENT_BOUND {
        return Err(Error::DimensionGuard { dim: space.dim(), bound: AMBIENT_BOUND });
    }
    Ok(space)
}

/// Counts degree-`k` adjoint invariants of `q(m)`.
pub fn center_count(m: usize, k: usize) -> Result<CenterCount> {
    let space = checked_space(m, k)?;
    let ops = adjoint_operators(m, &space)?;
    Ok(CenterCount {
        invariant_dim: invariants(&space, &ops)?,
        strict_count: strict_partitions(k, Some(m)).len(),
    })
}

/// Compares the degree-`k` adjoint invariants with strict partitions of `k`.
/// The comparison is binding only for `m = 1`, where it is known to hold in
/// every degree; for larger `m` it is reported as a note.
pub fn center_check(m: usize, k: usize, tamper: bool) -> VerificationReport {
    let start = Instant::now();
    let params = Params::new().with("m", m).with("k", k).with_if(tamper, "tamper", true);
    match center_inner(m, k, tamper, params.clone()) {
        Ok(b) => b.finish(start),
        Err(e) => VerificationReport::error("center", params, e.to_string()),
    }
}

fn center_inner(m: usize, k: usize, tamper: bool, params: Params) -> Result<ReportBuilder> {
    let space = checked_space(m, k)?;
    let mut ops = adjoint_operators(m, &space)?;
    if tamper {
        // +1 on a diagonal entry of the first even operator, at a weight-zero monomial
        let module = space.module().clone();
        let target = zero_weight_support(&space)[0];
        let bump = GradedOperator::from_fn(&module, Parity::Even, |j| {
            if j == target {
                SparseVec::unit(j)
            } else {
                SparseVec::new()
            }
        })?;
        ops[0] = ops[0].add(&bump)?;
    }
    let strict_count = strict_partitions(k, Some(m)).len();
    let invariant_dim = invariants(&space, &ops)?;
    let count = CenterCount { invariant_dim, strict_count };
    let mut b = ReportBuilder::new(
        "center",
        params
            .with("invariant_dim", invariant_dim)
            .with("strict_count", strict_count)
            .with("match", count.matches()),
    );
    let defect = representation_defect(m, &ops, 1)?;
    b.check("adjoint operators represent q(m) on S^k", defect.is_none(), || {
        format!("bracket {} not reproduced", defect.clone().unwrap_or_default())
    });
    if m == 1 {
        b.check_eq("invariant dimension equals strict partition count", invariant_dim, strict_count);
    } else {
        b.note(format!(
            "{} invariants against {} strict partitions: {}",
            invariant_dim,
            strict_count,
            if count.matches() { "expected" } else { "unexpected" }
        ));
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_counts() {
        for k in 0..=4 {
            let c = center_count(1, k).unwrap();
            assert_eq!(c, CenterCount { invariant_dim: 1, strict_count: 1 }, "k = {k}");
        }
    }

    #[test]
    fn rank_one_report_and_tamper() {
        assert!(center_check(1, 2, false).is_verified());
        assert!(!center_check(1, 2, true).is_verified());
    }

    #[test]
    fn rank_two_runs() {
        for k in 0..=3 {
            let r = center_check(2, k, false);
            assert!(r.is_verified(), "{k}: {:?}", r.detail());
        }
    }
}
