use std::time::Instant;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::report::{DimRow, Params, ReportBuilder, VerificationReport};
use crate::error::{Error, Result};
use crate::exactla::{algebra_closure, commutant, span_equal, GradedOperator};
use crate::partitions::{strict_partitions, StrictPartition};
use crate::qalg::{
    basis_actions, cyclic_module, irreducible_generator, raising_elements, representation_defect,
    singular_vectors, QElement, Realization, TensorSpace,
};
use crate::spingroup::{all_actions, generator_actions};
use crate::symfunc::{char_u, dim_u};

/// Default bound on `(2m)^k` for the Sergeev check.
pub const SERGEEV_BOUND: usize = 1296;

/// Default bound on ambient dimensions for the other constructions.
pub const AMBIENT_BOUND: usize = 1500;

/// `dim T^λ_k`: the coefficient of `x_1 ... x_k` in `ch U^λ_k`.
pub fn dim_t(lambda: &StrictPartition, k: usize) -> Result<u64> {
    if lambda.size() != k {
        return Err(Error::SizeMismatch {
            lambda: lambda.to_string(),
            size: lambda.size(),
            expected: k,
        });
    }
    let ch = char_u(lambda, k, k)?;
    let c = ch.coeff(&vec![1; k]);
    c.to_integer()
        .to_u64()
        .filter(|_| c.is_integer())
        .ok_or_else(|| Error::Construction(format!("dim T{lambda} is not a nonnegative integer")))
}

/// Graded Hom dimension split by parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomDim {
    pub even: usize,
    pub odd: usize,
}

impl HomDim {
    pub fn total(&self) -> usize {
        self.even + self.odd
    }
}

fn guard(dim: usize, bound: usize) -> Result<()> {
    if dim > bound {
        Err(Error::DimensionGuard { dim, bound })
    } else {
        Ok(())
    }
}

/// The irreducible `U^λ_m` inside `⊗^{|λ|} C^{m|m}` together with the
/// restricted `q(m)` basis operators.
pub fn build_irreducible(lambda: &StrictPartition, m: usize) -> Result<Vec<GradedOperator>> {
    if lambda.len() > m {
        return Err(Error::LengthExceedsRank {
            lambda: lambda.to_string(),
            length: lambda.len(),
            rank: m,
        });
    }
    let k = lambda.size();
    let space = TensorSpace::new(m, k)?;
    guard(space.dim(), AMBIENT_BOUND)?;
    let raising: Vec<GradedOperator> = raising_elements(m)
        .iter()
        .map(|x| space.action(x, Realization::Standard))
        .collect::<Result<_>>()?;
    let ops = basis_actions(&space)?;
    let weight = lambda.padded(m);
    let sing = singular_vectors(&raising, space.module(), &weight)?;
    let cartan: Vec<GradedOperator> = (0..m)
        .map(|i| space.action(&QElement::odd_unit(m, i, i), Realization::Standard))
        .collect::<Result<_>>()?;
    let v = irreducible_generator(&sing, &cartan, &weight)?;
    let u = cyclic_module(&v, &raising, &ops, space.module())?;
    ops.iter().map(|op| u.restrict(op)).collect()
}

/// `dim Hom_{q(m)}(U^λ, U^λ)` by a graded commutant solve on `U^λ_m`.
pub fn hom_dim(lambda: &StrictPartition, m: usize) -> Result<HomDim> {
    let ops = build_irreducible(lambda, m)?;
    let space = ops
        .first()
        .map(|o| o.domain().clone())
        .ok_or_else(|| Error::Construction("empty operator list".into()))?;
    let c = commutant(&ops, &space)?;
    Ok(HomDim {
        even: c.even.len(),
        odd: c.odd.len(),
    })
}

/// Graded endomorphisms of `U^λ_m`: total dimension `2^{δ(l(λ))}`, split
/// `(1, 1)` for odd length and `(1, 0)` for even length.
pub fn verify_hom_dim(lambda: &StrictPartition, m: usize, tamper: bool) -> VerificationReport {
    let start = Instant::now();
    let params = Params::new()
        .with("lambda", lambda)
        .with("m", m)
        .with_if(tamper, "tamper", true);
    let run = || -> Result<ReportBuilder> {
        let mut ops = build_irreducible(lambda, m)?;
        if tamper {
            if let Some(op) = ops.iter_mut().find(|o| !o.is_zero()) {
                op.tamper();
            }
        }
        let space = ops[0].domain().clone();
        let c = commutant(&ops, &space)?;
        let hom = HomDim {
            even: c.even.len(),
            odd: c.odd.len(),
        };
        let mut b = ReportBuilder::new(
            "hom-dim",
            params.clone().with("dim_u", space.dim()).with("even", hom.even).with("odd", hom.odd),
        );
        let defect = representation_defect(m, &ops, 1)?;
        b.check("restricted operators represent q(m)", defect.is_none(), || {
            format!("bracket {} not reproduced", defect.clone().unwrap_or_default())
        });
        b.check_eq("graded Hom dimension is 2^delta", hom.total(), 1 << lambda.delta());
        let expected = HomDim {
            even: 1,
            odd: lambda.delta(),
        };
        b.check_eq("parity split", hom, expected);
        Ok(b)
    };
    match run() {
        Ok(b) => b.finish(start),
        Err(e) => VerificationReport::error("hom-dim", params, e.to_string()),
    }
}

/// Sergeev duality on `⊗^k C^{m|m}`.
pub fn verify_sergeev(m: usize, k: usize, tamper: bool) -> VerificationReport {
    let start = Instant::now();
    let params = Params::new().with("m", m).with("k", k).with_if(tamper, "tamper", true);
    match sergeev_inner(m, k, tamper, params.clone()) {
        Ok(b) => b.finish(start),
        Err(e) => VerificationReport::error("sergeev", params, e.to_string()),
    }
}

fn sergeev_inner(m: usize, k: usize, tamper: bool, params: Params) -> Result<ReportBuilder> {
    let dim = (2 * m).checked_pow(k as u32).unwrap_or(usize::MAX);
    guard(dim, SERGEEV_BOUND)?;
    let space = TensorSpace::new(m, k)?;
    let mut b = ReportBuilder::new("sergeev", params);
    let mut q_ops = basis_actions(&space)?;
    if tamper {
        if let Some(op) = q_ops.iter_mut().find(|o| !o.is_zero()) {
            op.tamper();
        }
    }
    let defect = representation_defect(m, &q_ops, 1)?;
    b.check("q(m) acts by a representation", defect.is_none(), || {
        format!("bracket {} not reproduced", defect.clone().unwrap_or_default())
    });

    let h_gens = generator_actions(&space)?;
    let mut bad = None;
    'outer: for (i, x) in q_ops.iter().enumerate() {
        for (j, g) in h_gens.iter().enumerate() {
            if !x.superbracket(g)?.is_zero() {
                bad = Some((i, j));
                break 'outer;
            }
        }
    }
    let labels = QElement::basis_labels(m);
    b.check("q(m) and the Sergeev group supercommute", bad.is_none(), || {
        let (i, j) = bad.unwrap();
        format!("{} and group generator {} do not supercommute", labels[i], j + 1)
    });

    let module = space.module().clone();
    let cq = commutant(&q_ops, &module)?;
    let bk = all_actions(&space)?;
    b.check("commutant of q(m) equals the span of B_k", span_equal(&cq.all(), &bk)?, || {
        format!("commutant has dimension {}", cq.dim())
    });
    let cb = commutant(&h_gens, &module)?;
    let closure = algebra_closure(&q_ops, &module)?;
    b.check(
        "commutant of B_k equals the algebra generated by q(m)",
        span_equal(&cb.all(), &closure)?,
        || format!("commutant dimension {}, generated algebra dimension {}", cb.dim(), closure.len()),
    );

    for lambda in strict_partitions(k, Some(m)) {
        b.row(DimRow::new(
            lambda.clone(),
            dim_u(&lambda, m)?,
            dim_t(&lambda, k)?,
            lambda.delta(),
        ));
    }
    b.decomposition(dim as u64);
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(p: &[usize]) -> StrictPartition {
        StrictPartition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn dim_t_examples() {
        assert_eq!(dim_t(&sp(&[1]), 1).unwrap(), 2);
        assert_eq!(dim_t(&sp(&[3]), 3).unwrap(), 8);
        assert_eq!(dim_t(&sp(&[2, 1]), 3).unwrap(), 4);
        assert!(matches!(dim_t(&sp(&[2]), 3), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn hom_dim_examples() {
        assert_eq!(hom_dim(&sp(&[2]), 2).unwrap(), HomDim { even: 1, odd: 1 });
        assert_eq!(hom_dim(&sp(&[2, 1]), 2).unwrap(), HomDim { even: 1, odd: 0 });
        assert_eq!(hom_dim(&sp(&[1]), 1).unwrap(), HomDim { even: 1, odd: 1 });
    }

    #[test]
    fn sergeev_small() {
        for (m, k) in [(1, 2), (2, 2)] {
            let r = verify_sergeev(m, k, false);
            assert!(r.is_verified(), "{m} {k}: {:?}", r.detail());
        }
        let r = verify_sergeev(2, 2, false);
        assert_eq!(r.dims().len(), 1);
        assert_eq!(r.dims()[0].contribution, 16);
        assert!(!verify_sergeev(2, 2, true).is_verified());
    }

    #[test]
    fn hom_dim_report() {
        for p in [&[1][..], &[2, 1]] {
            let r = verify_hom_dim(&sp(p), 2, false);
            assert!(r.is_verified(), "{p:?}: {:?}", r.detail());
            assert!(!verify_hom_dim(&sp(p), 2, true).is_verified());
        }
    }

    #[test]
    fn guard_rejects_large() {
        let r = verify_sergeev(4, 4, false);
        assert!(!r.is_verified());
        assert!(r.detail().unwrap().contains("guard"));
    }
}
