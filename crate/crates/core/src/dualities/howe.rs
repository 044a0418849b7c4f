use std::time::Instant;

use super::report::{DimRow, Params, ReportBuilder, VerificationReport};
use super::sergeev::{dim_t, AMBIENT_BOUND};
use crate::error::{Error, Result};
use crate::exactla::{algebra_closure, commutant, span_equal};
use crate::partitions::strict_partitions;
use crate::qalg::{character, record_realization, HoweSpace};
use crate::symfunc::{dim_u, q_cauchy_sum, q_poly, TruncatedPolynomial};

fn howe_space(m: usize, n: usize, k: usize) -> Result<HoweSpace> {
    let space = HoweSpace::new(m, n, k)?;
    let dim = space.poly().dim();
    if dim > AMBIENT_BOUND {
        return Err(Error::DimensionGuard {
            dim,
            bound: AMBIENT_BOUND,
        });
    }
    Ok(space)
}

/// `(q(m), q(n))` Howe duality on `S^k(C^{mn|mn})`.
pub fn verify_howe(m: usize, n: usize, k: usize, tamper: bool) -> VerificationReport {
    let start = Instant::now();
    let params = Params::new()
        .with("m", m)
        .with("n", n)
        .with("k", k)
        .with_if(tamper, "tamper", true);
    match howe_inner(m, n, k, tamper, params.clone()) {
        Ok(b) => b.finish(start),
        Err(e) => VerificationReport::error("howe", params, e.to_string()),
    }
}

fn howe_inner(m: usize, n: usize, k: usize, tamper: bool, params: Params) -> Result<ReportBuilder> {
    let space = howe_space(m, n, k)?;
    let module = space.poly().module().clone();
    let mut b = ReportBuilder::new("howe", params);
    let mut lower = space.lower_basis_actions()?;
    if tamper {
        if let Some(op) = lower.iter_mut().find(|o| !o.is_zero()) {
            op.tamper();
        }
    }
    let upper = space.upper_basis_actions()?;
    record_realization(m, n, &lower, &upper, &mut b)?;

    let c_lower = commutant(&lower, &module)?;
    let gen_upper = algebra_closure(&upper, &module)?;
    b.check(
        "commutant of q(m) equals the algebra generated by q(n)",
        span_equal(&c_lower.all(), &gen_upper)?,
        || format!("commutant dimension {}, generated dimension {}", c_lower.dim(), gen_upper.len()),
    );
    let c_upper = commutant(&upper, &module)?;
    let gen_lower = algebra_closure(&lower, &module)?;
    b.check(
        "commutant of q(n) equals the algebra generated by q(m)",
        span_equal(&c_upper.all(), &gen_lower)?,
        || format!("commutant dimension {}, generated dimension {}", c_upper.dim(), gen_lower.len()),
    );

    for lambda in strict_partitions(k, Some(m.min(n))) {
        b.row(DimRow::new(
            lambda.clone(),
            dim_u(&lambda, m)?,
            dim_u(&lambda, n)?,
            lambda.delta(),
        ));
    }
    b.decomposition(module.dim() as u64);

    let joint = character(&module, 0..m + n, 2 * k)?;
    let expected = q_cauchy_sum(m, n, k).homogeneous_part(2 * k);
    b.check(
        "joint character equals the degree-k part of the Q-function Cauchy sum",
        joint == expected,
        || "joint torus trace differs from the Q-function sum".into(),
    );
    Ok(b)
}

/// Irreducibility of `S^k(C^{m|m})` under `q(m)` and its character `q_k`.
pub fn verify_symmetric_power(m: usize, k: usize, tamper: bool) -> VerificationReport {
    let start = Instant::now();
    let params = Params::new().with("m", m).with("k", k).with_if(tamper, "tamper", true);
    let run = || -> Result<ReportBuilder> {
        let space = howe_space(m, 1, k)?;
        let module = space.poly().module().clone();
        let mut b = ReportBuilder::new("symmetric-power", params.clone());
        let mut lower = space.lower_basis_actions()?;
        if tamper {
            if let Some(op) = lower.iter_mut().find(|o| !o.is_zero()) {
                op.tamper();
            }
        }
        let defect = crate::qalg::representation_defect(m, &lower, 1)?;
        b.check("q(m) acts by a representation", defect.is_none(), || {
            format!("bracket {} not reproduced", defect.clone().unwrap_or_default())
        });
        let c = commutant(&lower, &module)?;
        b.check_eq("commutant dimension", c.dim(), 2);
        let ch = character(&module, 0..m, k)?;
        b.check("character equals q_k", ch == q_poly(k, m, k).homogeneous_part(k), || {
            format!("character {}", ch.format_with(&TruncatedPolynomial::default_names(m)))
        });
        Ok(b)
    };
    match run() {
        Ok(b) => b.finish(start),
        Err(e) => VerificationReport::error("symmetric-power", params, e.to_string()),
    }
}

/// Dimension tables without operator constructions: the Sergeev table
/// `(2m)^k` and the Howe table `dim S^k(C^{mn|mn})`.
pub fn dimension_table(m: usize, n: Option<usize>, k: usize) -> VerificationReport {
    let start = Instant::now();
    let params = Params::new().with("m", m).with_if(n.is_some(), "n", n).with("k", k);
    let run = || -> Result<ReportBuilder> {
        let mut b = ReportBuilder::new("dims", params.clone());
        let ambient = match n {
            None => {
                for lambda in strict_partitions(k, Some(m)) {
                    b.row(DimRow::new(lambda.clone(), dim_u(&lambda, m)?, dim_t(&lambda, k)?, lambda.delta()));
                }
                (2 * m as u64).pow(k as u32)
            }
            Some(n) => {
                for lambda in strict_partitions(k, Some(m.min(n))) {
                    b.row(DimRow::new(lambda.clone(), dim_u(&lambda, m)?, dim_u(&lambda, n)?, lambda.delta()));
                }
                sym_dim(m * n, k)
            }
        };
        b.decomposition(ambient);
        Ok(b)
    };
    match run() {
        Ok(b) => b.finish(start),
        Err(e) => VerificationReport::error("dims", params, e.to_string()),
    }
}

fn binom(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim S^k(C^{d|d}) = Σ_j C(d, j) C(d + k - j - 1, k - j)`.
pub fn sym_dim(d: usize, k: usize) -> u64 {
    let (d, k) = (d as u64, k as u64);
    if k == 0 {
        return 1;
    }
    (0..=k.min(d))
        .map(|j| binom(d, j) * if k == j { 1 } else { binom(d + k - j - 1, k - j) })
        .sum()
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_dim_counts() {
        assert_eq!(sym_dim(1, 2), 2);
        assert_eq!(sym_dim(4, 2), 32);
        assert_eq!(sym_dim(4, 3), 88);
        for d in 1..=4 {
            for k in 0..=3 {
                assert_eq!(sym_dim(d, k), HoweSpace::new(d, 1, k).unwrap().poly().dim() as u64);
            }
        }
    }

    #[test]
    fn howe_small() {
        for (m, n, k) in [(1, 1, 2), (2, 2, 2), (1, 2, 3)] {
            let r = verify_howe(m, n, k, false);
            assert!(r.is_verified(), "{m} {n} {k}: {:?}", r.detail());
        }
        assert!(!verify_howe(1, 1, 2, true).is_verified());
    }

    #[test]
    fn symmetric_powers() {
        for (m, k) in [(2, 2), (1, 3), (2, 3)] {
            let r = verify_symmetric_power(m, k, false);
            assert!(r.is_verified(), "{m} {k}: {:?}", r.detail());
        }
        assert!(!verify_symmetric_power(2, 2, true).is_verified());
    }

    #[test]
    fn tables() {
        let r = dimension_table(2, Some(2), 3);
        assert!(r.is_verified());
        let c: Vec<u64> = r.dims().iter().map(|d| d.contribution).collect();
        assert_eq!(c, [72, 16]);
        let r = dimension_table(2, None, 3);
        assert_eq!(r.dims_total(), 64);
    }
}
