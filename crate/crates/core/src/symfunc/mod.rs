//! Truncated symmetric functions: `e_r`, `h_r`, `q_r`, Schur Q-functions and
//! the characters of the irreducible q(m)-modules `U^λ_m`.

mod poly;

pub use poly::{Exponents, TruncatedPolynomial};

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::dualities::{Params, ReportBuilder, VerificationReport};
use crate::error::{Error, Result};
use crate::exactla::{rat as q, Rational as Q};
use crate::partitions::{strict_partitions_up_to, StrictPartition};

/// All exponent vectors of length `vars` and total degree `d`, in
/// decreasing lexicographic order.
pub fn exponent_vectors(vars: usize, d: usize) -> Vec<Exponents> {
    fn go(vars: usize, d: u32, prefix: &mut Exponents, out: &mut Vec<Exponents>) {
        if prefix.len() + 1 == vars {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for x in (0..=d).rev() {
            prefix.push(x);
            go(vars, d - x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(vars, d as u32, &mut Vec::new(), &mut out);
    out
}

/// Elementary symmetric polynomial `e_r(x_1..x_m)`.
pub fn elementary(r: usize, m: usize, degree_bound: usize) -> TruncatedPolynomial {
    let mut p = TruncatedPolynomial::zero(m, degree_bound);
    for e in exponent_vectors(m, r) {
        if e.iter().all(|&x| x <= 1) {
            p.add_term(e, Q::one());
        }
    }
    p
}

/// Complete homogeneous symmetric polynomial `h_r(x_1..x_m)`.
pub fn complete(r: usize, m: usize, degree_bound: usize) -> TruncatedPolynomial {
    let mut p = TruncatedPolynomial::zero(m, degree_bound);
    for e in exponent_vectors(m, r) {
        p.add_term(e, Q::one());
    }
    p
}

/// `q_r = Σ_{i=0}^{r} h_i e_{r-i}`.
pub fn q_poly(r: usize, m: usize, degree_bound: usize) -> TruncatedPolynomial {
    let mut p = TruncatedPolynomial::zero(m, degree_bound);
    for i in 0..=r {
        p = &p + &(&complete(i, m, degree_bound) * &elementary(r - i, m, degree_bound));
    }
    p
}

/// `Q_{(r,s)} = q_r q_s + 2 Σ_{i=1}^{s} (-1)^i q_{r+i} q_{s-i}`.
pub fn two_row_q(r: usize, s: usize, m: usize, degree_bound: usize) -> TruncatedPolynomial {
    let qs: Vec<TruncatedPolynomial> = (0..=r + s)
        .map(|i| q_poly(i, m, degree_bound))
        .collect();
    let mut p = &qs[r] * &qs[s];
    for i in 1..=s {
        let sign = if i % 2 == 0 { q(2) } else { q(-2) };
        p = &p + &(&qs[r + i] * &qs[s - i]).scale(&sign);
    }
    p
}

/// Pfaffian of an antisymmetric matrix given by its strict upper triangle,
/// expanded along the first row.
pub fn pfaffian<F>(size: usize, entry: &F, zero: &TruncatedPolynomial, one: &TruncatedPolynomial) -> TruncatedPolynomial
where
    F: Fn(usize, usize) -> TruncatedPolynomial,
{
    let idx: Vec<usize> = (0..size).collect();
    pfaffian_rec(&idx, entry, zero, one)
}

fn pfaffian_rec<F>(
    idx: &[usize],
    entry: &F,
    zero: &TruncatedPolynomial,
    one: &TruncatedPolynomial,
) -> TruncatedPolynomial
where
    F: Fn(usize, usize) -> TruncatedPolynomial,
{
    if idx.is_empty() {
        return one.clone();
    }
    if idx.len() % 2 == 1 {
        return zero.clone();
    }
    let mut acc = zero.clone();
    for j in 1..idx.len() {
        let rest: Vec<usize> = idx
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != 0 && t != j)
            .map(|(_, &v)| v)
            .collect();
        let term = &entry(idx[0], idx[j]) * &pfaffian_rec(&rest, entry, zero, one);
        acc = if j % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// The Schur Q-function `Q_λ(x_1..x_m)`, truncated at `degree_bound`.
pub fn schur_q(lambda: &StrictPartition, m: usize, degree_bound: usize) -> TruncatedPolynomial {
    let parts = lambda.parts();
    let l = parts.len();
    let zero = TruncatedPolynomial::zero(m, degree_bound);
    let one = TruncatedPolynomial::one(m, degree_bound);
    match l {
        0 => return one,
        1 => return q_poly(parts[0], m, degree_bound),
        _ => {}
    }
    let size = if l.is_multiple_of(2) { l } else { l + 1 };
    let entry = |i: usize, j: usize| {
        if j < l {
            two_row_q(parts[i], parts[j], m, degree_bound)
        } else {
            q_poly(parts[i], m, degree_bound)
        }
    };
    pfaffian(size, &entry, &zero, &one)
}

fn check_length(lambda: &StrictPartition, m: usize) -> Result<()> {
    if lambda.len() > m {
        return Err(Error::LengthExceedsRank {
            lambda: lambda.to_string(),
            length: lambda.len(),
            rank: m,
        });
    }
    Ok(())
}

/// `2^{(δ(l) - l)/2}`, the normalization relating `Q_λ` to `ch U^λ_m`.
pub fn char_normalization(lambda: &StrictPartition) -> Q {
    let halvings = (lambda.len() - lambda.delta()) / 2;
    Q::new(BigInt::one(), BigInt::one() << halvings)
}

/// Character of the irreducible q(m)-module `U^λ_m`.
pub fn char_u(lambda: &StrictPartition, m: usize, degree_bound: usize) -> Result<TruncatedPolynomial> {
    check_length(lambda, m)?;
    Ok(schur_q(lambda, m, degree_bound).scale(&char_normalization(lambda)))
}

/// `dim U^λ_m`, the character at `x = (1, ..., 1)`.
pub fn dim_u(lambda: &StrictPartition, m: usize) -> Result<u64> {
    let ch = char_u(lambda, m, lambda.size())?;
    let d = ch.evaluate_at_ones();
    debug_assert!(d.is_integer() && d.is_positive());
    d.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Construction(format!("dim U{lambda} overflows")))
}

/// Variable names `x1..xm, y1..yn` for two-alphabet polynomials.
pub fn xy_names(m: usize, n: usize) -> Vec<String> {
    (1..=m)
        .map(|i| format!("x{i}"))
        .chain((1..=n).map(|j| format!("y{j}")))
        .collect()
}

/// `Σ 2^{-l(λ)} Q_λ(x) Q_λ(y)` over strict λ with `|λ| ≤ degree`,
/// `l(λ) ≤ min(m, n)`, in the ring of `m + n` variables with bound `2*degree`.
pub fn q_cauchy_sum(m: usize, n: usize, degree: usize) -> TruncatedPolynomial {
    let bound = 2 * degree;
    let mut rhs = TruncatedPolynomial::zero(m + n, bound);
    for lambda in strict_partitions_up_to(degree, Some(m.min(n))) {
        let qx = schur_q(&lambda, m, degree).embed(0, m + n, bound);
        let qy = schur_q(&lambda, n, degree).embed(m, m + n, bound);
        let w = Q::new(BigInt::one(), BigInt::one() << lambda.len());
        rhs = &rhs + &(&qx * &qy).scale(&w);
    }
    rhs
}

/// `Π_{i ≤ m, j ≤ n} (1 + x_i y_j)/(1 - x_i y_j)`, each factor expanded as
/// `1 + 2 Σ_{r ≥ 1} (x_i y_j)^r`, truncated at total degree `2*degree`.
pub fn cauchy_product(m: usize, n: usize, degree: usize) -> TruncatedPolynomial {
    let bound = 2 * degree;
    let mut lhs = TruncatedPolynomial::one(m + n, bound);
    for i in 0..m {
        for j in 0..n {
            let mut factor = TruncatedPolynomial::one(m + n, bound);
            for r in 1..=degree as u32 {
                let mut e = vec![0; m + n];
                e[i] = r;
                e[m + j] = r;
                factor.add_term(e, q(2));
            }
            lhs = &lhs * &factor;
        }
    }
    lhs
}

/// Compares the product side of the Q-function Cauchy identity with the
/// Q-function sum, coefficient by coefficient, for every monomial of
/// x-degree and y-degree at most `degree`. With `negative_control` the
/// first coefficient of the sum is perturbed by +1.
pub fn cauchy_check(m: usize, n: usize, degree: usize, negative_control: bool) -> VerificationReport {
    let start = Instant::now();
    let params = Params::new()
        .with("m", m)
        .with("n", n)
        .with("degree", degree)
        .with_if(negative_control, "tamper", true);
    let mut report = ReportBuilder::new("cauchy-check", params);
    let lhs = cauchy_product(m, n, degree);
    let mut rhs = q_cauchy_sum(m, n, degree);
    if negative_control {
        let first = rhs
            .sorted_terms()
            .first()
            .map(|(e, _)| (*e).clone())
            .unwrap_or_else(|| vec![0; m + n]);
        rhs.add_term(first, Q::one());
    }
    let names = xy_names(m, n);
    let mut monomials: Vec<Exponents> = lhs
        .terms()
        .map(|(e, _)| e.clone())
        .chain(rhs.terms().map(|(e, _)| e.clone()))
        .collect();
    monomials.sort_by(|a, b| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    monomials.dedup();
    let mismatch = monomials.iter().find(|e| lhs.coeff(e) != rhs.coeff(e));
    let detail = mismatch.map(|e| {
        let mono = TruncatedPolynomial::monomial(e.clone(), Q::one(), 2 * degree).format_with(&names);
        format!(
            "coefficient of {mono}: product side {}, Q-function side {}",
            lhs.coeff(e),
            rhs.coeff(e)
        )
    });
    report.check("coefficients agree", mismatch.is_none(), || detail.unwrap_or_default());
    report.note(format!(
        "{} monomials compared; product side has {} terms",
        monomials.len(),
        lhs.len()
    ));
    report.finish(start)
}

/// For every strict `λ` with `|λ| <= max_size` and every `1 <= m <= max_m`:
/// `ch U^λ_m` has nonnegative integer coefficients when `l(λ) <= m`, and
/// `Q_λ` vanishes in `m` variables when `l(λ) > m`. With `negative_control`
/// the first character gets an extra `1/2` on its leading coefficient.
pub fn integrality_check(max_size: usize, max_m: usize, negative_control: bool) -> VerificationReport {
    let start = Instant::now();
    let params = Params::new()
        .with("max_size", max_size)
        .with("max_m", max_m)
        .with_if(negative_control, "tamper", true);
    let mut report = ReportBuilder::new("char-integrality", params);
    let mut bad_char = None;
    let mut bad_vanish = None;
    let mut characters = 0;
    let mut tampered = !negative_control;
    for lambda in strict_partitions_up_to(max_size, None) {
        for m in 1..=max_m {
            if lambda.len() <= m {
                let mut ch = match char_u(&lambda, m, lambda.size()) {
                    Ok(ch) => ch,
                    Err(e) => {
                        bad_char.get_or_insert(format!("{lambda} in {m} variables: {e}"));
                        continue;
                    }
                };
                if !tampered {
                    let lead = ch.sorted_terms().first().map(|(e, _)| (*e).clone());
                    if let Some(e) = lead {
                        ch.add_term(e, Q::new(BigInt::one(), BigInt::from(2)));
                    }
                    tampered = true;
                }
                characters += 1;
                if bad_char.is_none() && !ch.has_nonnegative_integer_coefficients() {
                    bad_char = Some(format!("ch U{lambda} in {m} variables"));
                }
            } else if bad_vanish.is_none() && !schur_q(&lambda, m, lambda.size()).is_zero() {
                bad_vanish = Some(format!("Q{lambda} in {m} variables"));
            }
        }
    }
    report.check(
        "characters have nonnegative integer coefficients",
        bad_char.is_none(),
        || bad_char.clone().unwrap_or_default(),
    );
    report.check("Q-functions vanish when the length exceeds the rank", bad_vanish.is_none(), || {
        bad_vanish.clone().unwrap_or_default()
    });
    report.note(format!("{characters} characters checked"));
    report.finish(start)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    fn poly(vars: usize, bound: usize, terms: &[(&[u32], i64)]) -> TruncatedPolynomial {
        let mut out = TruncatedPolynomial::zero(vars, bound);
        for (e, c) in terms {
            out.add_term(e.to_vec(), q(*c));
        }
        out
    }

    #[test]
    fn integrality_small() {
        assert!(integrality_check(5, 3, false).is_verified());
        assert!(!integrality_check(5, 3, true).is_verified());
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(elementary(1, 2, 4), poly(2, 4, &[(&[1, 0], 1), (&[0, 1], 1)]));
        assert!(elementary(3, 2, 4).is_zero());
        assert_eq!(
            elementary(2, 3, 4),
            poly(3, 4, &[(&[1, 1, 0], 1), (&[1, 0, 1], 1), (&[0, 1, 1], 1)])
        );
        assert_eq!(elementary(0, 2, 4), TruncatedPolynomial::one(2, 4));
    }

    #[test]
    fn complete_examples() {
        assert_eq!(complete(0, 2, 4), TruncatedPolynomial::one(2, 4));
        assert_eq!(complete(2, 1, 4), poly(1, 4, &[(&[2], 1)]));
        assert_eq!(
            complete(2, 2, 4),
            poly(2, 4, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)])
        );
    }

    #[test]
    fn q_examples() {
        assert_eq!(q_poly(0, 2, 4), TruncatedPolynomial::one(2, 4));
        assert_eq!(q_poly(1, 2, 4), poly(2, 4, &[(&[1, 0], 2), (&[0, 1], 2)]));
        assert_eq!(
            q_poly(2, 2, 4),
            poly(2, 4, &[(&[2, 0], 2), (&[1, 1], 4), (&[0, 2], 2)])
        );
    }

    #[test]
    fn schur_q_examples() {
        for k in 0..5 {
            assert_eq!(schur_q(&StrictPartition::row(k), 3, 6), q_poly(k, 3, 6));
        }
        assert_eq!(
            schur_q(&p(&[2, 1]), 2, 4),
            poly(2, 4, &[(&[2, 1], 4), (&[1, 2], 4)])
        );
        assert!(schur_q(&p(&[2, 1]), 1, 4).is_zero());
    }

    #[test]
    fn two_row_with_zero_second_part_is_q() {
        for r in 0..6 {
            assert_eq!(two_row_q(r, 0, 3, 6), q_poly(r, 3, 6));
        }
    }

    #[test]
    fn char_u_examples() {
        assert_eq!(char_u(&p(&[1]), 1, 2).unwrap(), poly(1, 2, &[(&[1], 2)]));
        assert_eq!(
            char_u(&p(&[2, 1]), 2, 4).unwrap(),
            poly(2, 4, &[(&[2, 1], 2), (&[1, 2], 2)])
        );
        assert_eq!(
            char_u(&p(&[3]), 2, 4).unwrap(),
            poly(2, 4, &[(&[3, 0], 2), (&[2, 1], 4), (&[1, 2], 4), (&[0, 3], 2)])
        );
        assert!(matches!(
            char_u(&p(&[2, 1]), 1, 4),
            Err(Error::LengthExceedsRank { .. })
        ));
    }

    #[test]
    fn dim_u_examples() {
        assert_eq!(dim_u(&p(&[2, 1]), 2).unwrap(), 4);
        assert_eq!(dim_u(&p(&[3]), 2).unwrap(), 12);
        assert_eq!(dim_u(&p(&[2]), 1).unwrap(), 2);
    }

    #[test]
    fn vanishing_beyond_rank() {
        for lambda in strict_partitions_up_to(8, None) {
            for m in 1..lambda.len() {
                assert!(schur_q(&lambda, m, 8).is_zero(), "{lambda} m={m}");
            }
        }
    }

    #[test]
    fn schur_q_is_symmetric() {
        for lambda in strict_partitions_up_to(6, Some(3)) {
            let f = schur_q(&lambda, 3, 6);
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                let mut perm = vec![0, 1, 2];
                perm.swap(a, b);
                assert_eq!(f.permute_vars(&perm), f, "{lambda}");
            }
        }
    }

    #[test]
    fn cauchy_small() {
        let lhs = cauchy_product(1, 1, 3);
        assert_eq!(
            lhs,
            poly(2, 6, &[(&[0, 0], 1), (&[1, 1], 2), (&[2, 2], 2), (&[3, 3], 2)])
        );
        assert_eq!(q_cauchy_sum(1, 1, 3), lhs);
        assert!(cauchy_check(1, 1, 3, false).is_verified());
        assert!(cauchy_check(2, 2, 4, false).is_verified());
        let tampered = cauchy_check(1, 1, 3, true);
        assert!(!tampered.is_verified());
        assert!(tampered.detail().unwrap().contains("coefficient of 1"));
    }
}
