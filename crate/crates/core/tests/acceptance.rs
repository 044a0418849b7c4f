//! Acceptance suite: one line per criterion, exact comparisons only.
//!
//! Expected values come either from small oracles written here (monomial
//! counts, shifted tableaux, powers of two) or from the stated tables.

use std::process::{Command, ExitCode};
use std::time::Instant;

use qhowe::dualities::{
    center_count, hom_dim, verify_hom_dim, verify_howe, verify_regular, verify_sergeev, verify_symmetric_power,
    verify_zero_weight, DimRow, HomDim, VerificationReport,
};
use qhowe::partitions::{strict_partitions, StrictPartition};
use qhowe::qalg::realization_check;
use qhowe::spingroup::{delta_invariants, verify_invariants};
use qhowe::symfunc::{cauchy_check, integrality_check, schur_q};

type Outcome = Result<String, String>;

fn sp(parts: &[usize]) -> StrictPartition {
    StrictPartition::new(parts.to_vec()).unwrap()
}

fn require(report: &VerificationReport) -> Result<(), String> {
    if report.is_verified() {
        Ok(())
    } else {
        Err(format!(
            "{} [{}]: {}",
            report.check_name(),
            report.params(),
            report.detail().unwrap_or("failed")
        ))
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn contributions(rows: &[DimRow]) -> Vec<(String, u64)> {
    rows.iter().map(|r| (r.lambda.to_string(), r.contribution)).collect()
}

// ---- oracles ----

/// Monomials of degree `k` in `d` even and `d` odd variables, by enumeration.
fn count_super_monomials(d: usize, k: usize) -> u64 {
    fn even(vars: usize, k: usize) -> u64 {
        if vars == 0 {
            return u64::from(k == 0);
        }
        (0..=k).map(|e| even(vars - 1, k - e)).sum()
    }
    fn odd(vars: usize, k: usize) -> u64 {
        if vars == 0 {
            return u64::from(k == 0);
        }
        odd(vars - 1, k) + if k > 0 { odd(vars - 1, k - 1) } else { 0 }
    }
    (0..=k).map(|j| odd(d, j) * even(d, k - j)).sum()
}

/// Standard shifted tableaux of shape `λ`, by removing corners.
fn shifted_tableaux(parts: &[usize]) -> u64 {
    if parts.iter().all(|&p| p == 0) {
        return 1;
    }
    let mut total = 0;
    for i in 0..parts.len() {
        let next = parts.get(i + 1).copied().unwrap_or(0);
        let removable = parts[i] > 0 && (parts[i] - 1 > next || (parts[i] == 1 && next == 0));
        if removable {
            let mut smaller = parts.to_vec();
            smaller[i] -= 1;
            total += shifted_tableaux(&smaller);
        }
    }
    total
}

/// `dim T^λ = 2^{n - floor(l/2)} g_λ` with `g_λ` the shifted tableaux count.
fn oracle_dim_t(parts: &[usize]) -> u64 {
    let n: usize = parts.iter().sum();
    (1u64 << (n - parts.len() / 2)) * shifted_tableaux(parts)
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

// ---- criteria ----

fn c1_cauchy() -> Outcome {
    for (m, n, d) in [(1, 1, 6), (2, 2, 8), (3, 2, 7), (3, 3, 6)] {
        require(&cauchy_check(m, n, d, false))?;
    }
    Ok("4 identities exact".into())
}

fn c2_integrality() -> Outcome {
    require(&integrality_check(8, 4, false))?;
    expect("Q(2,1) in 2 variables", schur_q(&sp(&[2, 1]), 2, 4).to_string(), "4*x1^2*x2 + 4*x1*x2^2".into())?;
    for lambda in strict_partitions(6, None).into_iter().filter(|l| l.len() == 3) {
        expect("Q_λ with l(λ) > m", schur_q(&lambda, 2, 6).is_zero(), true)?;
    }
    Ok("|λ| <= 8, m <= 4".into())
}

fn c3_realization() -> Outcome {
    let mut count = 0;
    for m in 1..=2 {
        for n in 1..=2 {
            for k in 1..=3 {
                require(&realization_check(m, n, k, false))?;
                count += 1;
            }
        }
    }
    require(&realization_check(3, 2, 2, false))?;
    Ok(format!("{} parameter sets", count + 1))
}

fn c4_howe() -> Outcome {
    let mut tables = Vec::new();
    for (m, n, k) in [(1, 1, 2), (1, 2, 3), (2, 2, 2), (2, 2, 3)] {
        let r = verify_howe(m, n, k, false);
        require(&r)?;
        expect("Howe table total", r.dims_total(), count_super_monomials(m * n, k))?;
        tables.push(contributions(r.dims()));
    }
    expect("table at (2,2,3)", &tables[3], &vec![("(3)".into(), 72), ("(2,1)".into(), 16)])?;
    expect("table at (2,2,2)", &tables[2], &vec![("(2)".into(), 32)])?;
    Ok("88 = 72 + 16, 32 = 32".into())
}

fn c5_sergeev() -> Outcome {
    for (m, k) in [(1, 2), (2, 2), (2, 3), (3, 3)] {
        let r = verify_sergeev(m, k, false);
        require(&r)?;
        expect("Sergeev table total", r.dims_total(), ((2 * m) as u64).pow(k as u32))?;
        for row in r.dims() {
            expect("dim T column", row.dim_other, oracle_dim_t(row.lambda.parts()))?;
        }
        if (m, k) == (2, 3) {
            let rows: Vec<(String, u64, u64, String)> = r
                .dims()
                .iter()
                .map(|d| (d.lambda.to_string(), d.dim_u, d.dim_other, d.weight.clone()))
                .collect();
            expect(
                "table at (2,3)",
                rows,
                vec![("(3)".into(), 12, 8, "1/2".into()), ("(2,1)".into(), 4, 4, "1".into())],
            )?;
        }
    }
    Ok("64 = (1/2)*12*8 + 4*4".into())
}

fn c6_symmetric_power() -> Outcome {
    for m in 1..=3 {
        for k in 1..=4 {
            let r = verify_symmetric_power(m, k, false);
            require(&r)?;
            for name in ["commutant dimension", "character equals q_k"] {
                expect(name, r.subcheck(name).map(|s| s.passed), Some(true))?;
            }
        }
    }
    Ok("m <= 3, k <= 4".into())
}

fn c7_invariants() -> Outcome {
    for m in 1..=2 {
        for n in 1..=2 {
            for k in 1..=3 {
                let (_, inv) = delta_invariants(k, m, n).map_err(|e| e.to_string())?;
                expect("invariant dimension", inv.len() as u64, count_super_monomials(m * n, k))?;
                require(&verify_invariants(k, m, n, false))?;
            }
        }
    }
    Ok("m, n <= 2, k <= 3".into())
}

fn c8_zero_weight() -> Outcome {
    let cases: [(&[usize], u64, u64); 4] = [(&[1], 2, 2), (&[2], 4, 2), (&[2, 1], 4, 1), (&[3], 8, 2)];
    for (parts, dim_z, comm) in cases {
        expect("oracle dim T", oracle_dim_t(parts), dim_z)?;
        expect("oracle 2^delta", 1u64 << (parts.len() % 2), comm)?;
        let r = verify_zero_weight(&sp(parts), false);
        require(&r)?;
        let get = |k: &str| r.params().get(k).and_then(|v| v.as_u64());
        expect("(dim Z, commutant)", (get("dim_z"), get("commutant_dim")), (Some(dim_z), Some(comm)))?;
    }
    Ok("(2,2) (4,2) (4,1) (8,2)".into())
}

fn c9_regular() -> Outcome {
    for n in 1..=3u64 {
        let r = verify_regular(n as usize, false);
        require(&r)?;
        expect("regular total", r.dims_total(), (1 << n) * factorial(n))?;
        if n == 3 {
            expect(
                "table at n = 3",
                contributions(r.dims()),
                vec![("(3)".into(), 32), ("(2,1)".into(), 16)],
            )?;
        }
    }
    Ok("48 = 32 + 16".into())
}

fn c10_hom_dim() -> Outcome {
    for parts in [&[1][..], &[2], &[3], &[2, 1]] {
        let odd = parts.len() % 2;
        let got = hom_dim(&sp(parts), 2).map_err(|e| e.to_string())?;
        expect("Hom split", got, HomDim { even: 1, odd })?;
        expect("Hom total", got.total(), 1 << odd)?;
        require(&verify_hom_dim(&sp(parts), 2, false))?;
    }
    Ok("2^delta with splits (1,1) and (1,0)".into())
}

fn c11_center() -> Outcome {
    for k in 0..=4 {
        let c = center_count(1, k).map_err(|e| e.to_string())?;
        expect("m = 1 invariants", c.invariant_dim, 1)?;
        expect("m = 1 strict partitions", c.strict_count, strict_partitions(k, Some(1)).len())?;
    }
    let m2: Vec<String> = (0..=4)
        .map(|k| {
            center_count(2, k)
                .map(|c| format!("{}/{}", c.invariant_dim, c.strict_count))
                .unwrap_or_else(|e| e.to_string())
        })
        .collect();
    Ok(format!("m = 1 matches in degrees 0..4; m = 2 (non-blocking): {}", m2.join(" ")))
}

fn c12_negative_controls() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_qhowe");
    let runs: [&[&str]; 12] = [
        &["cauchy-check", "--m", "2", "--n", "2", "--degree", "4"],
        &["realization-check", "--m", "2", "--n", "2", "--k", "2"],
        &["howe-verify", "--m", "2", "--n", "2", "--k", "2"],
        &["sergeev-verify", "--m", "2", "--k", "2"],
        &["sympower-verify", "--m", "2", "--k", "3"],
        &["invariants-check", "--m", "1", "--n", "1", "--k", "2"],
        &["zero-weight", "--lambda", "2,1"],
        &["regular-verify", "--n", "2"],
        &["hom-dim", "--lambda", "2", "--m", "2"],
        &["center-check", "--m", "1", "--k", "2"],
        &["center-check", "--m", "2", "--k", "3"],
        &["sergeev-verify", "--m", "1", "--k", "3"],
    ];
    for args in runs {
        let code = |tamper: bool| {
            let mut cmd = Command::new(bin);
            cmd.args(args);
            if tamper {
                cmd.arg("--tamper");
            }
            cmd.output().map(|o| o.status.code())
        };
        let clean = code(false).map_err(|e| e.to_string())?;
        let tampered = code(true).map_err(|e| e.to_string())?;
        expect(&format!("exit codes of {}", args.join(" ")), (clean, tampered), (Some(0), Some(1)))?;
    }
    Ok(format!("{} verifiers exit 0 clean and 1 tampered", runs.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("Q-function Cauchy identity", c1_cauchy),
        ("character integrality", c2_integrality),
        ("operator realization", c3_realization),
        ("Howe duality", c4_howe),
        ("Sergeev duality", c5_sergeev),
        ("symmetric powers", c6_symmetric_power),
        ("invariant space", c7_invariants),
        ("zero-weight spaces", c8_zero_weight),
        ("regular representation", c9_regular),
        ("Hom dimensions", c10_hom_dim),
        ("center count", c11_center),
        ("negative controls", c12_negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(summary) => println!("criterion {:>2} {name}: PASS ({summary}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
