//! Command-line front end.

mod grid;
mod output;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Parser, Subcommand};

pub use grid::grid;
pub use output::Format;

use crate::dualities::{
    center_check, dimension_table, sym_dim, verify_hom_dim, verify_howe, verify_regular, verify_sergeev,
    verify_symmetric_power, verify_zero_weight, VerificationReport, AMBIENT_BOUND, SERGEEV_BOUND,
};
use crate::partitions::StrictPartition;
use crate::qalg::realization_check;
use crate::spingroup::{verify_invariants, SpinGroupElement};
use crate::symfunc::{cauchy_check, char_u, schur_q};

/// Bound on `(2m)^k (2n)^k` for the invariant-space check.
const PAIR_BOUND: usize = 4096;
/// Bounds on the Cauchy check: variables per alphabet and degree.
const CAUCHY_VARS: usize = 4;
const CAUCHY_DEGREE: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "qhowe", version, about = "Exact checks of queer Lie superalgebra dualities")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Perturb one operator entry in every verifier (negative control).
    #[arg(long, hide = true, global = true)]
    tamper: bool,

    #[command(subcommand)]
    command: Command,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err("expected a positive integer".into()),
    }
}

fn partition(s: &str) -> Result<StrictPartition, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Schur Q-function Q_λ (or the character of U^λ) in m variables.
    Qfun {
        #[arg(long, value_parser = partition)]
        lambda: StrictPartition,
        #[arg(long, value_parser = positive)]
        vars: usize,
        /// Degree bound; defaults to |λ|.
        #[arg(long)]
        degree: Option<usize>,
        /// Print ch U^λ instead of Q_λ.
        #[arg(long)]
        character: bool,
    },
    /// Check the Q-function Cauchy identity up to degree D in each alphabet.
    CauchyCheck {
        #[arg(long, value_parser = positive)]
        m: usize,
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Verify Sergeev duality on the k-th tensor power of C^{m|m}.
    SergeevVerify {
        #[arg(long, value_parser = positive)]
        m: usize,
        #[arg(long, value_parser = positive)]
        k: usize,
    },
    /// Verify (q(m), q(n)) Howe duality on S^k(C^{mn|mn}).
    HoweVerify {
        #[arg(long, value_parser = positive)]
        m: usize,
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long, value_parser = positive)]
        k: usize,
    },
    /// Verify that S^k(C^{m|m}) is irreducible of type Q with character q_k.
    SympowerVerify {
        #[arg(long, value_parser = positive)]
        m: usize,
        #[arg(long, value_parser = positive)]
        k: usize,
    },
    /// Verify the zero-weight space of U^λ as a Sergeev group module.
    ZeroWeight {
        #[arg(long, value_parser = partition)]
        lambda: StrictPartition,
    },
    /// Verify the regular representation of the Sergeev group inside S^n(C^{n|n} ⊗ C^n).
    RegularVerify {
        #[arg(long, value_parser = positive)]
        n: usize,
    },
    /// Graded Hom dimension of U^λ_m with its parity split.
    HomDim {
        #[arg(long, value_parser = partition)]
        lambda: StrictPartition,
        #[arg(long, value_parser = positive)]
        m: usize,
    },
    /// Count degree-k adjoint invariants of q(m) against strict partitions.
    CenterCheck {
        #[arg(long, value_parser = positive)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
    /// Dimension table for Sergeev (no --n) or Howe (with --n) duality.
    Dims {
        #[arg(long, value_parser = positive)]
        m: usize,
        #[arg(long, value_parser = positive)]
        n: Option<usize>,
        #[arg(long)]
        k: usize,
    },
    /// Check the differential-operator realization of q(m) and q(n).
    RealizationCheck {
        #[arg(long, value_parser = positive)]
        m: usize,
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long, value_parser = positive)]
        k: usize,
    },
    /// Check the isomorphism from S^k(C^{mn|mn}) to the diagonal invariants.
    InvariantsCheck {
        #[arg(long, value_parser = positive)]
        m: usize,
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long, value_parser = positive)]
        k: usize,
    },
    /// Multiply two elements of B_k given as words such as "a1*s2".
    SpingroupMult {
        left: String,
        right: String,
        /// Degree; inferred from the largest index when omitted.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run the full acceptance grid.
    Grid,
}

enum Outcome {
    Reports(Vec<VerificationReport>, bool),
    Done,
}

fn usage(msg: String) -> Result<Outcome, String> {
    Err(msg)
}

fn bounded(what: &str, dim: u64, bound: usize) -> Result<(), String> {
    if dim > bound as u64 {
        Err(format!("{what} has dimension {dim}, above the limit {bound}"))
    } else {
        Ok(())
    }
}

fn pow(base: usize, exp: usize) -> u64 {
    (base as u64).saturating_pow(exp as u32)
}

fn execute(cli: &Cli, out: &mut impl Write) -> Result<Outcome, String> {
    let t = cli.tamper;
    let single = |r: VerificationReport| Ok(Outcome::Reports(vec![r], true));
    match &cli.command {
        Command::Qfun { lambda, vars, degree, character } => {
            let degree = degree.unwrap_or(lambda.size());
            let p = if *character {
                char_u(lambda, *vars, degree).map_err(|e| e.to_string())?
            } else {
                schur_q(lambda, *vars, degree)
            };
            output::polynomial(out, &p, lambda.parts(), *character, cli.format).map_err(|e| e.to_string())?;
            Ok(Outcome::Done)
        }
        Command::CauchyCheck { m, n, degree } => {
            if *m > CAUCHY_VARS || *n > CAUCHY_VARS || *degree > CAUCHY_DEGREE {
                return usage(format!(
                    "cauchy-check supports at most {CAUCHY_VARS} variables per alphabet and degree {CAUCHY_DEGREE}"
                ));
            }
            single(cauchy_check(*m, *n, *degree, t))
        }
        Command::SergeevVerify { m, k } => {
            bounded("the tensor space", pow(2 * m, *k), SERGEEV_BOUND)?;
            single(verify_sergeev(*m, *k, t))
        }
        Command::HoweVerify { m, n, k } => {
            bounded("S^k(C^{mn|mn})", sym_dim(m * n, *k), AMBIENT_BOUND)?;
            single(verify_howe(*m, *n, *k, t))
        }
        Command::SympowerVerify { m, k } => {
            bounded("S^k(C^{m|m})", sym_dim(*m, *k), AMBIENT_BOUND)?;
            single(verify_symmetric_power(*m, *k, t))
        }
        Command::ZeroWeight { lambda } => {
            let n = lambda.size();
            if n == 0 {
                return usage("zero-weight needs a nonempty partition".into());
            }
            bounded("the ambient space", sym_dim(lambda.len().max(2) * n, n), AMBIENT_BOUND)?;
            single(verify_zero_weight(lambda, t))
        }
        Command::RegularVerify { n } => {
            bounded("the ambient space", sym_dim(n * n, *n), AMBIENT_BOUND)?;
            single(verify_regular(*n, t))
        }
        Command::HomDim { lambda, m } => {
            if lambda.is_empty() || lambda.len() > *m {
                return usage(format!("hom-dim needs a nonempty partition of length at most m = {m}"));
            }
            bounded("the tensor space", pow(2 * m, lambda.size()), AMBIENT_BOUND)?;
            single(verify_hom_dim(lambda, *m, t))
        }
        Command::CenterCheck { m, k } => {
            bounded("S^k(q(m))", sym_dim(m * m, *k), AMBIENT_BOUND)?;
            single(center_check(*m, *k, t))
        }
        Command::Dims { m, n, k } => single(dimension_table(*m, *n, *k)),
        Command::RealizationCheck { m, n, k } => {
            bounded("S^k(C^{mn|mn})", sym_dim(m * n, *k), AMBIENT_BOUND)?;
            single(realization_check(*m, *n, *k, t))
        }
        Command::InvariantsCheck { m, n, k } => {
            bounded("the pair space", pow(2 * m, *k).saturating_mul(pow(2 * n, *k)), PAIR_BOUND)?;
            bounded("S^k(C^{mn|mn})", sym_dim(m * n, *k), AMBIENT_BOUND)?;
            single(verify_invariants(*k, *m, *n, t))
        }
        Command::SpingroupMult { left, right, k } => {
            let k = k.unwrap_or_else(|| SpinGroupElement::infer_k(left).max(SpinGroupElement::infer_k(right)));
            let a = SpinGroupElement::parse(left, k).map_err(|e| e.to_string())?;
            let b = SpinGroupElement::parse(right, k).map_err(|e| e.to_string())?;
            let g = a.multiply(&b).map_err(|e| e.to_string())?;
            output::group_element(out, &g, cli.format).map_err(|e| e.to_string())?;
            Ok(Outcome::Done)
        }
        Command::Grid => Ok(Outcome::Reports(grid(t), false)),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code: 0 when every check verified, 1 when one failed, 2 on usage
/// errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(Outcome::Done) => 0,
        Ok(Outcome::Reports(reports, single)) => {
            match output::reports(&mut out, &reports, cli.format, single) {
                // reader closed early; the verdict still stands
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                Err(e) => {
                    eprintln!("error: {e}");
                    return 1;
                }
                Ok(()) => {}
            }
            if reports.iter().all(VerificationReport::is_verified) {
                0
            } else {
                1
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}
