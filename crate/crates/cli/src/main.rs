//! `tgx` — exact classification, factorization, and automorphism queries
//! over finitely generated field extensions of Q presented as towers.
//!
//! Exit codes: 0 definite result; 1 parse or usage error; 2 mathematical
//! input error (reducible minimal polynomial, invalid embedding) or engine
//! error; 3 under `--strict` when any requested verdict is Unknown.

mod queries;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use queries::Failure;

const EXIT_OK: u8 = 0;
const EXIT_PARSE: u8 = 1;
const EXIT_MATH: u8 = 2;
const EXIT_STRICT_UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(
    name = "tgx",
    version,
    about = "Exact symbolic classifier for field towers over Q",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Options shared by every subcommand.
#[derive(Args)]
pub struct Common {
    /// Tower description file (`field Q` / `var s, t` / `gen a : a^2 - 2`).
    #[arg(long, value_name = "FILE")]
    tower: PathBuf,

    /// Nice-basis specification: `default` or a string `"<Δ′; A>"` with two
    /// `;`-separated lists of comma-separated element expressions.
    #[arg(long, default_value = "default", value_name = "SPEC")]
    basis: String,

    /// Emit the machine-readable JSON report instead of text.
    #[arg(long)]
    json: bool,

    /// Exit with code 3 when any requested verdict is Unknown.
    #[arg(long)]
    strict: bool,

    /// Candidate bases examined by the tame-search classifier.
    #[arg(long, default_value_t = 25, value_name = "N")]
    basis_bound: usize,

    /// Maximum degree of subfield generators scanned by the absolute
    /// refutation.
    #[arg(long, default_value_t = 3, value_name = "N")]
    subfield_degree_bound: usize,

    /// Scanned polynomial coefficients range over 0, ±1, ..., ±N.
    #[arg(long, default_value_t = 2, value_name = "N")]
    coeff_bound: i64,

    /// Worker-thread cap for search delegation. Searches merge
    /// deterministically, so output is identical for every value.
    #[arg(long, default_value_t = 1, value_name = "N")]
    threads: usize,

    /// Report wall-clock time (breaks byte-for-byte output stability).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide the property hierarchy (quasi-galois, galois, tame, strong,
    /// absolute, separable generation) with certificates and witnesses.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Subfield presentation file; narrows the query to the Galois
        /// property over that subfield.
        #[arg(long, value_name = "FILE")]
        subfield: Option<PathBuf>,
    },
    /// Factor a polynomial in the reserved indeterminate X over the tower.
    Factor {
        #[command(flatten)]
        common: Common,
        /// Polynomial expression, e.g. "X^3 + X - (t^3 + t)".
        #[arg(long, value_name = "EXPR")]
        poly: String,
    },
    /// List the automorphisms over K(Δ′) with a verified group table.
    Aut {
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate the conjugates over K(Δ′) and decide containment.
    Conjugations {
        #[command(flatten)]
        common: Common,
    },
    /// Test linear disjointness of K(Δ′) and K(A) for the given basis.
    Disjoint {
        #[command(flatten)]
        common: Common,
    },
    /// Combined classify + aut + conjugations + disjoint report.
    Report {
        #[command(flatten)]
        common: Common,
    },
}

impl Cmd {
    fn common(&self) -> &Common {
        match self {
            Cmd::Classify { common, .. }
            | Cmd::Factor { common, .. }
            | Cmd::Aut { common }
            | Cmd::Conjugations { common }
            | Cmd::Disjoint { common }
            | Cmd::Report { common } => common,
        }
    }
}

/// `TGX_SEED` fixes the search order of randomized strategies. Every
/// search in this engine is already deterministic, so the value is
/// validated and recorded but changes nothing.
fn validate_seed_env() -> Result<(), String> {
    match std::env::var("TGX_SEED") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(|_| ())
            .map_err(|_| format!("TGX_SEED must be an unsigned integer, got `{v}`")),
        Err(_) => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let kind = e.kind();
            if kind == ErrorKind::DisplayHelp || kind == ErrorKind::DisplayVersion {
                print!("{e}");
                return ExitCode::from(EXIT_OK);
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_PARSE);
        }
    };
    if let Err(msg) = validate_seed_env() {
        eprintln!("error[E_SEED]: {msg}");
        return ExitCode::from(EXIT_PARSE);
    }
    if cli.cmd.common().threads == 0 {
        eprintln!("error[E_USAGE]: --threads must be at least 1");
        return ExitCode::from(EXIT_PARSE);
    }

    let started = Instant::now();
    match run(&cli.cmd) {
        Ok((outcome, digest)) => {
            let common = cli.cmd.common();
            let elapsed = started.elapsed().as_millis();
            let timing_ms = if common.timing { elapsed } else { 0 };
            let engine = format!("tgx {}", env!("CARGO_PKG_VERSION"));
            if common.json {
                print!(
                    "{}",
                    outcome.render_machine(timing_ms, &engine, &digest)
                );
            } else {
                let t = if common.timing { Some(timing_ms) } else { None };
                print!("{}", outcome.render_text(t));
            }
            if common.strict && outcome.any_unknown {
                ExitCode::from(EXIT_STRICT_UNKNOWN)
            } else {
                ExitCode::from(EXIT_OK)
            }
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error[E_PARSE]: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error[E_MATH]: {msg}");
            ExitCode::from(EXIT_MATH)
        }
    }
}

/// Executes the subcommand, returning its outcome and the digest of every
/// input that shaped it.
fn run(cmd: &Cmd) -> Result<(report::Outcome, String), Failure> {
    let common = cmd.common();
    let (tower, tower_src) = queries::load_tower(&common.tower)?;
    let bounds_desc = format!(
        "{}/{}/{}",
        common.basis_bound, common.subfield_degree_bound, common.coeff_bound
    );
    match cmd {
        Cmd::Classify { subfield, .. } => {
            let (sub, sub_src) = match subfield {
                Some(p) => {
                    let (s, src) = queries::load_subfield(p, &tower)?;
                    (Some(s), src)
                }
                None => (None, String::new()),
            };
            let outcome = queries::classify_cmd(&tower, common, sub.as_ref())?;
            let digest = report::input_digest(&[
                "classify",
                &tower_src,
                &common.basis,
                &sub_src,
                &bounds_desc,
            ]);
            Ok((outcome, digest))
        }
        Cmd::Factor { poly, .. } => {
            let outcome = queries::factor_cmd(&tower, poly)?;
            let digest = report::input_digest(&["factor", &tower_src, poly]);
            Ok((outcome, digest))
        }
        Cmd::Aut { .. } => {
            let basis = queries::resolve_basis(&tower, &common.basis)?;
            let outcome = queries::aut_cmd(&tower, &basis)?;
            let digest = report::input_digest(&["aut", &tower_src, &common.basis]);
            Ok((outcome, digest))
        }
        Cmd::Conjugations { .. } => {
            let basis = queries::resolve_basis(&tower, &common.basis)?;
            let outcome = queries::conjugations_cmd(&tower, &basis)?;
            let digest =
                report::input_digest(&["conjugations", &tower_src, &common.basis]);
            Ok((outcome, digest))
        }
        Cmd::Disjoint { .. } => {
            let basis = queries::resolve_basis(&tower, &common.basis)?;
            let outcome = queries::disjoint_cmd(&tower, &basis)?;
            let digest = report::input_digest(&["disjoint", &tower_src, &common.basis]);
            Ok((outcome, digest))
        }
        Cmd::Report { .. } => {
            let basis = queries::resolve_basis(&tower, &common.basis)?;
            let outcome = queries::report_cmd(&tower, common, &basis)?;
            let digest = report::input_digest(&[
                "report",
                &tower_src,
                &common.basis,
                &bounds_desc,
            ]);
            Ok((outcome, digest))
        }
    }
}
