//! `funtf`: generate operator sets, decide balance, certify moving tight
//! frames and run the erasure demo.
//!
//! Exit codes: 0 success or verdict true, 1 verdict false, 2 usage error,
//! 3 malformed input.

mod demo;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use funtf_core::{
    build_minimal_balanced, build_pairing_matrix, enumerate_full_with_cap, is_balanced, verify_moving_funtf,
    witness_unbalanced, BalanceReport, FrameReport, Metadata, OperatorSet, OperatorSetDocument, UnbalancedWitness,
    DEFAULT_ENUMERATION_CAP,
};
use serde::Serialize;

const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_MALFORMED: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "funtf",
    version,
    about = "Balanced signed-involution sets and moving unit tight frames on S^(2n-1)"
)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// Absolute tolerance on frame-operator entries.
    #[arg(long, global = true, default_value_t = funtf_core::DEFAULT_TOLERANCE)]
    tol: f64,

    /// Random sphere points checked in addition to the probe points.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Omit the creation timestamp from generated documents.
    #[arg(long, global = true)]
    no_timestamp: bool,

    /// Largest n accepted by gen-full.
    #[arg(long, global = true, value_name = "N")]
    cap_override: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Every operator of A_2n, in canonical order.
    GenFull { n: usize },
    /// The balanced set of size (2n-1)*2^(n-1).
    GenMin { n: usize },
    /// Exact balance check of an operator-set document.
    CheckBalance { input: PathBuf },
    /// Numerical moving-frame certification of an operator-set document.
    CheckFuntf { input: PathBuf },
    /// Print the 2n x 2n pairing matrix.
    Matrix { n: usize },
    /// Erase frame coefficients and compare against a basis losing as many.
    DemoErasure {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        point_seed: u64,
        /// Number of coefficients erased per trial.
        #[arg(long = "erase", value_name = "M", default_value_t = 1)]
        erase: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn malformed(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_MALFORMED,
            message: message.into(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("cannot write to stdout: {e}"))),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn load(path: &Path) -> Result<OperatorSet, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    funtf_core::document::read_set(&text).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))
}

fn write_document(cli: &Cli, set: &OperatorSet, generator: &str) -> CmdResult {
    let created = (!cli.no_timestamp).then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    let doc = OperatorSetDocument::from_set(
        set,
        Some(Metadata {
            generator: Some(generator.to_string()),
            created,
        }),
    );
    emit(cli.output.as_deref(), &doc.to_json())?;
    Ok(0)
}

#[derive(Serialize)]
struct FuntfReport {
    balanced: bool,
    set_size: usize,
    frame: FrameReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<UnbalancedWitness>,
}

fn verdict(ok: bool) -> u8 {
    if ok {
        0
    } else {
        EXIT_FALSE
    }
}

fn check_balance(set: &OperatorSet) -> Result<BalanceReport, Failure> {
    is_balanced(set).map_err(|e| Failure::malformed(e.to_string()))
}

fn run(cli: &Cli) -> CmdResult {
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        return Err(Failure::usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    match &cli.command {
        Command::GenFull { n } => {
            let cap = cli.cap_override.unwrap_or(DEFAULT_ENUMERATION_CAP);
            let set = enumerate_full_with_cap(*n, cap).map_err(|e| Failure::usage(e.to_string()))?;
            write_document(cli, &set, "full-enumeration")
        }
        Command::GenMin { n } => {
            let set = build_minimal_balanced(*n).map_err(|e| Failure::usage(e.to_string()))?;
            write_document(cli, &set, "minimal-balanced")
        }
        Command::CheckBalance { input } => {
            let set = load(input)?;
            let report = check_balance(&set)?;
            emit(cli.output.as_deref(), &to_json(&report))?;
            Ok(verdict(report.balanced))
        }
        Command::CheckFuntf { input } => {
            let set = load(input)?;
            let balance = check_balance(&set)?;
            let frame = verify_moving_funtf(&set, cli.samples, cli.seed, cli.tol)
                .map_err(|e| Failure::malformed(e.to_string()))?;
            let witness = if !frame.tight && !balance.balanced {
                Some(witness_unbalanced(&set, &balance).map_err(|e| Failure::malformed(e.to_string()))?)
            } else {
                None
            };
            let tight = frame.tight;
            let report = FuntfReport {
                balanced: balance.balanced,
                set_size: set.len(),
                frame,
                witness,
            };
            emit(cli.output.as_deref(), &to_json(&report))?;
            Ok(verdict(tight))
        }
        Command::Matrix { n } => {
            let m = build_pairing_matrix(*n).map_err(|e| Failure::usage(e.to_string()))?;
            emit(cli.output.as_deref(), &m.to_string())?;
            Ok(0)
        }
        Command::DemoErasure {
            input,
            point_seed,
            erase,
            trials,
        } => {
            let set = load(input)?;
            if *erase >= set.len() {
                return Err(Failure::usage(format!(
                    "--erase must be below the set size {}, got {erase}",
                    set.len()
                )));
            }
            if !check_balance(&set)?.balanced {
                return Err(Failure {
                    code: EXIT_FALSE,
                    message: "the erasure demo needs a balanced set".into(),
                });
            }
            let report =
                demo::run(&set, *point_seed, cli.seed, *erase, *trials).map_err(|e| Failure::usage(e.to_string()))?;
            emit(cli.output.as_deref(), &to_json(&report))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("funtf: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
