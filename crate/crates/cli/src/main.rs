//! `modcurve`: cusps, genera, equations and the canonical model of X_q from the command line.
//!
//! Exit status: 0 success, 1 a verification check failed, 2 bad arguments,
//! 3 the mathematics asked for is unsupported.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use modcurve::Error;

#[derive(Parser, Debug)]
#[command(name = "modcurve", version, about = "Exact computations on the modular curves X_q")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for the numeric verifier.
    #[arg(long, default_value_t = 2024, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// g_q, and g_q^n with h and R when --n is given.
    Genus {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: Option<u32>,
    },
    /// The cusps of X_q^n as τ_n-orbits of cusps of X_q.
    Cusps {
        #[arg(long)]
        q: u32,
        /// Defaults to q (the cusps of X_q).
        #[arg(long)]
        n: Option<u32>,
        /// Cross-check every width against the congruence scan.
        #[arg(long)]
        widths: bool,
        /// Count cusps by width, by formula and directly.
        #[arg(long)]
        distribution: bool,
    },
    /// Rotation number of τ_n at a cusp.
    Rotation {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// `inf` or X/Z.
        #[arg(long, allow_hyphen_values = true)]
        cusp: String,
    },
    /// Equation of X_q as a cyclic cover of X_q^n.
    Equation(EquationArgs),
    /// Facts about PSL(2, ℤ/q) by enumeration.
    Group(GroupArgs),
    /// Golden tables and oracle cross-checks.
    Verify(VerifyArgs),
    /// Solve for the branch constant from a Möbius symmetry.
    LiftSolve {
        #[arg(long, default_value_t = 8)]
        q: u32,
        /// Branch indices to swap (0-based, the count of finite points means ∞).
        #[arg(long, num_args = 2)]
        swap: Option<Vec<usize>>,
    },
    /// The canonical model of X_8 and its automorphisms σ.
    Canonical {
        /// Value of the branch constant.
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        a: String,
        /// Check only σ_j.
        #[arg(long)]
        eta: Option<u32>,
        /// Derive the σ's and a from the constraints.
        #[arg(long)]
        eliminate: bool,
    },
}

#[derive(Args, Debug)]
pub struct EquationArgs {
    #[arg(long)]
    q: u32,
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Move branch points to ∞, 0, 1.
    #[arg(long)]
    normalize: bool,
    /// largest-to-infinity or smallest-to-infinity.
    #[arg(long, default_value = "largest-to-infinity")]
    convention: String,
    /// Determine a single remaining constant from the lift condition.
    #[arg(long)]
    solve_constants: bool,
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    order: bool,
    #[arg(long)]
    max_order: bool,
    #[arg(long)]
    center: bool,
    /// Elements sending the first cusp class to the second.
    #[arg(long, num_args = 2, value_names = ["FROM", "TO"], allow_hyphen_values = true)]
    cusp_maps: Option<Vec<String>>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Comma-separated table numbers among 1, 2, 6, 7.
    #[arg(long, value_delimiter = ',')]
    tables: Vec<u32>,
    /// Largest level for table and oracle checks.
    #[arg(long)]
    q_max: Option<u32>,
    #[arg(long)]
    oracles: bool,
    #[arg(long)]
    max_orders: bool,
    #[arg(long)]
    canonical: bool,
    #[arg(long)]
    iso: bool,
    /// Sample count for --iso.
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Unsupported(_) | Error::NoSolution(_) | Error::NonIntegral(_) | Error::NotBranchPermutation => 3,
        Error::Divergence { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match commands::run(&cli.command, cli.seed) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("modcurve: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    let body = match cli.format {
        Format::Text => out.render_text(),
        Format::Json => serde_json::to_string_pretty(&out.report).expect("serializable"),
    };
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{body}");
    match out.report.first_failure() {
        None => ExitCode::SUCCESS,
        Some(c) => {
            eprintln!("modcurve: check '{}' failed: expected {}, got {}", c.name, c.expected, c.got);
            ExitCode::from(1)
        }
    }
}
