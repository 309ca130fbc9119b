//! Command-line front end: bound evaluation, constant certification, and the
//! exhaustive verification scans, with deterministic CSV/JSON reports.
//!
//! Exit codes: 0 success, 1 verification/certification failure, 2 usage
//! error (including violated mathematical preconditions), 3 resource limit.

mod report;

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use raygen::bounds::constants::{
    ISOGENY_FACTOR, MAIN_LOG_COEFF, MAIN_OFFSET, MAIN_OMEGA_COEFF, MAIN_REAL_PLACES_COEFF,
    UNIT_GROUP_FACTOR,
};
use raygen::bounds::{
    certify_constants, cyclotomic_relative_bound, isogeny_bound, main_bound, remark_estimates,
    zm_bound, BoundInput, Certification,
};
use raygen::quadforms::{scan_discriminants, ConnectivityResult, QuadScanConfig};
use raygen::zmstar::{scan, ScanConfig, ZmVerificationResult};
use serde::Serialize;

use report::{CsvRow, Report, Summary, SCHEMA_VERSION};

#[derive(Parser)]
#[command(
    name = "raygen",
    version,
    about = "Explicit bounds on prime generators of abelian group quotients, \
             with exhaustive empirical verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for scans (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Prime-sieve ceiling for verification walks.
    #[arg(long, global = true)]
    sieve_limit: Option<u64>,

    /// Ceiling on the number of subgroups examined per modulus.
    #[arg(long, global = true)]
    subgroup_cap: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one of the bound formulas.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Certify the numerical constants behind the formulas.
    #[command(subcommand)]
    Constants(ConstantsCmd),
    /// Exhaustively verify a bound over a range of instances.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum BoundCmd {
    /// General bound: (index·(2.71·log(Δ·N(m₀)) + 1.29·|m∞| + 1.38·ω(m₀)) + 4.13)².
    Ray {
        /// Absolute value of the field discriminant.
        #[arg(long)]
        delta: u64,
        /// Norm of the finite part of the modulus.
        #[arg(long)]
        norm_m0: u64,
        /// Number of real places dividing the modulus.
        #[arg(long)]
        minf: u64,
        /// Number of distinct prime ideals dividing the finite part.
        #[arg(long)]
        omega: u64,
        /// Index of the subgroup.
        #[arg(long, default_value_t = 1)]
        index: u64,
        /// Print every intermediate quantity.
        #[arg(short, long)]
        verbose: bool,
    },
    /// Unit-group bound: 16·(index·log m)² for subgroups of (Z/mZ)^×.
    Zm {
        /// The modulus m.
        #[arg(long)]
        m: u64,
        /// Index of the subgroup.
        #[arg(long, default_value_t = 1)]
        index: u64,
        #[arg(short, long)]
        verbose: bool,
    },
    /// Class-group bound: 26·(h⁺·log(Δ·N(f)))² for imaginary quadratic orders.
    Isogeny {
        /// Absolute value of the fundamental discriminant.
        #[arg(long)]
        delta: u64,
        /// Norm of the conductor (conductor squared).
        #[arg(long)]
        conductor_norm: u64,
        /// Narrow class number of the real suborder.
        #[arg(long, default_value_t = 1)]
        hplus: u64,
        #[arg(short, long)]
        verbose: bool,
    },
    /// Relative class-group bound: (2.71·h⁺(K₀)·log Δ + 4.13)².
    Cyclotomic {
        /// Narrow class number of the maximal real subfield.
        #[arg(long)]
        hk0: u64,
        /// log of the absolute discriminant.
        #[arg(long)]
        log_delta: f64,
        #[arg(short, long)]
        verbose: bool,
    },
}

#[derive(Subcommand)]
enum ConstantsCmd {
    /// Re-derive every decimal constant and certify its one-sided inequality.
    Check,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Verify the unit-group bound for every subgroup of every (Z/mZ)^×, m ≤ max-m.
    Zm {
        #[arg(long)]
        max_m: u64,
    },
    /// Verify prime-form connectivity for every fundamental |Δ| ≤ max-absdisc.
    Quad {
        #[arg(long)]
        max_absdisc: u64,
        /// Conductor of the (possibly non-maximal) order.
        #[arg(long, default_value_t = 1)]
        conductor: u64,
    },
}

enum AppError {
    Lib(raygen::Error),
    Io(io::Error),
}

impl From<raygen::Error> for AppError {
    fn from(e: raygen::Error) -> Self {
        AppError::Lib(e)
    }
}

impl From<io::Error> for AppError {
    fn from(e: io::Error) -> Self {
        AppError::Io(e)
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Lib(e) => write!(f, "{e}"),
            AppError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl AppError {
    fn exit_code(&self) -> ExitCode {
        match self {
            AppError::Lib(raygen::Error::LimitExceeded { .. }) => ExitCode::from(3),
            AppError::Lib(raygen::Error::CertificationFailed(_)) => ExitCode::from(1),
            AppError::Lib(_) | AppError::Io(_) => ExitCode::from(2),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, AppError> {
    match &cli.command {
        Command::Bound(cmd) => cmd_bound(cmd),
        Command::Constants(ConstantsCmd::Check) => cmd_constants_check(&cli),
        Command::Verify(VerifyCmd::Zm { max_m }) => cmd_verify_zm(&cli, *max_m),
        Command::Verify(VerifyCmd::Quad {
            max_absdisc,
            conductor,
        }) => cmd_verify_quad(&cli, *max_absdisc, *conductor),
    }
}

fn cmd_bound(cmd: &BoundCmd) -> Result<ExitCode, AppError> {
    match *cmd {
        BoundCmd::Ray {
            delta,
            norm_m0,
            minf,
            omega,
            index,
            verbose,
        } => {
            let input = BoundInput {
                delta,
                norm_m0,
                real_places: minf,
                omega,
                index,
            };
            let bound = main_bound(&input)?;
            if verbose {
                let log_dn = (delta as f64).ln() + (norm_m0 as f64).ln();
                let linear = index as f64
                    * (MAIN_LOG_COEFF * log_dn
                        + MAIN_REAL_PLACES_COEFF * minf as f64
                        + MAIN_OMEGA_COEFF * omega as f64)
                    + MAIN_OFFSET;
                println!("log(delta*norm_m0) = {log_dn}");
                println!(
                    "linear = {index}*({MAIN_LOG_COEFF}*{log_dn} + \
                     {MAIN_REAL_PLACES_COEFF}*{minf} + {MAIN_OMEGA_COEFF}*{omega}) \
                     + {MAIN_OFFSET} = {linear}"
                );
                if let Ok(est) = remark_estimates(delta.saturating_mul(norm_m0)) {
                    println!(
                        "caps at x = delta*norm_m0: real places <= {}, omega <= {}",
                        est.real_places, est.omega_cap
                    );
                }
            }
            println!("{bound}");
        }
        BoundCmd::Zm { m, index, verbose } => {
            let bound = zm_bound(m, index)?;
            if verbose {
                let log_m = (m as f64).ln();
                println!("log m = {log_m}");
                println!("t = index*log m = {}", index as f64 * log_m);
                println!("bound = {UNIT_GROUP_FACTOR}*t^2");
            }
            println!("{bound}");
        }
        BoundCmd::Isogeny {
            delta,
            conductor_norm,
            hplus,
            verbose,
        } => {
            let bound = isogeny_bound(delta, conductor_norm, hplus)?;
            if verbose {
                let log_dn = (delta as f64).ln() + (conductor_norm as f64).ln();
                println!("log(delta*conductor_norm) = {log_dn}");
                println!("t = hplus*log = {}", hplus as f64 * log_dn);
                println!("bound = {ISOGENY_FACTOR}*t^2");
            }
            println!("{bound}");
        }
        BoundCmd::Cyclotomic {
            hk0,
            log_delta,
            verbose,
        } => {
            let bound = cyclotomic_relative_bound(hk0, log_delta)?;
            if verbose {
                let linear = MAIN_LOG_COEFF * hk0 as f64 * log_delta + MAIN_OFFSET;
                println!("linear = {MAIN_LOG_COEFF}*{hk0}*{log_delta} + {MAIN_OFFSET} = {linear}");
            }
            println!("{bound}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ConstantsConfigEcho {
    command: &'static str,
}

fn cmd_constants_check(cli: &Cli) -> Result<ExitCode, AppError> {
    let rows: Vec<Certification> = certify_constants()?;
    let summary = Summary::tally(&rows, |r| r.pass, |_| false);
    emit_report(
        cli,
        ConstantsConfigEcho {
            command: "constants-check",
        },
        rows,
        summary,
    )
}

#[derive(Serialize)]
struct ZmConfigEcho {
    command: &'static str,
    max_m: u64,
    sieve_limit: u64,
    subgroup_cap: u64,
    modulus_limit: u64,
}

fn cmd_verify_zm(cli: &Cli, max_m: u64) -> Result<ExitCode, AppError> {
    let mut config = ScanConfig::default();
    if let Some(s) = cli.sieve_limit {
        config.sieve_limit = s;
    }
    if let Some(c) = cli.subgroup_cap {
        config.subgroup_cap = c;
    }
    config.threads = cli.jobs;
    // Chunking below would sidestep the scan's own range check, so enforce
    // the ceiling up front.
    if max_m > config.modulus_limit {
        return Err(raygen::Error::LimitExceeded {
            what: "modulus range",
            required: max_m,
            limit: config.modulus_limit,
        }
        .into());
    }
    // Chunked so long scans report progress; rows are per-modulus, so
    // chunking cannot change the output.
    let mut rows: Vec<ZmVerificationResult> = Vec::new();
    let mut start = 2u64;
    while start <= max_m {
        let end = start.saturating_add(499).min(max_m);
        rows.extend(scan(start, end, &config)?);
        eprintln!("progress: m <= {end} of {max_m}, {} rows", rows.len());
        start = end + 1;
    }
    let summary = Summary::tally(&rows, ZmVerificationResult::ok, |r| r.skipped);
    emit_report(
        cli,
        ZmConfigEcho {
            command: "verify-zm",
            max_m,
            sieve_limit: config.sieve_limit,
            subgroup_cap: config.subgroup_cap,
            modulus_limit: config.modulus_limit,
        },
        rows,
        summary,
    )
}

#[derive(Serialize)]
struct QuadConfigEcho {
    command: &'static str,
    max_absdisc: u64,
    conductor: u64,
    disc_limit: u64,
}

fn cmd_verify_quad(cli: &Cli, max_absdisc: u64, conductor: u64) -> Result<ExitCode, AppError> {
    let config = QuadScanConfig {
        threads: cli.jobs,
        ..QuadScanConfig::default()
    };
    eprintln!(
        "progress: scanning fundamental discriminants |D| <= {max_absdisc}, \
         conductor {conductor}"
    );
    let rows = scan_discriminants(max_absdisc, conductor..=conductor, &config)?;
    eprintln!("progress: {} instances verified", rows.len());
    let summary = Summary::tally(&rows, ConnectivityResult::ok, |r| r.skipped);
    emit_report(
        cli,
        QuadConfigEcho {
            command: "verify-quad",
            max_absdisc,
            conductor,
            disc_limit: config.disc_limit,
        },
        rows,
        summary,
    )
}

fn emit_report<C: Serialize, R: Serialize + CsvRow>(
    cli: &Cli,
    config: C,
    rows: Vec<R>,
    summary: Summary,
) -> Result<ExitCode, AppError> {
    let report = Report {
        schema_version: SCHEMA_VERSION,
        version: env!("CARGO_PKG_VERSION"),
        timestamp: report::timestamp(),
        config,
        rows,
        summary,
    };
    let out: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match cli.format {
        Format::Json => report::write_json(out, &report)?,
        Format::Csv => report::write_csv(out, &report.rows)?,
    }
    Ok(if report.summary.failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
