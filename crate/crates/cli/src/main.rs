#![allow(clippy::result_large_err)]

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blotto_cli::error::{EXIT_INTERNAL, EXIT_USAGE};
use blotto_cli::{commands, strategy, sweep, CliError, Result};
use blotto_core::{rational, Rational, Reading, SolverConfig};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Exact solver and verifier for the two-battlefield team Colonel Blotto game.
#[derive(Parser)]
#[command(name = "blotto", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ss2Reading {
    Closed,
    Strict,
}

impl From<Ss2Reading> for Reading {
    fn from(r: Ss2Reading) -> Self {
        match r {
            Ss2Reading::Closed => Reading::Closed,
            Ss2Reading::Strict => Reading::Strict,
        }
    }
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    rational::parse(s).ok_or_else(|| format!("{s:?} is not an exact rational \"p\" or \"p/q\""))
}

#[derive(Subcommand)]
enum Command {
    /// Lower bounds on the distributed value of the integer game for
    /// B1 = 0..=b1-max, as CSV.
    Sweep {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        e: u64,
        #[arg(long)]
        b1_max: u64,
        /// Random starts per division, on top of the fixed warm starts.
        #[arg(long, default_value_t = 64)]
        starts: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Stop a start once a round improves the value by at most this.
        #[arg(long, default_value = "0", value_parser = parse_rational)]
        tol: Rational,
        /// Output path; "-" writes to stdout.
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Checks a strategy file against the security-strategy conditions and
    /// computes its exact worst-case value.
    Verify {
        #[arg(long, value_parser = parse_rational)]
        b: Rational,
        #[arg(long, value_parser = parse_rational)]
        e: Rational,
        #[arg(long)]
        strategy: PathBuf,
        #[arg(long, value_enum, default_value = "closed")]
        ss2_reading: Ss2Reading,
    },
    /// Comb factorization for factor k1 and division b1.
    Construct {
        #[arg(long, value_parser = parse_rational)]
        b: Rational,
        #[arg(long, value_parser = parse_rational)]
        e: Rational,
        #[arg(long)]
        k1: u64,
        #[arg(long, value_parser = parse_rational)]
        b1: Rational,
        /// Directory receiving f1.json and f2.json; the report goes to stdout
        /// either way.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Divisions where a comb factorization exists.
    Bands {
        #[arg(long, value_parser = parse_rational)]
        b: Rational,
        #[arg(long, value_parser = parse_rational)]
        e: Rational,
    },
    /// Centralized security value: closed form and integer LP.
    Centralized {
        #[arg(long, value_parser = parse_rational)]
        b: Rational,
        #[arg(long, value_parser = parse_rational)]
        e: Rational,
    },
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("reports always serialize");
    writeln!(io::stdout(), "{text}").map_err(|source| CliError::Write {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Sweep {
            b,
            e,
            b1_max,
            starts,
            seed,
            tol,
            out,
        } => {
            let cfg = SolverConfig {
                starts,
                seed,
                tol,
                ..SolverConfig::default()
            };
            let records = sweep::sweep(b, e, b1_max, &cfg)?;
            if out == Path::new("-") {
                sweep::write_csv(&records, io::stdout().lock())
            } else {
                sweep::write_csv_file(&out, &records)
            }
        }
        Command::Verify {
            b,
            e,
            strategy: path,
            ss2_reading,
        } => {
            let f = strategy::read_strategy(&path)?;
            print_json(&commands::verify(b, e, &f, ss2_reading.into())?)
        }
        Command::Construct { b, e, k1, b1, out } => {
            let (report, f1, f2) = commands::construct(b, e, k1, b1)?;
            if let Some(dir) = out {
                strategy::write_strategy(&dir.join("f1.json"), &f1)?;
                strategy::write_strategy(&dir.join("f2.json"), &f2)?;
            }
            print_json(&report)
        }
        Command::Bands { b, e } => print_json(&commands::bands_report(b, e)?),
        Command::Centralized { b, e } => print_json(&commands::centralized(b, e)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let code = e.exit_code();
            ExitCode::from(if code == 0 { EXIT_INTERNAL } else { code })
        }
    }
}
