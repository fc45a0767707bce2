use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qmodulus::modulus::Suite;
use qmodulus_cli::{run, Format, Overrides, SuiteConfig};

#[derive(Parser)]
#[command(name = "qmodulus", version, about = "Verification suites for toric Q-modulus pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite and emit one report record per parameter tuple.
    Verify(VerifyArgs),
    /// List the suite names.
    List,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Suite name; may instead come from the config file.
    suite: Option<String>,
    /// Coefficients on L (comma-separated rationals such as 3/2).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    a: Option<Vec<String>>,
    /// Coefficients on L'.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    b: Option<Vec<String>>,
    /// Form degrees.
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<usize>>,
    /// Primes (the trace primes for the trace suites).
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<u64>>,
    /// Witt lengths.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    /// Ramification indices for the trace suites.
    #[arg(long, value_delimiter = ',')]
    e: Option<Vec<u64>>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Config file (TOML, or JSON with a .json extension).
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn verify(args: VerifyArgs) -> ExitCode {
    let overrides = Overrides {
        suite: args.suite,
        a: args.a,
        b: args.b,
        q: args.q,
        p: args.p,
        n: args.n,
        e: args.e,
        samples: args.samples,
        seed: args.seed,
        out: args.out,
        format: args.format,
    };
    let outcome = SuiteConfig::resolve(args.grid.as_deref(), overrides).and_then(|cfg| Ok((run(&cfg)?, cfg)));
    let (outcome, cfg) = match outcome {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if cfg.out.is_none() {
        print!("{}", outcome.rendered);
    }
    let passed = outcome.reports.iter().filter(|r| r.pass).count();
    eprintln!("{}: {passed}/{} passed (seed {})", cfg.suite, outcome.reports.len(), cfg.run.seed);
    if let Some(f) = outcome.first_failure() {
        let params: Vec<String> = f.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        eprintln!("first failing tuple: {}", params.join(", "));
    }
    ExitCode::from(outcome.exit_code() as u8)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify(args) => verify(args),
        Command::List => {
            for s in Suite::ALL {
                println!("{s}");
            }
            ExitCode::SUCCESS
        }
    }
}
