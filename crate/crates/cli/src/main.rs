use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cheby::commands::{
    cmd_bound, cmd_falsify, cmd_hcurve, cmd_sharpness, cmd_verify, parse_alpha, parse_theorems,
    tolerance_from_env, BoundArgs, FalsifyArgs, HCurveArgs, Output, UsageError, VerifyArgs,
    EXIT_USAGE,
};
use cheby_core::bounds::TheoremId;

/// Čebyšev functional bounds: evaluate, verify, and probe.
///
/// The quadrature tolerance defaults to 1e-10 and can be changed with the
/// CHEBY_TOL environment variable.
#[derive(Parser)]
#[command(name = "cheby", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate T(f, g) and the bounds of the catalog on one pair.
    Bound {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        /// Comma-separated theorem ids; all of them by default.
        #[arg(long)]
        theorems: Option<String>,
        /// Exponent of the Hölder-type bound: a number >= 1 or "inf".
        #[arg(long, default_value = "2")]
        alpha: String,
        /// Inner interval "c,d" of the mean-difference bounds.
        #[arg(long, allow_hyphen_values = true)]
        inner: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run a seeded random suite for one theorem.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "2")]
        alpha: String,
        #[arg(long)]
        json: bool,
    },
    /// Check the named equality witnesses.
    Sharpness {
        #[arg(long)]
        json: bool,
    },
    /// Tabulate h(β) and its forward difference as CSV.
    Hcurve {
        #[arg(long, default_value_t = 1.0)]
        from: f64,
        #[arg(long, default_value_t = 100.0)]
        to: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for pairs that come close to (or beat) a bound.
    Falsify {
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 10_000)]
        iterations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "2")]
        alpha: String,
        #[arg(long)]
        json: bool,
    },
}

fn theorem(name: &str) -> Result<TheoremId, UsageError> {
    TheoremId::from_name(name).ok_or_else(|| {
        let known: Vec<&str> = TheoremId::ALL.iter().map(|t| t.name()).collect();
        UsageError(format!("unknown theorem {name:?}; known: {}", known.join(", ")))
    })
}

fn parse_inner(s: &str) -> Result<(f64, f64), UsageError> {
    let bad = || UsageError(format!("--inner expects \"c,d\", got {s:?}"));
    let (c, d) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        c.trim().parse().map_err(|_| bad())?,
        d.trim().parse().map_err(|_| bad())?,
    ))
}

fn run(cli: Cli) -> Result<(Output, bool), UsageError> {
    let tol = tolerance_from_env()?;
    Ok(match cli.command {
        Command::Bound { f, g, a, b, theorems, alpha, inner, json } => {
            let args = BoundArgs {
                f,
                g,
                a,
                b,
                theorems: theorems.as_deref().map(parse_theorems).transpose()?,
                alpha: parse_alpha(&alpha)?,
                inner: inner.as_deref().map(parse_inner).transpose()?,
                tol,
            };
            (cmd_bound(&args)?, json)
        }
        Command::Verify { theorem: th, cases, seed, alpha, json } => {
            let args = VerifyArgs {
                theorem: theorem(&th)?,
                cases,
                seed,
                alpha: parse_alpha(&alpha)?,
                tol,
            };
            (cmd_verify(&args)?, json)
        }
        Command::Sharpness { json } => (cmd_sharpness(tol), json),
        Command::Hcurve { from, to, steps, out } => {
            (cmd_hcurve(&HCurveArgs { from, to, steps }, out.as_deref())?, false)
        }
        Command::Falsify { theorem: th, iterations, seed, alpha, json } => {
            let args = FalsifyArgs {
                theorem: theorem(&th)?,
                iterations,
                seed,
                alpha: parse_alpha(&alpha)?,
                tol,
            };
            (cmd_falsify(&args)?, json)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, json)) => {
            match (&out.report, json) {
                (Some(r), true) => println!("{}", r.to_json()),
                _ => print!("{}", out.text),
            }
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
