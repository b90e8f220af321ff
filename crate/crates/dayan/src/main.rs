//! Thin command-line wrapper over the `dayan` library. The library's
//! `examples/` directory is the primary tour; this binary exists for shell
//! pipelines and golden-file testing.
//!
//! Exit codes: 0 on success, 2 on input validation failures, 1 on internal
//! errors.

use clap::{Parser, Subcommand, ValueEnum};
use dayan::lattice::{self, LatticeError};
use dayan::{cf, qin, verify};
use num_bigint::BigUint;
use num_traits::Zero;
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dayan",
    version,
    about = "Qin Jiushao's deriving-one method: traced modular inverses, continued fractions, and planar shortest lattice vectors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Certified scan over all states' candidate vectors
    States,
    /// Fast guess from the two states at the inner-product sign change
    Heuristic,
    /// Independent brute-force enumeration
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the modular inverse of a mod m
    Inverse {
        a: String,
        m: String,
        /// Reduce a modulo m before validation
        #[arg(long)]
        reduce: bool,
    },
    /// Print the full state trace of the run on (a, m)
    Trace {
        a: String,
        m: String,
        #[arg(long, value_enum, default_value_t = TraceFormat::Table)]
        format: TraceFormat,
        #[arg(long)]
        reduce: bool,
    },
    /// Print the continued fraction expansion of a/m
    Cf {
        a: String,
        m: String,
        /// Also list the convergents mirrored in the trace's states
        #[arg(long)]
        convergents: bool,
        /// Include the final convergent, a/m itself
        #[arg(long, requires = "convergents")]
        with_final: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long)]
        reduce: bool,
    },
    /// Shortest vector of the lattice a*x + y = 0 (mod m)
    Lattice {
        a: String,
        m: String,
        #[arg(long, value_enum, default_value_t = Method::States)]
        method: Method,
        /// Successive minima to return (oracle method only; 1 or 2)
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Drop the enumeration size cap of the oracle
        #[arg(long)]
        unsafe_no_cap: bool,
        #[arg(long)]
        reduce: bool,
    },
    /// Brute-force successive minima, independent of the state machine
    Oracle {
        a: String,
        m: String,
        /// Successive minima to return (1 or 2)
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Drop the enumeration size cap
        #[arg(long)]
        unsafe_no_cap: bool,
        #[arg(long)]
        reduce: bool,
    },
    /// Run the randomized verification suites over a seeded corpus
    Verify {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_m: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

enum AppError {
    /// Bad input; exit code 2.
    Usage(String),
    /// Should-not-happen; exit code 1.
    Internal(String),
}

fn usage<E: std::fmt::Display>(e: E) -> AppError {
    AppError::Usage(e.to_string())
}

fn parse_nat(s: &str, name: &str) -> Result<BigUint, AppError> {
    s.trim()
        .parse::<BigUint>()
        .map_err(|e| AppError::Usage(format!("{name} must be a decimal non-negative integer ({e})")))
}

/// Parses `(a, m)`, applies `--reduce` if requested, and validates.
fn prepare(a: &str, m: &str, reduce: bool) -> Result<(BigUint, BigUint), AppError> {
    let a = parse_nat(a, "a")?;
    let m = parse_nat(m, "m")?;
    let a = if reduce {
        if m.is_zero() {
            return Err(AppError::Usage("cannot reduce modulo 0".to_string()));
        }
        a % &m
    } else {
        a
    };
    qin::validate_inputs(&a, &m).map_err(usage)?;
    Ok((a, m))
}

/// The oracle cap: the DAYAN_ORACLE_CAP environment variable (decimal)
/// when set, else 10^12.
fn oracle_cap_from_env() -> Result<BigUint, AppError> {
    match std::env::var("DAYAN_ORACLE_CAP") {
        Ok(s) => s.trim().parse::<BigUint>().map_err(|e| {
            AppError::Usage(format!("DAYAN_ORACLE_CAP must be a decimal integer ({e})"))
        }),
        Err(std::env::VarError::NotPresent) => Ok(lattice::default_oracle_cap()),
        Err(e) => Err(AppError::Usage(format!("DAYAN_ORACLE_CAP: {e}"))),
    }
}

fn print_report(r: &lattice::SVReport, format: OutputFormat) {
    match format {
        OutputFormat::Text => {
            println!("shortest = {}", r.shortest);
            println!("norm_sq = {}", r.norm_sq);
            match r.source_step {
                Some(k) => println!("source = {} (step {k})", r.source),
                None => println!("source = {}", r.source),
            }
            println!("certified = {}", r.certified);
        }
        OutputFormat::Json => println!("{}", r.to_json()),
    }
}

fn run_oracle(
    a: BigUint,
    m: BigUint,
    count: usize,
    format: OutputFormat,
    unsafe_no_cap: bool,
) -> Result<(), AppError> {
    let p = lattice::LatticeParams::new(a, m).map_err(usage)?;
    let cap = if unsafe_no_cap {
        None
    } else {
        Some(oracle_cap_from_env()?)
    };
    let minima = lattice::oracle_shortest_with_cap(&p, count, cap.as_ref()).map_err(|e| match e {
        LatticeError::CapExceeded { .. }
        | LatticeError::UnsupportedCount { .. }
        | LatticeError::Params(_) => usage(e),
        other => AppError::Internal(other.to_string()),
    })?;
    match format {
        OutputFormat::Text => {
            for (v, norm_sq) in &minima {
                println!("{v} norm_sq = {norm_sq}");
            }
        }
        OutputFormat::Json => {
            let doc = Value::Array(
                minima
                    .iter()
                    .map(|(v, norm_sq)| {
                        json!({
                            "x": v.x.to_string(),
                            "y": v.y.to_string(),
                            "norm_sq": norm_sq.to_string(),
                        })
                    })
                    .collect(),
            );
            println!("{doc}");
        }
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Inverse { a, m, reduce } => {
            let (a, m) = prepare(&a, &m, reduce)?;
            let u = qin::mod_inverse(&a, &m).map_err(usage)?;
            println!("{u}");
        }
        Command::Trace {
            a,
            m,
            format,
            reduce,
        } => {
            let (a, m) = prepare(&a, &m, reduce)?;
            let trace = qin::run(&a, &m).map_err(usage)?;
            match format {
                TraceFormat::Table => print!("{}", trace.render_table()),
                TraceFormat::Json => println!("{}", trace.to_json_string()),
            }
        }
        Command::Cf {
            a,
            m,
            convergents,
            with_final,
            format,
            reduce,
        } => {
            let (a, m) = prepare(&a, &m, reduce)?;
            let trace = qin::run(&a, &m).map_err(usage)?;
            let expansion = cf::expansion(&trace);
            let list = if !convergents {
                None
            } else if with_final {
                Some(cf::convergents_with_final(&trace))
            } else {
                Some(cf::convergents(&trace))
            };
            match format {
                OutputFormat::Text => {
                    println!("{expansion}");
                    for c in list.iter().flatten() {
                        println!("{c}");
                    }
                }
                OutputFormat::Json => {
                    let mut doc = expansion.to_json();
                    if let Some(list) = &list {
                        doc["convergents"] = cf::convergents_to_json(list);
                    }
                    println!("{doc}");
                }
            }
        }
        Command::Lattice {
            a,
            m,
            method,
            count,
            format,
            unsafe_no_cap,
            reduce,
        } => {
            let (a, m) = prepare(&a, &m, reduce)?;
            match method {
                Method::Oracle => run_oracle(a, m, count, format, unsafe_no_cap)?,
                Method::States | Method::Heuristic => {
                    let trace = qin::run(&a, &m).map_err(usage)?;
                    let report = match method {
                        Method::States => lattice::shortest_via_states(&trace),
                        _ => lattice::heuristic_shortest(&trace),
                    };
                    print_report(&report, format);
                }
            }
        }
        Command::Oracle {
            a,
            m,
            count,
            format,
            unsafe_no_cap,
            reduce,
        } => {
            let (a, m) = prepare(&a, &m, reduce)?;
            run_oracle(a, m, count, format, unsafe_no_cap)?;
        }
        Command::Verify {
            samples,
            max_m,
            seed,
        } => {
            if samples > 0 && max_m < 3 {
                return Err(AppError::Usage("--max-m must be at least 3".to_string()));
            }
            if samples == 0 {
                eprintln!("warning: --samples 0 makes every suite a vacuous pass");
            }
            let report = verify::run(&verify::CorpusSpec::new(samples, max_m, seed));
            print!("{}", report.render());
            if !report.all_passed() {
                return Err(AppError::Internal(
                    "verification found failures (details above)".to_string(),
                ));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
