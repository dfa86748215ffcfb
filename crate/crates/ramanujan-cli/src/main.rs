//! `ramanujan`: exact Ramanujan sums, Hildebrand coefficient tables,
//! partial-sum traces, and certification of absolutely convergent
//! Ramanujan expansions.
//!
//! Exit codes: 0 success (and `verify` fully certified), 1 `verify`
//! finished but at least one argument is uncertified, 2 usage or domain
//! errors.

mod formats;
mod specs;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use ramanujan_core::arith::{Factorizer, DEFAULT_SIEVE_CAP};
use ramanujan_core::expansion::{certify_membership, null_demo_trace, partial_sums, Schedule};
use ramanujan_core::hildebrand::HildebrandTable;
use ramanujan_core::sums::{cosine_sum, divisor_sum_oracle, ramanujan_sum, DEFAULT_TRIG_CAP};

#[derive(Parser)]
#[command(name = "ramanujan", version, about = "Ramanujan sums and expansions toolkit")]
struct Cli {
    /// Bound for the smallest-prime-factor sieve (factorization stays
    /// exact above it via trial division, up to 10^12)
    #[arg(long, global = true)]
    sieve_cap: Option<u64>,

    /// Modulus cap for the definitional cosine-sum evaluator
    #[arg(long, global = true)]
    trig_cap: Option<u64>,

    /// Optional JSON config with defaults for the flags above
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Exact closed form (default)
    Holder,
    /// Exact divisor-sum cross-check
    Oracle,
    /// Definitional cosine sum (floating)
    Trig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Ramanujan sum c_q(a)
    Csum {
        q: u64,
        a: i64,
        #[arg(long, value_enum, default_value_t = Method::Holder)]
        method: Method,
    },
    /// Build the square-full-supported coefficient table of a function
    Hildebrand {
        /// null|one|identity|mobius|phi, table:PATH (CSV), or mult:PATH
        function: String,
        /// Table bound: divisor indices 1..=N
        n: u64,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace signed and absolute partial sums of one (coefficient, a)
    Trace {
        /// Coefficient spec (see `verify`)
        #[arg(long)]
        coef: String,
        /// Argument of the expansion
        #[arg(long)]
        a: u64,
        /// Truncation point
        #[arg(long)]
        xmax: u64,
        /// Explicit checkpoints, e.g. 50,100,500 (default geometric)
        #[arg(long)]
        checkpoints: Option<String>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify truncated expansions against rigorous tail bounds
    Verify {
        /// zero|harmonic, a built-in name, exotic:p0=P,sigma=S,
        /// table:PATH, or config:PATH
        #[arg(long)]
        coef: String,
        /// Target function spec
        #[arg(long)]
        target: String,
        /// Arguments: N, lo..hi, or a comma list
        #[arg(long)]
        a: String,
        /// Truncation point
        #[arg(long)]
        xmax: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ramanujan's classic expansion of zero with G(q) = 1/q: signed
    /// sums drift to zero, absolute sums diverge
    DemoNull {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        xmax: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    sieve_cap: Option<u64>,
    trig_cap: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let file_config = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            serde_json::from_str::<ConfigFile>(&text)
                .with_context(|| format!("parsing config {}", path.display()))?
        }
        None => ConfigFile::default(),
    };
    let sieve_cap = cli
        .sieve_cap
        .or(file_config.sieve_cap)
        .unwrap_or(DEFAULT_SIEVE_CAP);
    let trig_cap = cli.trig_cap.or(file_config.trig_cap).unwrap_or(DEFAULT_TRIG_CAP);
    let ctx = Factorizer::new(sieve_cap);

    match cli.command {
        Command::Csum { q, a, method } => {
            match method {
                Method::Holder => println!("{}", ramanujan_sum(&ctx, q, a)?),
                Method::Oracle => println!("{}", divisor_sum_oracle(&ctx, q, a)?),
                Method::Trig => println!("{}", formats::sig12(cosine_sum(q, a, trig_cap)?)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hildebrand { function, n, out } => {
            let func = specs::parse_function_spec(&function)?;
            specs::validate_function_bound(&ctx, &func, n)?;
            let table = HildebrandTable::build(&ctx, &func, n)?;
            emit(&out, &formats::table_to_json(&ctx, &table)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Trace { coef, a, xmax, checkpoints, format, out } => {
            let g = specs::parse_coefficient_spec(&ctx, &coef)?;
            let schedule = match checkpoints {
                Some(list) => Schedule::Explicit(specs::parse_argument_set(&list)?),
                None => Schedule::Geometric,
            };
            let trace = partial_sums(&ctx, g.as_ref(), a, xmax, &schedule)?;
            let rendered = match format {
                OutputFormat::Csv => formats::trace_to_csv(&trace),
                OutputFormat::Json => formats::trace_to_json(&trace)?,
            };
            emit(&out, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { coef, target, a, xmax, out } => {
            let g = specs::parse_coefficient_spec(&ctx, &coef)?;
            let func = specs::parse_function_spec(&target)?;
            let args = specs::parse_argument_set(&a)?;
            let report = certify_membership(&ctx, g.as_ref(), &func, &args, xmax)?;
            emit(&out, &formats::report_to_json(&report)?)?;
            Ok(if report.all_certified() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::DemoNull { a, xmax, format, out } => {
            let trace = null_demo_trace(&ctx, a, xmax)?;
            let rendered = match format {
                OutputFormat::Csv => formats::trace_to_csv(&trace),
                OutputFormat::Json => formats::trace_to_json(&trace)?,
            };
            emit(&out, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
