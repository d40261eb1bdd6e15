use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tybraid_core::json::DataJson;
use tybraid_core::scalar::modulus_from_env;
use tybraid_core::TYData;

mod cache;
mod classify;
mod forms;
mod report;
mod reproduce;
mod verify;

use report::{Failure, Format, Report};

#[derive(Parser)]
#[command(
    name = "tybraid",
    version,
    about = "Braidings on Tambara-Yamagami categories over R and C"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Braidings on one instance, up to braided equivalence.
    Classify {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
        /// NDJSON cache of classifications.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Solver against oracle, hexagons, witnesses and automorphism counts;
    /// with `--input`, the hexagons of a braiding in JSON.
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
        /// Also fuzz Wall normalization with this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Regenerate the summary tables and diff them against the bundled goldens.
    Reproduce {
        #[arg(long, value_enum, default_value = "all")]
        tables: Tables,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
    },
    /// Admissible form counts, automorphism group orders and stabilizers.
    EnumerateForms {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Tables {
    Intro,
    Gauss,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    SplitReal,
    Rq,
    RcId,
    RcConj,
    SplitComplex,
    Cc,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    #[arg(long, value_enum)]
    case: Option<CaseArg>,
    /// Number of hyperbolic blocks.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Number of `l` blocks, split complex only.
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
    tau: i8,
    /// JSON file: a `TYData` for classify, a braiding for verify.
    #[arg(long)]
    input: Option<PathBuf>,
}

fn parse_sign(s: &str) -> Result<i8, String> {
    match s {
        "+" | "+1" | "1" => Ok(1),
        "-" | "-1" => Ok(-1),
        _ => Err(format!("expected + or -, got {s:?}")),
    }
}

/// Bound on `n` for a single instance.
const N_LIMIT: usize = 3;

impl Target {
    pub fn data(&self, modulus: u32) -> Result<TYData, Failure> {
        if let Some(path) = &self.input {
            let text = read_input(path)?;
            let j: DataJson = serde_json::from_str(&text).map_err(|e| Failure::new("input", e))?;
            return j.to_data(modulus).map_err(|e| Failure::new("input", e));
        }
        let case = self
            .case
            .ok_or_else(|| Failure::new("input", "--case or --input is required"))?;
        if self.n > N_LIMIT {
            return Err(Failure::new(
                "input",
                format!("--n {} exceeds the limit {N_LIMIT}", self.n),
            ));
        }
        if self.ell.is_some() && case != CaseArg::SplitComplex {
            return Err(Failure::new("input", "--ell applies to split-complex only"));
        }
        let ell = self.ell.unwrap_or(0);
        if ell > 2 {
            return Err(Failure::new(
                "input",
                format!("--ell {ell} must be 0, 1 or 2"),
            ));
        }
        let (n, tau) = (self.n, self.tau);
        let d = match case {
            CaseArg::SplitReal => TYData::split_real(n, tau, modulus),
            CaseArg::Rq => TYData::real_quaternionic(n, tau, modulus),
            CaseArg::RcId => TYData::real_complex(n, false, tau, modulus),
            CaseArg::RcConj => TYData::real_complex(n, true, tau, modulus),
            CaseArg::SplitComplex => TYData::split_complex(n, ell, tau, modulus),
            CaseArg::Cc => TYData::complex_complex(n, tau, modulus),
        };
        d.map_err(|e| Failure::new("input", e))
    }
}

pub fn read_input(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new("input", format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let modulus =
        modulus_from_env().map_err(|e| Failure::new(tybraid_core::scalar::MODULUS_ENV, e))?;
    match cli.command {
        Command::Classify {
            target,
            format,
            cache,
        } => classify::run(&target, format, cache.as_deref(), modulus),
        Command::Verify {
            target,
            format,
            seed,
        } => verify::run(&target, format, seed, modulus),
        Command::Reproduce { tables, n_max } => reproduce::run(tables, n_max, modulus),
        Command::EnumerateForms { n_max, format } => forms::run(n_max, format, modulus),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.text.as_bytes());
            if report.problems.is_empty() {
                return ExitCode::SUCCESS;
            }
            for p in &report.problems {
                eprintln!("FAIL [{}] {}", p.id, p.detail);
            }
            ExitCode::from(1)
        }
        Err(f) => {
            eprintln!("error {f}");
            ExitCode::from(2)
        }
    }
}
