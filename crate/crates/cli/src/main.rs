//! `condsup` — scenario-driven conditional-operator toolkit.
//!
//! Exit codes: 0 success / condition holds, 1 condition fails, 2 parse
//! error, 3 semantic validation error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use condsup_cli::commands::{self, PriceOutcome};
use condsup_cli::scenario::{Scenario, ScenarioError};

#[derive(Parser)]
#[command(
    name = "condsup",
    about = "Conditional supremum operators, market checks, superhedging and ergodic diagnostics on scenario files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckMode {
    Aip,
    Na,
}

#[derive(Subcommand)]
enum Command {
    /// Conditional expectation, supremum, infimum, oscillation and distance
    /// tables for a named vector, at every time of the filtration.
    Condops {
        file: PathBuf,
        /// Name in the scenario's `vectors` section.
        vector: String,
        /// Largest exponent of the doubling p-norm grid.
        #[arg(long, default_value_t = 4096)]
        p_max: u32,
    },
    /// Immediate-profit (aip) or no-arbitrage (na) verdict with witnesses.
    Check {
        file: PathBuf,
        #[arg(value_enum)]
        mode: CheckMode,
    },
    /// Minimal superhedging price of a named claim with the optimal hedge
    /// and an eps-minimality verification transcript.
    Price {
        file: PathBuf,
        /// Name in the scenario's `claims` section.
        claim: String,
        /// Pricing time.
        time: usize,
        /// Minimality probe subtracted from the price.
        #[arg(long, default_value = "1/1000")]
        eps: String,
    },
    /// Ergodicity, max-ergodic sampling and Cesaro table for the scenario's
    /// transform.
    Ergodic {
        file: PathBuf,
        /// Random vectors sampled by the max-ergodic check.
        #[arg(long, default_value_t = 16)]
        trials: u32,
        /// RNG seed; output is deterministic given the seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

const EXIT_CONDITION_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INVALID: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(AppError::Parse(msg)) => {
            eprintln!("parse error: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(AppError::Invalid(msg)) => {
            eprintln!("validation error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

enum AppError {
    Parse(String),
    Invalid(String),
}

impl From<ScenarioError> for AppError {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Parse(msg) => AppError::Parse(msg),
            ScenarioError::Invalid(msg) => AppError::Invalid(msg),
        }
    }
}

fn run(cli: &Cli) -> Result<u8, AppError> {
    match &cli.command {
        Command::Condops {
            file,
            vector,
            p_max,
        } => {
            let (_, scenario) = Scenario::load(file)?;
            let report =
                commands::condops(&scenario, vector, *p_max).map_err(AppError::Invalid)?;
            emit(cli.format, &report, report.render_text())?;
            Ok(0)
        }
        Command::Check { file, mode } => {
            let (_, scenario) = Scenario::load(file)?;
            let report = match mode {
                CheckMode::Aip => commands::check_aip(&scenario),
                CheckMode::Na => commands::check_na(&scenario),
            }
            .map_err(AppError::Invalid)?;
            let holds = report.holds;
            emit(cli.format, &report, report.render_text())?;
            Ok(if holds { 0 } else { EXIT_CONDITION_FAILED })
        }
        Command::Price {
            file,
            claim,
            time,
            eps,
        } => {
            let eps = condsup_core::rational::parse_rat(eps)
                .map_err(|e| AppError::Parse(format!("--eps: {e}")))?;
            if !condsup_core::rational::is_positive(&eps) {
                return Err(AppError::Invalid("--eps must be strictly positive".into()));
            }
            let (_, scenario) = Scenario::load(file)?;
            match commands::price(&scenario, claim, *time, &eps).map_err(AppError::Invalid)? {
                PriceOutcome::Report(report) => {
                    let sound =
                        report.verification.certified && report.verification.refuted_probe;
                    emit(cli.format, &report, report.render_text())?;
                    // A failed verification signals a pricing bug; surface
                    // it through the exit code rather than silently.
                    Ok(if sound { 0 } else { EXIT_CONDITION_FAILED })
                }
                PriceOutcome::ImmediateProfit(aip) => {
                    emit(cli.format, &aip, aip.render_text())?;
                    Ok(EXIT_CONDITION_FAILED)
                }
            }
        }
        Command::Ergodic { file, trials, seed } => {
            let (_, scenario) = Scenario::load(file)?;
            let report =
                commands::ergodic(&scenario, *trials, *seed).map_err(AppError::Invalid)?;
            emit(cli.format, &report, report.render_text())?;
            Ok(0)
        }
    }
}

fn emit<T: serde::Serialize>(format: Format, report: &T, text: String) -> Result<(), AppError> {
    match format {
        Format::Text => {
            print!("{text}");
            Ok(())
        }
        Format::Json => {
            let json = serde_json::to_string_pretty(report)
                .map_err(|e| AppError::Invalid(format!("serialization failed: {e}")))?;
            println!("{json}");
            Ok(())
        }
    }
}

