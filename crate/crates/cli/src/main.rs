use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use svpsido::expr::eval;
use svpsido::psido::HalfInt;
use svpsido::ring::GaussRat;
use svpsido::suites::{run_suites, SuiteConfig, SuiteName};

#[derive(Parser)]
#[command(name = "svpsido", version, about = "Exact symbol calculus and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites; exits 0 iff every case passes.
    Verify {
        /// Suite to run (repeatable); all suites when omitted.
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<SuiteName>,
        /// Lowest trusted symbol order, in 1/2 Z.
        #[arg(long, value_name = "Q", default_value = "-7/2", allow_hyphen_values = true)]
        floor: HalfInt,
        /// Bound on Laurent indices and orders.
        #[arg(long, value_name = "N", default_value_t = 3, allow_hyphen_values = true)]
        range: i64,
        /// Central charge.
        #[arg(long, value_name = "Q", default_value = "2", allow_hyphen_values = true)]
        c: GaussRat,
        #[arg(long, value_name = "Q", default_value = "0", allow_hyphen_values = true)]
        nu: GaussRat,
        #[arg(long, value_name = "Q", default_value = "0", allow_hyphen_values = true)]
        mu: GaussRat,
        /// Comma-separated ν values for the nu-scan suite.
        #[arg(long, value_name = "Q,...", value_delimiter = ',', allow_hyphen_values = true)]
        nu_grid: Option<Vec<GaussRat>>,
        /// Render with M = i/2 substituted.
        #[arg(long)]
        normalize_mass: bool,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
        /// Extra random polynomial cases per suite.
        #[arg(long, value_name = "N", default_value_t = 0)]
        random: usize,
        #[arg(long, value_name = "S", default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate an expression and print its canonical form.
    Eval {
        expr: String,
        #[arg(long, value_name = "Q", default_value = "-7/2", allow_hyphen_values = true)]
        floor: HalfInt,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Eval { expr, floor } => match eval(&expr, floor) {
            Ok(out) => {
                println!("{out}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Verify { suites, floor, range, c, nu, mu, nu_grid, normalize_mass, report, random, seed } => {
            let defaults = SuiteConfig::default();
            let config = SuiteConfig {
                floor,
                range,
                c,
                nu,
                mu,
                normalize_mass,
                random,
                seed,
                nu_grid: nu_grid.unwrap_or(defaults.nu_grid),
            };
            let names = if suites.is_empty() { SuiteName::ALL.to_vec() } else { suites };
            let reports = match run_suites(&names, &config) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match report {
                ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize")),
                ReportFormat::Text => reports.iter().for_each(|r| print!("{r}")),
            }
            if reports.iter().all(|r| r.ok()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
