mod algebra_file;
mod commands;
mod report;
mod structure;

use std::fmt;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug)]
pub enum CliError {
    /// Malformed input or usage; exit code 2.
    Input(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
        }
    }
}

impl From<qpoisson::Error> for CliError {
    fn from(e: qpoisson::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "qpoisson", version, about = "Exact checks for quadratic Poisson structures and their Koszul duals")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check [π, π] = 0.
    Jacobi { file: String },
    /// Write the structure of the Koszul dual.
    Dual { file: String },
    /// Exact Betti table of hp_low, hp_high or hp_high_dual.
    Homology {
        file: String,
        #[arg(long, default_value = "hp_high")]
        which: String,
        #[arg(long, env = "QPOISSON_MAX_WEIGHT", default_value_t = 8)]
        max_weight: i32,
        /// Inclusive range `a..b`; defaults to `0..n`.
        #[arg(long)]
        degrees: Option<String>,
    },
    /// Decide unimodularity of the standard volume form.
    Unimodular {
        file: String,
        #[arg(long, env = "QPOISSON_MAX_WEIGHT", default_value_t = 8)]
        max_weight: i32,
    },
    /// Sample the BV identities.
    BvVerify {
        file: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "QPOISSON_MAX_WEIGHT", default_value_t = 8)]
        max_weight: i32,
    },
    /// Check one of the duality statements on a structure.
    Verify {
        #[arg(value_enum)]
        statement: Statement,
        file: String,
        #[arg(long, env = "QPOISSON_MAX_WEIGHT", default_value_t = 8)]
        max_weight: i32,
    },
    /// Exactness of the Koszul complex, weight by weight.
    KoszulAcyclic {
        /// A structure file; primal means k[x1..xn], koszul means Λ(xi1..xin).
        file: Option<String>,
        #[arg(long, conflicts_with = "file")]
        gens: Option<usize>,
        #[arg(long, default_value = "primal", conflicts_with = "file")]
        side: String,
        #[arg(long, env = "QPOISSON_MAX_WEIGHT", default_value_t = 8)]
        max_weight: i32,
    },
    /// Hochschild cohomology of a finite graded algebra.
    Hochschild {
        /// `exterior`, or a JSON algebra file.
        #[arg(long, default_value = "exterior")]
        algebra: String,
        /// Generators of the exterior algebra.
        #[arg(long, default_value_t = 2)]
        gens: usize,
        #[arg(long, default_value_t = 3)]
        max_level: usize,
        /// Random samples per calculus identity; 0 skips the check.
        #[arg(long, default_value_t = 0)]
        cartan_fuzz: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random structures from a family, each run through the checks.
    Fuzz {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 20)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        max_weight: i32,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Statement {
    Thm1,
    Thm2,
    Thm3,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Family {
    Eg,
    Pym,
    Random,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let start = Instant::now();
    let out = match cli.command {
        Command::Jacobi { file } => commands::jacobi(&file),
        Command::Dual { file } => commands::dual(&file),
        Command::Homology { file, which, max_weight, degrees } => commands::homology(&file, &which, max_weight, degrees.as_deref()),
        Command::Unimodular { file, max_weight } => commands::unimodular(&file, max_weight),
        Command::BvVerify { file, samples, seed, max_weight } => commands::bv_verify(&file, samples, seed, max_weight),
        Command::Verify { statement, file, max_weight } => commands::verify(statement, &file, max_weight),
        Command::KoszulAcyclic { file, gens, side, max_weight } => commands::koszul_acyclic(file.as_deref(), gens, &side, max_weight),
        Command::Hochschild { algebra, gens, max_level, cartan_fuzz, seed } => {
            commands::hochschild(&algebra, gens, max_level, cartan_fuzz, seed)
        }
        Command::Fuzz { family, cases, seed, max_weight } => commands::fuzz(family, cases, seed, max_weight),
    };
    match out {
        Ok(mut outcome) => {
            if !outcome.raw {
                outcome.report.insert("argv".into(), argv.into());
                outcome.report.insert("elapsed_ms".into(), (start.elapsed().as_millis() as u64).into());
            }
            let v = serde_json::Value::Object(outcome.report);
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&v).expect("serializable")),
                Format::Text => print!("{}", report::text(&v)),
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
