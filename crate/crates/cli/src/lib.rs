//! Command-line front end: point counts, traces, fibers, lattices, heights,
//! zeta functions and a golden-file check of the published values.

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::Value;

pub mod commands;
pub mod surface;
pub mod verify;

#[derive(Debug)]
pub enum CliError {
    Core(k3_arith::Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{}", e),
            CliError::Usage(m) => write!(f, "{}", m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<k3_arith::Error> for CliError {
    fn from(e: k3_arith::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    /// 2 for usage errors, 1 for mathematical errors such as bad reduction.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(_) => 1,
        }
    }
}

/// Output of a command in both formats.
#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    /// False when the command ran but found failures (verify-paper).
    pub success: bool,
}

impl Report {
    pub fn new(text: String, json: Value) -> Self {
        Report { text, json, success: true }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.json).expect("JSON values serialize")
        } else {
            self.text.clone()
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "k3", version, about = "Arithmetic of the extremal elliptic K3 surface X and its relatives")]
pub struct Cli {
    /// Print JSON instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count points of the smooth surface over F_q.
    Count {
        /// Built-in surface name or path to a surface file.
        surface: String,
        /// Field as p^r.
        #[arg(long)]
        field: String,
        /// Count the smooth model of the reduction even where the reduction is bad.
        #[arg(long)]
        resolve: bool,
    },
    /// Frobenius traces on the transcendental part for primes up to a bound.
    Traces {
        surface: String,
        #[arg(long, default_value_t = 37)]
        bound: u64,
    },
    /// Coefficients a_p of the CM newform, optionally cubically twisted.
    Newform {
        #[arg(long, default_value_t = 50)]
        bound: u64,
        /// Cube-free twisting parameter.
        #[arg(long, default_value_t = 1)]
        d: i64,
    },
    /// Compare counts on the cubic twist X^(d) with both twisted characters.
    Twist {
        #[arg(long, default_value_t = 3)]
        d: i64,
        #[arg(long, default_value_t = 50)]
        bound: u64,
    },
    /// Singular fibers by Tate's algorithm.
    Fibers {
        surface: String,
        /// Reduce to F_q first.
        #[arg(long)]
        field: Option<String>,
    },
    /// Trivial lattice, Néron-Severi and transcendental lattices over Q, F̄_2 or F̄_3.
    Lattice {
        /// 2^r or 3^r for the supersingular reductions.
        #[arg(long)]
        field: Option<String>,
    },
    /// Height pairings of sections of X/F_4 from the built-in table (T is the 4-torsion section).
    Height {
        /// Section names; defaults to Q and R.
        sections: Vec<String>,
    },
    /// Local zeta function over F_q, or the global zeta function of X^(d).
    Zeta {
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value_t = 1)]
        d: i64,
        #[arg(long, default_value_t = 50)]
        bound: u64,
    },
    /// Compare the order of the pole of ζ at 1/q with the Picard number.
    Tate {
        #[arg(long)]
        field: String,
    },
    /// Recompute every published value and compare with the golden file.
    VerifyPaper {
        /// Only the checks of one group.
        #[arg(long)]
        section: Option<u32>,
        /// Golden file to use instead of the built-in one.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    use Command::*;
    match &cli.command {
        Count { surface, field, resolve } => commands::count(surface, field, *resolve),
        Traces { surface, bound } => commands::traces(surface, *bound),
        Newform { bound, d } => commands::newform(*bound, *d),
        Twist { d, bound } => commands::twist(*d, *bound),
        Fibers { surface, field } => commands::fibers(surface, field.as_deref()),
        Lattice { field } => commands::lattice(field.as_deref()),
        Height { sections } => commands::height(sections),
        Zeta { field, d, bound } => commands::zeta(field.as_deref(), *d, *bound),
        Tate { field } => commands::tate(field),
        VerifyPaper { section, golden } => verify::run(*section, golden.as_deref()),
    }
}
