//! `quiltkit` command-line tool. Data goes to stdout, diagnostics to stderr.
//! Exit codes: 0 success, 1 invalid input, 2 size bound exceeded,
//! 3 internal inconsistency.

mod commands;
mod error;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quiltkit::permgroup::{DEFAULT_CLASS_ENUM_BOUND, DEFAULT_SEED};
use quiltkit::reptheory::DEFAULT_BRUTE_BOUND;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "quiltkit",
    version,
    about = "Farey symbols, modular dessins and their modular content"
)]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the randomized group algorithms.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Largest group order for which conjugacy classes are enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_CLASS_ENUM_BOUND)]
    pub class_bound: u64,
    /// Largest number of tuples enumerated by brute-force homomorphism counts.
    #[arg(long, global = true, default_value_t = DEFAULT_BRUTE_BOUND)]
    pub brute_bound: u64,
    #[command(subcommand)]
    pub command: Command,
}

/// A Farey symbol given as text, as JSON, or as an Iguanodon index.
/// Symbols need at least three vertices.
#[derive(Debug, Args)]
pub struct SymbolInput {
    /// Symbol text such as "inf o 0 b 1 o inf", or its JSON form.
    #[arg(conflicts_with = "iguanodon")]
    pub symbol: Option<String>,
    /// Use the Iguanodon symbol with this index (n >= 2).
    #[arg(long, value_name = "N")]
    pub iguanodon: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Export {
    Dot,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a Farey symbol and list its triangulation.
    Farey(SymbolInput),
    /// Build the dessin of a Farey symbol.
    Dessin {
        #[command(flatten)]
        input: SymbolInput,
        /// Print the dessin as DOT or as the JSON image arrays.
        #[arg(long)]
        export: Option<Export>,
    },
    /// Monodromy group of a symbol, or the group generated by permutations.
    Group {
        #[command(flatten)]
        input: SymbolInput,
        /// Generator in cycle notation, e.g. "(1 2 3)(4 5)"; repeatable.
        #[arg(long = "gen", value_name = "CYCLES", requires = "degree")]
        generators: Vec<String>,
        /// Degree of the permutations given with --gen.
        #[arg(long)]
        degree: Option<usize>,
        /// Include conjugacy classes and the character table.
        #[arg(long)]
        table: bool,
        /// Count homomorphisms from the surface group of this genus.
        #[arg(long, value_name = "GENUS")]
        tqft: Option<u32>,
    },
    /// End-to-end modular content report.
    Content(SymbolInput),
    #[command(subcommand)]
    Quiver(QuiverCommand),
    #[command(subcommand)]
    Habiro(HabiroCommand),
}

#[derive(Debug, Subcommand)]
pub enum QuiverCommand {
    /// Local quiver of the six one-dimensional modular representations.
    OneModular,
    /// Local quiver of a surface group at a direct sum of simples.
    Surface {
        #[arg(long)]
        genus: u64,
        /// Comma-separated dimensions of the simple summands.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<u64>,
    },
    /// Euler form of two dimension vectors written "a1,a2;b1,b2,b3".
    Euler { alpha: String, beta: String },
}

#[derive(Debug, Subcommand)]
pub enum HabiroCommand {
    /// The cyclotomic polynomial Phi_N.
    Phi { n: u64 },
    /// Comaximality of (Phi_M) and (Phi_N) with their resultant.
    Comax { m: u64, n: u64 },
    /// Clique graph of a comma-separated set of positive integers.
    Clique {
        set: String,
        /// Check that this subset meets every clique component.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Value of the Kontsevich series at a primitive M-th root of unity.
    EvalKontsevich {
        m: u64,
        /// Truncation level; defaults to M.
        #[arg(long)]
        level: Option<u64>,
    },
    /// Compare the radial limit of the Zagier sum with the exact value.
    ZagierCheck {
        m: u64,
        #[arg(long, default_value_t = quiltkit::habiro::DEFAULT_TOLERANCE)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError { kind, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(kind as u8)
        }
    }
}
