//! Command-line front end for `qsgame`: property checks, equilibrium
//! solving, instance generation and the regression corpus.

pub mod commands;
pub mod corpus;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{Method, Property, Theorem};
use qsgame::game::ENUMERATION_CAP;

#[derive(Debug, Parser)]
#[command(
    name = "qsgame",
    version,
    about = "Quasisupermodular games on finite lattices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a covers document describes a lattice.
    CheckLattice { file: PathBuf },
    /// Check order and topological properties of a function.
    CheckFunction {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        property: Property,
        /// `interval`, `discrete` or a topology document.
        #[arg(long)]
        topology: Option<String>,
        /// Factor index of the own coordinate on product domains.
        #[arg(long, default_value_t = 0)]
        split: usize,
    },
    /// Check the hypotheses of the equilibrium theorems for a game.
    CheckGame { file: PathBuf },
    /// Compute pure equilibria.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        #[arg(long, default_value_t = ENUMERATION_CAP)]
        cap: usize,
    },
    /// Check the conclusion of a structure theorem on one instance.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        theorem: Theorem,
    },
    /// Produce a random instance from a spec such as `seed=1,family=chain,n=4`.
    Generate {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the regression corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusAction {
    Run {
        name: Option<String>,
        /// Rewrite the expected outputs instead of comparing.
        #[arg(long)]
        refreeze: bool,
        #[arg(long, default_value = "corpus")]
        dir: PathBuf,
    },
}

/// Text and exit code of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            Outcome {
                text: e.render().to_string(),
                code,
            }
        }
    }
}

pub fn execute(command: Command) -> Outcome {
    let result = match command {
        Command::CheckLattice { file } => commands::check_lattice(&file),
        Command::CheckFunction {
            file,
            property,
            topology,
            split,
        } => commands::check_function(&file, property, topology.as_deref(), split),
        Command::CheckGame { file } => commands::check_game(&file),
        Command::Solve { file, method, cap } => commands::solve(&file, method, cap),
        Command::Verify { file, theorem } => commands::verify(&file, theorem),
        Command::Generate { spec, out } => commands::generate_cmd(&spec, out.as_deref()),
        Command::Corpus {
            action:
                CorpusAction::Run {
                    name,
                    refreeze,
                    dir,
                },
        } => corpus::run(&dir, name.as_deref(), refreeze),
    };
    match result {
        Ok(r) => Outcome {
            code: i32::from(r.failed()),
            text: r.into_text(),
        },
        Err(e) => Outcome {
            text: format!("ERROR {e:#}\n"),
            code: 2,
        },
    }
}
