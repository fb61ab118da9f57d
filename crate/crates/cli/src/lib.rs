//! Command line front-end: load `.bcat` files, build the base structured
//! categories, check fibration properties and run the theorem suites.

pub mod commands;
pub mod expr;
pub mod report;
pub mod suites;
pub mod workspace;

use std::path::PathBuf;

use basecat_core::DEFAULT_BUDGET;
use clap::{Parser, Subcommand, ValueEnum};

pub use report::{Format, Report, Status};
pub use suites::Suite;
pub use workspace::CliError;

#[derive(Debug, Parser)]
#[command(name = "basecat", version, about = "Build and check base structured categories of finite functors")]
pub struct Cli {
    /// Seed for the random instances of `verify`.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Step budget for exhaustive scans and isomorphism searches.
    #[arg(long, global = true, env = "BASECAT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Write the constructed category as `.bcat` to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Write a DOT diagram to this file.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Input files, read in order as one document (default: the bundled corpus).
    #[arg(short = 'i', long = "input", global = true)]
    pub inputs: Vec<PathBuf>,
    /// Accept concrete structures that are not faithful.
    #[arg(long, global = true)]
    pub allow_unfaithful: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    Graph,
    ConcreteGraph,
    Left,
    Right,
    ConcreteLeft,
    ConcreteRight,
    Selfdual,
    Grothendieck,
    TransGroupoid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Fibration,
    Opfibration,
    Cartesian,
    Split,
    Iso,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate every declaration.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Build a category from declared inputs, e.g. `construct graph idTwo`.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        /// Names or expressions, e.g. `F U` or `op(F)`.
        #[arg(required = true)]
        args: Vec<String>,
    },
    /// Check a projection or search for an isomorphism.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        /// A projection expression such as `graph(idTwo)`; for `cartesian`
        /// optionally a morphism id; for `iso` two categories.
        #[arg(required = true)]
        args: Vec<String>,
        /// Use the opcartesian notions (`cartesian`, `split`).
        #[arg(long)]
        op: bool,
    },
    /// Run a theorem suite over the corpus and seeded random instances.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Directory of `.bcat` files read in name order (default: bundled).
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Random instances per suite.
        #[arg(long, default_value_t = 20)]
        random: usize,
    },
    /// Write a DOT diagram of a category or construction.
    Export {
        expr: String,
        #[arg(long)]
        show_identities: bool,
        /// Group objects by the base object they lie over.
        #[arg(long)]
        cluster: bool,
    },
}

impl Cli {
    /// The command as echoed at the top of a report.
    pub fn echo(&self) -> String {
        let files = |fs: &[PathBuf]| fs.iter().map(|f| f.display().to_string()).collect::<Vec<_>>().join(" ");
        match &self.command {
            Command::Validate { files: fs } => format!("validate {}", files(fs)),
            Command::Construct { kind, args } => {
                format!("construct {} {}", kind.to_possible_value().unwrap().get_name(), args.join(" "))
            }
            Command::Check { kind, args, op } => format!(
                "check {}{} {}",
                kind.to_possible_value().unwrap().get_name(),
                if *op { " --op" } else { "" },
                args.join(" ")
            ),
            Command::Verify { suite, random, .. } => {
                format!("verify {} --seed {} --random {random}", suite.id(), self.seed)
            }
            Command::Export { expr, .. } => format!("export {expr}"),
        }
    }
}

/// Runs a parsed command line. Reports carry claim failures; errors are
/// for input that could not be read, parsed or resolved.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    commands::run(cli)
}
