//! Command-line front end for the `ansatz` library.
//!
//! Exit codes: 0 on success or a proven identity, 1 when no model fits, an
//! identity fails or a closure construction fails, 2 on usage and input
//! errors.

pub mod bfile;
mod commands;
pub mod model;
pub mod spec;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::run;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ansatz", version, about = "Guess, construct and prove facts about linear recursive sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Guess a recurrence from terms.
    Guess(GuessArgs),
    /// Print terms of a model, a special sequence or an expression.
    Eval(EvalArgs),
    /// Build a closure (sum, product, partial sum, ...) of models.
    Closure(ClosureArgs),
    /// Generating function or functional equation of a model.
    Gf(GfArgs),
    /// Prove a C-finite identity by checking the order bound.
    Prove(ProveArgs),
    /// Classify a C-finite sequence as unit or zero divisor.
    Zdtest(ZdtestArgs),
    /// Equation and variable counts of naive X-recursive guessing.
    Diag(DiagArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AnsatzArg {
    #[value(alias = "poly")]
    Polynomial,
    #[value(alias = "c-finite")]
    Cfinite,
    Holonomic,
    #[value(alias = "x-recursive", alias = "xrec")]
    Xrecursive,
}

#[derive(Debug, Clone, Args)]
pub struct DataArgs {
    /// Comma-separated terms (integers or p/q).
    #[arg(long, allow_hyphen_values = true)]
    pub terms: Option<String>,
    /// Read terms from a b-file.
    #[arg(long)]
    pub bfile: Option<PathBuf>,
    /// Index of the first inline term.
    #[arg(long)]
    pub start: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct GuessOptions {
    #[arg(long)]
    pub ansatz: Option<AnsatzArg>,
    #[arg(long, default_value_t = 8)]
    pub max_order: usize,
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
    #[arg(long, default_value_t = 5)]
    pub margin: usize,
    /// Leading ratios the first-order X-recursive guesser may skip.
    #[arg(long, default_value_t = 3)]
    pub max_skip: usize,
    /// Coefficient atom for X-recursive dictionary guessing, NAME=rec:..;init:..
    #[arg(long = "basis")]
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct GuessArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub options: GuessOptions,
    /// Emit one JSON object per line.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Special {
    Somos,
    Bell,
    Bernoulli,
    Tangent,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// Model SPEC: rec:..;init:..[;start:S], a JSON model line, or @file.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub special: Option<Special>,
    /// Identity-language expression in n, e.g. "F(2n) + L(n+1)".
    #[arg(long, allow_hyphen_values = true)]
    pub expr: Option<String>,
    /// Extra atom for --expr, NAME=rec:..;init:..
    #[arg(long = "define")]
    pub define: Vec<String>,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    /// Print "n value" lines instead of a comma-separated list.
    #[arg(long)]
    pub bfile: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClosureOp {
    Add,
    /// Termwise (Hadamard) product.
    Mul,
    Psum,
    Section,
    Cauchy,
}

#[derive(Debug, Clone, Args)]
pub struct ClosureArgs {
    pub op: ClosureOp,
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: Option<String>,
    /// Multisection modulus.
    #[arg(long)]
    pub m: Option<usize>,
    /// Multisection residue.
    #[arg(long)]
    pub r: Option<usize>,
    /// Extra shift rows for X-recursive elimination.
    #[arg(long, default_value_t = 0)]
    pub retry_depth: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GfArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub options: GuessOptions,
    /// Use a model SPEC instead of guessing from terms.
    #[arg(long)]
    pub model: Option<String>,
    /// Series truncation order for verification.
    #[arg(long, default_value_t = 25)]
    pub order: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ProveArgs {
    /// Identity such as "F(2n) = 2*F(n)*F(n+1) - F(n)^2".
    #[arg(allow_hyphen_values = true)]
    pub identity: String,
    #[arg(long = "define")]
    pub define: Vec<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ZdtestArgs {
    /// C-finite SPEC.
    #[arg(long)]
    pub seq: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub expr: Option<String>,
    #[arg(long = "define")]
    pub define: Vec<String>,
    #[arg(long, default_value_t = ansatz::seq::DEFAULT_SCAN)]
    pub scan: usize,
    #[arg(long, default_value_t = ansatz::seq::DEFAULT_MAX_PERIOD)]
    pub max_period: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct DiagArgs {
    /// Recurrence order.
    #[arg(long)]
    pub k: usize,
    /// Order of each coefficient recurrence.
    #[arg(long)]
    pub m: usize,
    /// Numbers of terms, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long)]
    pub json: bool,
}

/// Result of one invocation: exit code plus the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub(crate) fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    pub(crate) fn failure(stdout: String) -> Self {
        Outcome {
            code: EXIT_FAILURE,
            stdout,
            stderr: String::new(),
        }
    }

    pub(crate) fn usage(message: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}
