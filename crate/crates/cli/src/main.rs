mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hallfrat::Error;

/// Exact Hall-subgroup and Frattini-argument computations on permutation
/// groups.
#[derive(Debug, Parser)]
#[command(name = "hallfrat", version)]
pub struct Cli {
    /// Print the machine-readable JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Also write the JSON document to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hall subgroup analysis.
    Hall {
        #[command(subcommand)]
        command: HallCommand,
    },
    /// Hall subgroups H of a normal subgroup A with G = A N_G(H).
    Frattini(FrattiniArgs),
    /// Reproduce one of the two counterexample constructions.
    Counterexample {
        #[arg(value_enum)]
        which: Counterexample,
    },
    /// The built-in corpus.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
    /// Basic facts about a group.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum HallCommand {
    /// Existence and conjugacy classes of pi-Hall subgroups.
    Analyze {
        #[command(flatten)]
        group: GroupArgs,
        /// Comma-separated primes; "" for the empty set.
        #[arg(long)]
        pi: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusCommand {
    /// Run every property suite over the corpus.
    Run(CorpusArgs),
}

#[derive(Debug, Subcommand)]
pub enum GroupCommand {
    Info {
        #[command(flatten)]
        group: GroupArgs,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GroupArgs {
    /// Group expression, e.g. "DirectProduct(Sym(3), Cyclic(5))".
    #[arg(long)]
    pub group: Option<String>,
    /// Group file with `degree` and `gen` lines.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FrattiniArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub pi: String,
    /// `auto` (every normal subgroup), `trivial`, `whole`, `derived`, a named
    /// subgroup of the construction, `#N` for the N-th normal subgroup, or
    /// generators in cycle notation separated by `;`.
    #[arg(long, default_value = "auto")]
    pub normal: String,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Skip groups above this order.
    #[arg(long)]
    pub max_order: Option<u64>,
    #[arg(long, value_enum, default_value_t = PiPolicyArg::All)]
    pub pi_policy: PiPolicyArg,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    Constructive,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Counterexample {
    Remark1,
    Remark2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PiPolicyArg {
    All,
    Singletons,
}

pub const EXIT_VIOLATION: u8 = 2;
pub const EXIT_USAGE: u8 = 3;
pub const EXIT_BOUND: u8 = 4;

pub fn exit_code_for(e: &Error) -> u8 {
    if e.is_violation() {
        EXIT_VIOLATION
    } else if e.is_bound() {
        EXIT_BOUND
    } else {
        EXIT_USAGE
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::NotEPi { .. }) {
                eprintln!(
                    "note: the theorem needs the whole group in E_pi; a normal subgroup in E_pi \
                     is not enough (see `hallfrat counterexample remark1`)"
                );
            }
            ExitCode::from(exit_code_for(&e))
        }
    }
}
