//! The `torsoid` command line: argument parsing, input files and reports.
//!
//! Exit codes: 0 success, 1 usage or unreadable input, 2 input violating a
//! precondition (for instance not matching covered), 3 internal invariant
//! failure or failed verification.

pub mod commands;
pub mod error;
pub mod render;
pub mod text;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, Subcommand};

use torsoid_core::matching::Bounds;

use commands::ConvertOutputs;
use error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "torsoid", version, about = "Torsoid decompositions of matching covered graphs")]
struct Cli {
    /// Largest vertex count accepted by enumerations.
    #[arg(long, global = true)]
    bound: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Basic facts about a graph or digraph.
    Info { input: String },
    /// Tight cuts of a matching covered graph.
    TightCuts {
        input: String,
        #[arg(long)]
        nontrivial: bool,
        /// Only the cuts of one maximal nested family.
        #[arg(long)]
        family: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        dot: bool,
    },
    /// The torsoids of a matching covered graph.
    Torsoids {
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        dot: bool,
    },
    /// Torsos of a seeded maximal nested family and their torsoids.
    Torsos {
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        dot: bool,
    },
    /// Collapses, correspondences and residences.
    Classify {
        input: String,
        /// File of `P:` class lines; repeatable.
        #[arg(long = "partition")]
        partitions: Vec<String>,
        /// File of `X:` tight set lines; defaults to every nontrivial tight cut.
        #[arg(long)]
        cuts: Option<String>,
    },
    /// Directed 1-separations.
    Digraph {
        #[command(subcommand)]
        action: DigraphCommand,
    },
    /// Convert between digraphs and bipartite graphs with a perfect matching.
    #[command(group(ArgGroup::new("direction").required(true).args(["to_matching", "to_digraph"])))]
    Convert {
        input: String,
        #[arg(long)]
        to_matching: bool,
        #[arg(long, requires = "matching")]
        to_digraph: bool,
        /// Matching file for `--to-digraph`.
        #[arg(long)]
        matching: Option<String>,
        #[arg(long)]
        write_graph: Option<String>,
        #[arg(long)]
        write_matching: Option<String>,
        #[arg(long)]
        write_digraph: Option<String>,
    },
    /// Run the property suites; nonzero exit on any violation.
    Verify {
        inputs: Vec<String>,
        /// Every corpus instance.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand, Debug)]
enum DigraphCommand {
    Separations {
        input: String,
        #[arg(long)]
        proper: bool,
    },
    Bijection {
        input: String,
    },
    Decompose {
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit code and the text for standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn dispatch(cli: Cli) -> CliResult<(String, bool)> {
    let bounds = cli.bound.map_or_else(Bounds::default, Bounds::with_max_vertices);
    let ok = |s: String| Ok((s, true));
    match cli.command {
        Command::Info { input } => ok(commands::info(&input, bounds)?),
        Command::TightCuts { input, nontrivial, family, seed, dot } => {
            ok(commands::tight_cuts(&input, bounds, nontrivial, family, seed, dot)?)
        }
        Command::Torsoids { input, seed, dot } => ok(commands::torsoids(&input, bounds, seed, dot)?),
        Command::Torsos { input, seed, dot } => ok(commands::torso_report(&input, bounds, seed, dot)?),
        Command::Classify { input, partitions, cuts } => {
            ok(commands::classify(&input, bounds, &partitions, cuts.as_deref())?)
        }
        Command::Digraph { action } => match action {
            DigraphCommand::Separations { input, proper } => ok(commands::separations(&input, bounds, proper)?),
            DigraphCommand::Bijection { input } => ok(commands::bijection(&input, bounds)?),
            DigraphCommand::Decompose { input, seed } => ok(commands::decompose(&input, bounds, seed)?),
        },
        Command::Convert { input, to_matching, matching, write_graph, write_matching, write_digraph, .. } => {
            let outputs = ConvertOutputs {
                graph: write_graph.as_deref(),
                matching: write_matching.as_deref(),
                digraph: write_digraph.as_deref(),
            };
            if to_matching {
                ok(commands::to_matching(&input, &outputs)?)
            } else {
                let matching = matching.ok_or_else(|| CliError::Usage("--to-digraph needs --matching".into()))?;
                ok(commands::to_digraph(&input, &matching, &outputs)?)
            }
        }
        Command::Verify { inputs, all } => commands::verify(&inputs, all, bounds),
    }
}

/// Runs one command line, `args[0]` being the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: text, stderr: String::new() },
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    match dispatch(cli) {
        Ok((stdout, true)) => Outcome { code: 0, stdout, stderr: String::new() },
        Ok((stdout, false)) => Outcome { code: 3, stdout, stderr: "verification failed\n".into() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
