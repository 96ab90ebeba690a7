//! `grundy`: exact Grundy-type domination numbers, sequence validation,
//! constructive families and theorem checks from the command line.

mod check;
mod config;
mod generate;
mod input;
mod search;
mod solve;
mod status;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use grundy_core::GraphError;

use crate::check::CheckArgs;
use crate::config::RunConfig;
use crate::generate::{Family, Params};
use crate::search::SearchArgs;
use crate::status::Status;

#[derive(Debug, Parser)]
#[command(name = "grundy", version, about)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    /// Print the shared options as the canonical flag set to stderr before running.
    #[arg(long, global = true)]
    echo_config: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve every graph in the inputs (graph6 lines or edge-list blocks; stdin if none).
    Solve { inputs: Vec<PathBuf> },
    /// Check a vertex sequence step by step and print what each step footprints.
    Verify {
        /// graph6 string, or a file holding one graph.
        graph: String,
        /// Vertex labels, as separate arguments or one space/comma separated list.
        #[arg(required = true, num_args = 1..)]
        sequence: Vec<String>,
    },
    /// Build a graph family together with its long sequence.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Base graph for saturate and leaf-augment (graph6 or file).
        #[arg(long)]
        graph: Option<String>,
    },
    /// Run theorem checks over a graph corpus; reports as JSON lines.
    Check(CheckArgs),
    /// Hill-climb for graphs whose single deletions realize many distinct changes.
    Search(SearchArgs),
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("GRUNDY_LOG", "warn")).init();
    let cli = Cli::parse();
    let cfg = &cli.config;
    if cli.echo_config {
        eprintln!("{}", cfg.flags().join(" "));
    }
    let result = cfg.init_workers().and_then(|()| match &cli.command {
        Command::Solve { inputs } => solve::run(inputs, cfg),
        Command::Verify { graph, sequence } => verify::run(graph, sequence, cfg),
        Command::Generate {
            family,
            n,
            k,
            graph,
        } => {
            let params = Params {
                n: *n,
                k: *k,
                graph: graph.as_deref(),
            };
            generate::run(*family, &params, cfg)
        }
        Command::Check(a) => check::run(a, cfg),
        Command::Search(a) => search::run(a, cfg),
    });
    match result {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            let status = if e.downcast_ref::<GraphError>().is_some() {
                Status::MalformedInput
            } else {
                Status::Invalid
            };
            status.into()
        }
    }
}
