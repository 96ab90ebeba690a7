use std::io::Write;

use anyhow::Result;
use clap::Args;
use grundy_core::formats::to_graph6;
use grundy_core::harness::{extremal_search, SearchError, SearchOptions, SearchTarget};
use grundy_core::SolveError;
use serde_json::json;

use crate::config::{Format, RunConfig};
use crate::input::graph_arg;
use crate::solve::csv_field;
use crate::status::Status;

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// edge-deltas or vertex-deltas.
    #[arg(long)]
    pub target: SearchTarget,
    /// Total edge flips across all restarts.
    #[arg(long, default_value_t = 5000)]
    pub steps: u64,
    #[arg(long, default_value_t = 20)]
    pub restarts: u32,
    #[arg(long, default_value_t = 5)]
    pub n_min: usize,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// Start every restart from this graph (graph6 or file) instead of a random one.
    #[arg(long)]
    pub seed_graph: Option<String>,
}

impl SearchArgs {
    fn args(&self) -> Vec<String> {
        let mut out = vec!["--target".to_string(), self.target.name().to_string()];
        for (flag, v) in [
            ("--steps", self.steps.to_string()),
            ("--restarts", self.restarts.to_string()),
            ("--n-min", self.n_min.to_string()),
            ("--n-max", self.n_max.to_string()),
        ] {
            out.extend([flag.to_string(), v]);
        }
        if let Some(g) = &self.seed_graph {
            out.extend(["--seed-graph".to_string(), g.clone()]);
        }
        out
    }
}

pub fn run(a: &SearchArgs, cfg: &RunConfig) -> Result<Status> {
    let command = cfg.command_line("search", &a.args());
    let opts = SearchOptions {
        seed: cfg.seed,
        steps: a.steps,
        restarts: a.restarts,
        n_min: a.n_min,
        n_max: a.n_max,
        seed_graph: a.seed_graph.as_deref().map(graph_arg).transpose()?,
        solve: cfg.solve_options(),
    };
    let state = match extremal_search(a.target, &opts) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(match e {
                SearchError::OutOfRange { .. } => Status::TheoremFail,
                SearchError::Solve {
                    error: SolveError::BudgetExhausted { .. },
                    ..
                } => Status::BudgetExhausted,
                SearchError::Solve { .. } => Status::Internal,
                SearchError::InvalidOptions(_) => Status::Invalid,
            });
        }
    };
    let best = to_graph6(&state.best)?;
    let mut out = cfg.output()?;
    match cfg.format {
        Format::Json => writeln!(
            out,
            "{}",
            json!({
                "target": a.target,
                "seed": state.rng_seed,
                "best": best,
                "best_n": state.best.n(),
                "best_gamma": state.best_gamma,
                "best_realized": state.best_realized,
                "seed_realized": state.seed_realized,
                "observed": state.observed,
                "steps": state.step_count,
                "evaluations": state.evaluations,
                "skipped": state.skipped,
                "command": command,
            })
        )?,
        Format::Csv => {
            let set = |s: &std::collections::BTreeSet<i64>| {
                s.iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            writeln!(
                out,
                "target,seed,best,best_n,best_gamma,best_realized,observed,steps"
            )?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                a.target,
                state.rng_seed,
                csv_field(&best),
                state.best.n(),
                state.best_gamma,
                set(&state.best_realized),
                set(&state.observed),
                state.step_count
            )?;
        }
    }
    out.flush()?;
    Ok(Status::Ok)
}
