use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use grundy_core::generators::enumerate_labeled_graphs;
use grundy_core::harness::{
    check_worked_example, forest_corpus, random_corpus, run_suites, sweep_with, worked_examples,
    Checker, CorpusConfig, Suite, SweepConfig, TheoremReport,
};
use grundy_core::Graph;

use crate::config::{Format, RunConfig};
use crate::status::Status;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Corpus {
    /// Every labelled graph on --n vertices (at most 6).
    Exhaustive,
    /// Erdős–Rényi graphs, --per-cell for each p in {0.2, 0.5, 0.8} and n in --n-min..=--n-max.
    Random,
    /// Graphs with published values; each also gets a claimed-value check.
    Examples,
    /// --count random trees and forests with at most --n-max vertices.
    Forests,
}

impl Corpus {
    fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[derive(Debug, Clone)]
pub struct SuiteList(pub Vec<Suite>);

fn parse_suites(s: &str) -> Result<SuiteList, String> {
    if s == "all" {
        return Ok(SuiteList(Suite::ALL.to_vec()));
    }
    s.split(',')
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map(SuiteList)
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[arg(long, value_enum, default_value_t = Corpus::Exhaustive)]
    pub corpus: Corpus,
    /// Comma-separated check groups (bounds, edge-removal, vertex-removal,
    /// k-edge, induced, forest) or `all`.
    #[arg(long, default_value = "all", value_parser = parse_suites)]
    pub suite: SuiteList,
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub per_cell: usize,
    #[arg(long, default_value_t = 7)]
    pub n_min: usize,
    #[arg(long, default_value_t = 12)]
    pub n_max: usize,
    #[arg(long, default_value_t = 50)]
    pub count: usize,
    /// Edges per multi-edge trial.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Multi-edge trials per graph.
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    /// Induced subgraphs sampled per graph.
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
    /// Keep going after the first failure.
    #[arg(long)]
    pub keep_going: bool,
    /// Write the summary CSV here (default: stderr, or the output with --format csv).
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

impl CheckArgs {
    fn args(&self) -> Vec<String> {
        let suites: Vec<&str> = self.suite.0.iter().map(|s| s.name()).collect();
        let mut out = vec![
            "--corpus".to_string(),
            self.corpus.name(),
            "--suite".to_string(),
            suites.join(","),
        ];
        for (flag, v) in [
            ("--n", self.n),
            ("--per-cell", self.per_cell),
            ("--n-min", self.n_min),
            ("--n-max", self.n_max),
            ("--count", self.count),
            ("--k", self.k),
            ("--trials", self.trials),
            ("--samples", self.samples),
        ] {
            out.extend([flag.to_string(), v.to_string()]);
        }
        if self.keep_going {
            out.push("--keep-going".to_string());
        }
        if let Some(p) = &self.summary {
            out.extend(["--summary".to_string(), p.display().to_string()]);
        }
        out
    }
}

pub fn run(a: &CheckArgs, cfg: &RunConfig) -> Result<Status> {
    log::info!("{}", cfg.command_line("check", &a.args()));
    let checker = Checker::new(cfg.solve_options());
    let sweep_cfg = SweepConfig {
        suites: a.suite.0.clone(),
        halt_on_fail: !a.keep_going,
        seed: cfg.seed,
        k: a.k,
        trials: a.trials,
        induced_samples: a.samples,
        ..SweepConfig::default()
    };
    let examples = worked_examples();
    let graphs: Box<dyn Iterator<Item = Graph>> = match a.corpus {
        Corpus::Exhaustive => Box::new(enumerate_labeled_graphs(a.n)?),
        Corpus::Random => {
            let corpus = CorpusConfig {
                n_min: a.n_min,
                n_max: a.n_max,
                per_cell: a.per_cell,
                seed: cfg.seed,
                ..CorpusConfig::default()
            };
            Box::new(random_corpus(&corpus)?.into_iter())
        }
        Corpus::Examples => Box::new(examples.iter().map(|e| e.graph.clone())),
        Corpus::Forests => Box::new(forest_corpus(a.count, a.n_max, cfg.seed)?.into_iter()),
    };
    let check = |g: &Graph, i: u64| -> Vec<TheoremReport> {
        let mut out = Vec::new();
        if a.corpus == Corpus::Examples {
            out.push(check_worked_example(&checker, &examples[i as usize]));
        }
        out.extend(run_suites(&checker, g, &sweep_cfg, i));
        out
    };

    let mut out = cfg.output()?;
    let mut write_err = None;
    let outcome = sweep_with(graphs, &sweep_cfg, check, |r| {
        if cfg.format == Format::Json && write_err.is_none() {
            let line = serde_json::to_string(r).expect("reports serialize");
            if let Err(e) = writeln!(out, "{line}") {
                write_err = Some(e);
            }
        }
    });
    if let Some(e) = write_err {
        return Err(e).context("writing reports");
    }
    let csv = outcome.summary.to_csv();
    match (&a.summary, cfg.format) {
        (Some(p), _) => fs::write(p, &csv).with_context(|| format!("writing {}", p.display()))?,
        (None, Format::Csv) => out.write_all(csv.as_bytes())?,
        (None, Format::Json) => eprint!("{csv}"),
    }
    out.flush()?;
    log::info!("{} graphs checked", outcome.graphs);
    if let Some(r) = &outcome.halted_on {
        eprintln!(
            "stopped at first failure: {} on {}",
            r.theorem_id, r.graph_id
        );
    }
    Ok(if outcome.summary.defects() > 0 {
        Status::TheoremFail
    } else if outcome.summary.inconclusive() > 0 {
        Status::BudgetExhausted
    } else {
        Status::Ok
    })
}
