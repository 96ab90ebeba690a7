use std::io::Write;

use anyhow::{anyhow, Result};
use clap::ValueEnum;
use grundy_core::constructions::{
    clique_with_leaves, cycle_with_leaf, cycle_witness, double_cycle_bridge, leaf_augment,
    saturate, t_structure, ConstructionError, ConstructionOutput,
};
use grundy_core::formats::to_graph6;
use grundy_core::{solve, Variant};
use serde_json::json;

use crate::config::{Format, RunConfig};
use crate::input::graph_arg;
use crate::solve::csv_field;
use crate::status::Status;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// C_n (needs --n).
    Cycle,
    /// C_n with one pendant (needs --n).
    CycleWithLeaf,
    /// K_k with pendants on all but one vertex (needs --k).
    CliqueWithLeaves,
    /// Two C_n joined by a bridge (needs --n).
    DoubleCycleBridge,
    /// Half graph with a matching, for total sequences (needs --k).
    TStructure,
    /// Pendants on every vertex a maximum sequence misses (needs --graph).
    Saturate,
    /// Pendants on every vertex of degree at least three (needs --graph).
    LeafAugment,
}

impl Family {
    fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

pub struct Params<'a> {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub graph: Option<&'a str>,
}

fn build(family: Family, p: &Params, cfg: &RunConfig) -> Result<ConstructionOutput> {
    let need =
        |v: Option<usize>, flag: &str| v.ok_or_else(|| anyhow!("{} needs {flag}", family.name()));
    let graph = || -> Result<_> {
        graph_arg(
            p.graph
                .ok_or_else(|| anyhow!("{} needs --graph", family.name()))?,
        )
    };
    Ok(match family {
        Family::Cycle => cycle_witness(need(p.n, "--n")?)?,
        Family::CycleWithLeaf => cycle_with_leaf(need(p.n, "--n")?)?,
        Family::CliqueWithLeaves => clique_with_leaves(need(p.k, "--k")?)?,
        Family::DoubleCycleBridge => double_cycle_bridge(need(p.n, "--n")?)?,
        Family::TStructure => t_structure(need(p.k, "--k")?)?,
        Family::Saturate => {
            let g = graph()?;
            let seq = solve(&g, Variant::L, &cfg.solve_options())?.witness;
            saturate(&g, &seq)?
        }
        Family::LeafAugment => leaf_augment(&graph()?)?,
    })
}

pub fn run(family: Family, p: &Params, cfg: &RunConfig) -> Result<Status> {
    let mut args = vec!["--family".to_string(), family.name()];
    for (flag, v) in [("--n", p.n), ("--k", p.k)] {
        if let Some(v) = v {
            args.extend([flag.to_string(), v.to_string()]);
        }
    }
    if let Some(g) = p.graph {
        args.extend(["--graph".to_string(), g.to_string()]);
    }
    let command = cfg.command_line("generate", &args);
    let built = match build(family, p, cfg) {
        Ok(b) => b,
        Err(e) => {
            let status = match e.downcast_ref::<ConstructionError>() {
                Some(ConstructionError::WitnessRejected { .. }) => Status::Internal,
                _ => return Err(e),
            };
            eprintln!("error: {e:#}");
            return Ok(status);
        }
    };
    if let Some(w) = &built.warning {
        log::warn!("{w}");
    }
    let graph6 = to_graph6(&built.graph)?;
    let witness = cfg.labels(built.witness.iter().copied());
    let mut out = cfg.output()?;
    match cfg.format {
        Format::Json => writeln!(
            out,
            "{}",
            json!({
                "family": family.name(),
                "provenance": built.provenance,
                "graph6": graph6,
                "n": built.graph.n(),
                "variant": built.variant,
                "expected_gamma": built.expected_gamma,
                "witness": witness,
                "warning": built.warning,
                "command": command,
            })
        )?,
        Format::Csv => {
            let w: Vec<String> = witness.iter().map(|v| v.to_string()).collect();
            writeln!(out, "family,graph6,n,variant,expected_gamma,witness")?;
            writeln!(
                out,
                "{},{},{},{},{},{}",
                family.name(),
                csv_field(&graph6),
                built.graph.n(),
                built.variant,
                built.expected_gamma,
                w.join(" ")
            )?;
        }
    }
    out.flush()?;
    Ok(Status::Ok)
}
