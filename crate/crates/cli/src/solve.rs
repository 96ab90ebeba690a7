use std::io::Write;
use std::path::PathBuf;

use anyhow::Result;
use grundy_core::formats::to_graph6;
use grundy_core::{solve, Graph, GraphError, SolveError, SolveResult};
use rayon::prelude::*;
use serde_json::json;

use crate::config::{Format, RunConfig};
use crate::input::{records, Sourced};
use crate::status::Status;

const CHUNK: usize = 512;

pub fn run(inputs: &[PathBuf], cfg: &RunConfig) -> Result<Status> {
    let args: Vec<String> = inputs.iter().map(|p| p.display().to_string()).collect();
    let command = cfg.command_line("solve", &args);
    let opts = cfg.solve_options();
    let mut out = cfg.output()?;
    if cfg.format == Format::Csv {
        writeln!(
            out,
            "graph6,n,variant,gamma,witness,nodes_explored,elapsed_ms,exact"
        )?;
    }
    let mut status = Status::Ok;
    let mut stream = records(inputs)?;
    loop {
        let chunk: Vec<Sourced> = stream.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let solved: Vec<Result<Result<SolveResult, SolveError>, &GraphError>> = chunk
            .par_iter()
            .map(|s| {
                s.record
                    .result
                    .as_ref()
                    .map(|g| solve(g, cfg.variant, &opts))
            })
            .collect();
        for (s, outcome) in chunk.iter().zip(solved) {
            status = status.max(emit(&mut out, cfg, &command, s, outcome)?);
        }
    }
    out.flush()?;
    Ok(status)
}

fn emit(
    out: &mut dyn Write,
    cfg: &RunConfig,
    command: &str,
    s: &Sourced,
    outcome: Result<Result<SolveResult, SolveError>, &GraphError>,
) -> Result<Status> {
    let location = format!("{}:{}", s.source, s.record.line);
    let error = |out: &mut dyn Write, msg: String, status| -> Result<Status> {
        log::warn!("{location}: {msg}");
        if cfg.format == Format::Json {
            writeln!(
                out,
                "{}",
                json!({ "input": location, "error": msg, "command": command })
            )?;
        }
        Ok(status)
    };
    let result = match outcome {
        Ok(r) => r,
        Err(e) => return error(out, e.to_string(), Status::MalformedInput),
    };
    let g: &Graph = s.record.result.as_ref().expect("parsed when solved");
    let (value, witness, nodes, elapsed_ms, status) = match result {
        Ok(r) => {
            let ms = r.elapsed.as_secs_f64() * 1e3;
            (
                r.value,
                r.witness,
                r.stats.nodes_explored,
                Some(ms),
                Status::Ok,
            )
        }
        Err(SolveError::BudgetExhausted {
            lower_bound,
            witness,
            stats,
        }) => (
            lower_bound,
            witness,
            stats.nodes_explored,
            None,
            Status::BudgetExhausted,
        ),
        Err(e @ SolveError::TooLarge { .. }) => {
            return error(out, e.to_string(), Status::MalformedInput)
        }
        Err(e) => return error(out, e.to_string(), Status::Internal),
    };
    let exact = status == Status::Ok;
    let graph6 = to_graph6(g)?;
    let witness = cfg.labels(witness);
    match cfg.format {
        Format::Json => writeln!(
            out,
            "{}",
            json!({
                "graph6": graph6,
                "n": g.n(),
                "variant": cfg.variant,
                "gamma": value,
                "witness": witness,
                "nodes_explored": nodes,
                "elapsed_ms": elapsed_ms,
                "exact": exact,
                "command": command,
            })
        )?,
        Format::Csv => {
            let w: Vec<String> = witness.iter().map(|v| v.to_string()).collect();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                csv_field(&graph6),
                g.n(),
                cfg.variant,
                value,
                w.join(" "),
                nodes,
                elapsed_ms.map_or(String::new(), |t| format!("{t:.3}")),
                exact
            )?
        }
    }
    Ok(status)
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
