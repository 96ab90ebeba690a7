use std::io::Write;

use anyhow::{bail, Result};
use grundy_core::formats::to_graph6;
use grundy_core::SequenceState;
use serde_json::json;

use crate::config::{Format, RunConfig};
use crate::input::graph_arg;
use crate::status::Status;

/// Parses vertex labels separated by spaces or commas, in the user's indexing.
fn parse_sequence(words: &[String], cfg: &RunConfig) -> Result<Vec<usize>> {
    let mut seq = Vec::new();
    for tok in words
        .iter()
        .flat_map(|w| w.split([' ', ',', '\t']))
        .filter(|t| !t.is_empty())
    {
        let Ok(v) = tok.parse::<usize>() else {
            bail!("not a vertex label: {tok:?}")
        };
        if cfg.one_indexed && v == 0 {
            bail!("vertex 0 given with --one-indexed");
        }
        seq.push(v - usize::from(cfg.one_indexed));
    }
    Ok(seq)
}

pub fn run(graph: &str, sequence: &[String], cfg: &RunConfig) -> Result<Status> {
    let mut args = vec![graph.to_string()];
    args.extend(sequence.iter().cloned());
    let command = cfg.command_line("verify", &args);
    let g = graph_arg(graph)?;
    let seq = parse_sequence(sequence, cfg)?;

    let mut state = SequenceState::new();
    let mut steps = Vec::new();
    let mut failure = None;
    for (index, &v) in seq.iter().enumerate() {
        match state.push(&g, cfg.variant, v) {
            Ok(newly) => steps.push((index, v, cfg.labels(newly.iter()))),
            Err(reason) => {
                failure = Some((index, reason.to_string()));
                break;
            }
        }
    }

    let mut out = cfg.output()?;
    match cfg.format {
        Format::Json => {
            let steps: Vec<_> = steps
                .iter()
                .map(|(i, v, newly)| json!({ "index": i, "vertex": cfg.label(*v), "footprinted": newly }))
                .collect();
            let error = failure
                .as_ref()
                .map(|(i, r)| json!({ "index": i, "reason": r }));
            writeln!(
                out,
                "{}",
                json!({
                    "graph6": to_graph6(&g)?,
                    "variant": cfg.variant,
                    "sequence": cfg.labels(seq.iter().copied()),
                    "valid": failure.is_none(),
                    "length": seq.len(),
                    "steps": steps,
                    "error": error,
                    "command": command,
                })
            )?;
        }
        Format::Csv => {
            writeln!(out, "index,vertex,footprinted")?;
            for (i, v, newly) in &steps {
                let newly: Vec<String> = newly.iter().map(|u| u.to_string()).collect();
                writeln!(out, "{i},{},{}", cfg.label(*v), newly.join(" "))?;
            }
            match &failure {
                None => writeln!(out, "# valid, length {}", seq.len())?,
                Some((i, r)) => writeln!(out, "# invalid at index {i}: {r}")?,
            }
        }
    }
    out.flush()?;
    Ok(if failure.is_none() {
        Status::Ok
    } else {
        Status::Invalid
    })
}
