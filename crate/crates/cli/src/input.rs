use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use grundy_core::formats::{parse_graph6, GraphReader, InputRecord};
use grundy_core::Graph;

/// One graph (or parse failure) and where it came from.
pub struct Sourced {
    pub source: String,
    pub record: InputRecord,
}

fn open(path: &Path) -> Result<Box<dyn BufRead>> {
    if path == Path::new("-") {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(Box::new(BufReader::new(f)))
}

/// Streams records from each path in turn, or from stdin when `paths` is empty.
pub fn records(paths: &[PathBuf]) -> Result<impl Iterator<Item = Sourced>> {
    let stdin = [PathBuf::from("-")];
    let paths = if paths.is_empty() { &stdin[..] } else { paths };
    let mut readers = Vec::with_capacity(paths.len());
    for p in paths {
        let name = if p == Path::new("-") {
            "stdin".to_string()
        } else {
            p.display().to_string()
        };
        readers.push((name, open(p)?));
    }
    Ok(readers.into_iter().flat_map(|(name, r)| {
        GraphReader::new(r).map(move |record| Sourced {
            source: name.clone(),
            record,
        })
    }))
}

/// A graph given on the command line: a graph6 string, or a file holding
/// one graph in either supported format.
pub fn graph_arg(arg: &str) -> Result<Graph> {
    let path = Path::new(arg);
    if path.is_file() {
        let mut recs = GraphReader::new(BufReader::new(File::open(path)?));
        let rec = recs
            .next()
            .ok_or_else(|| anyhow!("{arg}: no graph found"))?;
        return rec
            .result
            .with_context(|| format!("{arg}: line {}", rec.line));
    }
    parse_graph6(arg).with_context(|| format!("{arg:?} is neither a readable file nor graph6"))
}
