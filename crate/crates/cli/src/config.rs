use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use grundy_core::{SolveOptions, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Sequence kind: classic, total or l.
    #[arg(long, global = true, default_value = "l", value_parser = parse_variant)]
    pub variant: Variant,
    /// Largest order for which the solver memoises chosen subsets.
    #[arg(long, global = true, default_value_t = 24)]
    pub memo_cap: usize,
    /// Give up on a graph after this many search nodes.
    #[arg(long, global = true)]
    pub node_budget: Option<u64>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Worker threads; 0 uses one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print and accept vertex labels starting from 1.
    #[arg(long, global = true)]
    pub one_indexed: bool,
}

impl RunConfig {
    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            memo_cap: self.memo_cap,
            node_budget: self.node_budget,
            ..SolveOptions::default()
        }
    }

    /// Global flags in canonical form; together with a subcommand's own
    /// flags they reproduce the run.
    pub fn flags(&self) -> Vec<String> {
        let mut out = vec![
            "--variant".to_string(),
            self.variant.name().to_string(),
            "--memo-cap".to_string(),
            self.memo_cap.to_string(),
        ];
        if let Some(b) = self.node_budget {
            out.extend(["--node-budget".to_string(), b.to_string()]);
        }
        out.extend([
            "--seed".to_string(),
            self.seed.to_string(),
            "--workers".to_string(),
            self.workers.to_string(),
            "--format".to_string(),
            self.format.name().to_string(),
        ]);
        if let Some(p) = &self.out {
            out.extend(["--out".to_string(), p.display().to_string()]);
        }
        if self.one_indexed {
            out.push("--one-indexed".to_string());
        }
        out
    }

    pub fn command_line(&self, subcommand: &str, args: &[String]) -> String {
        let mut words = vec!["grundy".to_string(), subcommand.to_string()];
        words.extend(args.iter().cloned());
        words.extend(self.flags());
        words.iter().map(|w| quote(w)).collect::<Vec<_>>().join(" ")
    }

    /// Sizes the global worker pool; call once before any parallel work.
    pub fn init_workers(&self) -> Result<()> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build_global()
            .context("building worker pool")
    }

    pub fn output(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("creating {}", p.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    /// Vertex label as shown to the user.
    pub fn label(&self, v: usize) -> usize {
        v + usize::from(self.one_indexed)
    }

    pub fn labels(&self, vs: impl IntoIterator<Item = usize>) -> Vec<usize> {
        vs.into_iter().map(|v| self.label(v)).collect()
    }
}

fn quote(word: &str) -> String {
    if !word.is_empty()
        && word
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "-_./=,".contains(c))
    {
        word.to_string()
    } else {
        format!("'{}'", word.replace('\'', r"'\''"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting() {
        assert_eq!(quote("--seed"), "--seed");
        assert_eq!(quote("a b"), "'a b'");
        assert_eq!(quote("B~"), "'B~'");
        assert_eq!(quote(""), "''");
    }
}
