//! Running groups of checks over graph corpora.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Checker, TheoremId, TheoremReport, Verdict};
use crate::generators::{enumerate_labeled_graphs, random_forest, random_graph_with};
use crate::graph::{Graph, GraphError};

/// A named group of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Minimum-degree bound, full-implies-leaf, triple twins, clique characterization.
    Bounds,
    EdgeRemoval,
    VertexRemoval,
    /// Random multi-edge removals, plus the informational addition direction.
    KEdge,
    Induced,
    Forest,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Bounds,
        Suite::EdgeRemoval,
        Suite::VertexRemoval,
        Suite::KEdge,
        Suite::Induced,
        Suite::Forest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bounds => "bounds",
            Suite::EdgeRemoval => "edge-removal",
            Suite::VertexRemoval => "vertex-removal",
            Suite::KEdge => "k-edge",
            Suite::Induced => "induced",
            Suite::Forest => "forest",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub suites: Vec<Suite>,
    /// Stop at the first non-informational failure.
    pub halt_on_fail: bool,
    /// Base seed for the randomized checks; each graph gets a derived seed.
    pub seed: u64,
    pub k: usize,
    pub trials: usize,
    pub induced_samples: usize,
    /// Graphs handed to the worker pool at a time.
    pub chunk_size: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            suites: vec![Suite::Bounds, Suite::EdgeRemoval, Suite::VertexRemoval],
            halt_on_fail: true,
            seed: 42,
            k: 2,
            trials: 5,
            induced_samples: 5,
            chunk_size: 256,
        }
    }
}

fn derived_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Every applicable check from `cfg.suites` on one graph, in a fixed order.
/// `index` is the graph's position in its corpus and only feeds the seeds.
pub fn run_suites(
    checker: &Checker,
    g: &Graph,
    cfg: &SweepConfig,
    index: u64,
) -> Vec<TheoremReport> {
    let start = Instant::now();
    // An unpruned solve is just as exact and also serves the bound check.
    let base = if cfg.suites.contains(&Suite::Bounds) {
        checker.unpruned(g)
    } else {
        checker.gamma(g)
    };
    let seed = derived_seed(cfg.seed, index);
    let mut out = Vec::new();
    for &suite in &cfg.suites {
        match suite {
            Suite::Bounds => {
                out.push(checker.delta_bound_from(g, &base, start));
                out.push(checker.full_implies_leaf_from(g, &base, start));
                out.push(checker.triple_twin_from(g, &base, start));
                out.extend(checker.complete_characterization_from(g, &base, start));
            }
            Suite::EdgeRemoval => out.push(checker.edge_removal_from(g, &base, start)),
            Suite::VertexRemoval => out.push(checker.vertex_removal_from(g, &base, start)),
            Suite::KEdge => {
                out.extend(checker.k_edge_from(g, &base, cfg.k, cfg.trials, seed, false, start));
                out.extend(checker.k_edge_from(g, &base, cfg.k, cfg.trials, seed, true, start));
            }
            Suite::Induced => out.extend(checker.induced_monotone(g, cfg.induced_samples, seed)),
            Suite::Forest => out.extend(checker.forest_full(g)),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub theorem_id: TheoremId,
    pub graphs_checked: u64,
    pub passes: u64,
    pub fails: u64,
    pub inconclusive: u64,
}

/// Per-theorem verdict counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepSummary {
    rows: BTreeMap<TheoremId, SummaryRow>,
}

impl SweepSummary {
    pub fn add(&mut self, r: &TheoremReport) {
        let row = self.rows.entry(r.theorem_id).or_insert(SummaryRow {
            theorem_id: r.theorem_id,
            graphs_checked: 0,
            passes: 0,
            fails: 0,
            inconclusive: 0,
        });
        row.graphs_checked += 1;
        match r.verdict {
            Verdict::Pass => row.passes += 1,
            Verdict::Fail => row.fails += 1,
            Verdict::Inconclusive => row.inconclusive += 1,
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &SummaryRow> {
        self.rows.values()
    }

    pub fn row(&self, id: TheoremId) -> Option<&SummaryRow> {
        self.rows.get(&id)
    }

    /// Failures of non-informational checks.
    pub fn defects(&self) -> u64 {
        self.rows
            .iter()
            .filter(|(id, _)| !id.is_informational())
            .map(|(_, r)| r.fails)
            .sum()
    }

    pub fn inconclusive(&self) -> u64 {
        self.rows.values().map(|r| r.inconclusive).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("theorem_id,graphs_checked,passes,fails,inconclusive\n");
        for (id, r) in &self.rows {
            out.push_str(&format!(
                "{id},{},{},{},{}\n",
                r.graphs_checked, r.passes, r.fails, r.inconclusive
            ));
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub graphs: u64,
    pub summary: SweepSummary,
    /// The failing report that stopped the sweep, if any.
    pub halted_on: Option<TheoremReport>,
}

/// Runs `cfg.suites` over `graphs` on the current rayon pool.
///
/// Reports reach `sink` in input order regardless of which worker produced
/// them, so equal inputs give equal streams (up to `elapsed_ms`).
pub fn sweep<I, F>(graphs: I, checker: &Checker, cfg: &SweepConfig, sink: F) -> SweepOutcome
where
    I: IntoIterator<Item = Graph>,
    F: FnMut(&TheoremReport),
{
    sweep_with(graphs, cfg, |g, i| run_suites(checker, g, cfg, i), sink)
}

/// [`sweep`] with an arbitrary per-graph check. `check` receives each graph
/// and its input position.
pub fn sweep_with<I, C, F>(graphs: I, cfg: &SweepConfig, check: C, mut sink: F) -> SweepOutcome
where
    I: IntoIterator<Item = Graph>,
    C: Fn(&Graph, u64) -> Vec<TheoremReport> + Sync,
    F: FnMut(&TheoremReport),
{
    let mut summary = SweepSummary::default();
    let mut count = 0u64;
    let mut iter = graphs.into_iter();
    let chunk_size = cfg.chunk_size.max(1);
    loop {
        let chunk: Vec<Graph> = iter.by_ref().take(chunk_size).collect();
        if chunk.is_empty() {
            break;
        }
        let results: Vec<Vec<TheoremReport>> = chunk
            .par_iter()
            .enumerate()
            .map(|(i, g)| check(g, count + i as u64))
            .collect();
        for reports in results {
            count += 1;
            for r in reports {
                summary.add(&r);
                sink(&r);
                if cfg.halt_on_fail && r.is_defect() {
                    return SweepOutcome {
                        graphs: count,
                        summary,
                        halted_on: Some(r),
                    };
                }
            }
        }
    }
    SweepOutcome {
        graphs: count,
        summary,
        halted_on: None,
    }
}

/// [`sweep`] over every labelled graph on `n <= 6` vertices.
pub fn exhaustive_sweep<F>(
    n: usize,
    checker: &Checker,
    cfg: &SweepConfig,
    sink: F,
) -> Result<SweepOutcome, GraphError>
where
    F: FnMut(&TheoremReport),
{
    Ok(sweep(enumerate_labeled_graphs(n)?, checker, cfg, sink))
}

/// Erdős–Rényi corpus: `per_cell` graphs for every `(p, n)` pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub ps: Vec<f64>,
    pub n_min: usize,
    pub n_max: usize,
    pub per_cell: usize,
    pub seed: u64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            ps: vec![0.2, 0.5, 0.8],
            n_min: 7,
            n_max: 12,
            per_cell: 100,
            seed: 42,
        }
    }
}

pub fn random_corpus(cfg: &CorpusConfig) -> Result<Vec<Graph>, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for &p in &cfg.ps {
        for n in cfg.n_min..=cfg.n_max {
            for _ in 0..cfg.per_cell {
                out.push(random_graph_with(n, p, &mut rng)?);
            }
        }
    }
    Ok(out)
}

/// `count` random forests on `1..=n_max` vertices; every other one is a tree.
pub fn forest_corpus(count: usize, n_max: usize, seed: u64) -> Result<Vec<Graph>, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(1..=n_max.max(1));
            let attach = if i % 2 == 0 {
                1.0
            } else {
                rng.gen_range(0.5..1.0)
            };
            random_forest(n, attach, rng.gen())
        })
        .collect()
}
