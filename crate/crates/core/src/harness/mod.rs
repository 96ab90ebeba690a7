//! Machine checks of the known bounds on the L-Grundy number.
//!
//! Each check solves the graphs it needs exactly and returns a
//! [`TheoremReport`] that carries enough of the inputs (graph6, seeds,
//! per-element values) for [`replay`] to reproduce the verdict. A solve that
//! runs out of budget yields [`Verdict::Inconclusive`], never a pass.

mod examples;
mod search;
mod sweep;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bitset::VertexSet;
use crate::engine::Variant;
use crate::formats::{parse_graph6, to_graph6};
use crate::graph::Graph;
use crate::solver::{solve, SolveError, SolveOptions, SolveResult};

pub use examples::{check_worked_example, prism_k4, worked_examples, WorkedExample};
pub use search::{
    delta_profile, extremal_search, DeltaProfile, SearchError, SearchOptions, SearchState,
    SearchTarget,
};
pub use sweep::{
    exhaustive_sweep, forest_corpus, random_corpus, run_suites, sweep, sweep_with, CorpusConfig,
    Suite, SummaryRow, SweepConfig, SweepOutcome, SweepSummary,
};

/// The statements the harness knows how to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// `γ_L ≤ n − δ + 1` whenever `δ ≥ 1`.
    DeltaBound,
    /// `γ_L = n` forces a vertex of degree at most one.
    FullImpliesLeaf,
    /// Three pairwise adjacent closed twins rule out `γ_L = n`.
    TripleTwin,
    /// On connected graphs with `n ≥ 3`, `γ_L = 2` exactly for cliques.
    CompleteCharacterization,
    /// Deleting an edge changes `γ_L` by `-1..=+2`.
    EdgeRemoval,
    /// Deleting a vertex changes `γ_L` by `-2..=0`.
    VertexRemoval,
    /// Deleting `k` edges changes `γ_L` by `-k..=+2k`.
    KEdgeRemoval,
    /// The same window for adding `k` edges. Reported, never enforced.
    KEdgeAddition,
    /// Induced subgraphs never have a larger `γ_L`.
    InducedMonotone,
    /// Forests have `γ_L = n`.
    ForestFull,
    /// A specific graph has a specific published value.
    WorkedExample,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::DeltaBound,
        TheoremId::FullImpliesLeaf,
        TheoremId::TripleTwin,
        TheoremId::CompleteCharacterization,
        TheoremId::EdgeRemoval,
        TheoremId::VertexRemoval,
        TheoremId::KEdgeRemoval,
        TheoremId::KEdgeAddition,
        TheoremId::InducedMonotone,
        TheoremId::ForestFull,
        TheoremId::WorkedExample,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::DeltaBound => "delta-bound",
            TheoremId::FullImpliesLeaf => "full-implies-leaf",
            TheoremId::TripleTwin => "triple-twin",
            TheoremId::CompleteCharacterization => "complete-characterization",
            TheoremId::EdgeRemoval => "edge-removal",
            TheoremId::VertexRemoval => "vertex-removal",
            TheoremId::KEdgeRemoval => "k-edge-removal",
            TheoremId::KEdgeAddition => "k-edge-addition",
            TheoremId::InducedMonotone => "induced-monotone",
            TheoremId::ForestFull => "forest-full",
            TheoremId::WorkedExample => "worked-example",
        }
    }

    /// Informational checks are reported but a failure is not a defect.
    pub fn is_informational(self) -> bool {
        self == TheoremId::KEdgeAddition
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown theorem id {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// A solve hit its node budget or cap, so nothing was decided.
    Inconclusive,
}

/// Outcome of one check on one graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem_id: TheoremId,
    /// graph6 encoding of the checked graph.
    pub graph_id: String,
    /// The relation that was tested, in words.
    pub expected: String,
    /// Every value the verdict depends on.
    pub observed: Value,
    pub verdict: Verdict,
    pub elapsed_ms: f64,
}

impl TheoremReport {
    pub fn is_defect(&self) -> bool {
        self.verdict == Verdict::Fail && !self.theorem_id.is_informational()
    }

    pub fn graph(&self) -> Result<Graph, crate::GraphError> {
        parse_graph6(&self.graph_id)
    }
}

/// Why a check stopped before reaching a verdict.
struct Halt {
    verdict: Verdict,
    observed: Value,
}

impl From<SolveError> for Halt {
    fn from(e: SolveError) -> Self {
        let verdict = match e {
            SolveError::WitnessRejected { .. } => Verdict::Fail,
            _ => Verdict::Inconclusive,
        };
        Halt {
            verdict,
            observed: json!({ "solver_error": e.to_string() }),
        }
    }
}

fn graph_id(g: &Graph) -> String {
    to_graph6(g).unwrap_or_else(|_| format!("<n={}>", g.n()))
}

fn run<F>(id: TheoremId, g: &Graph, expected: String, start: Instant, body: F) -> TheoremReport
where
    F: FnOnce() -> Result<(bool, Value), Halt>,
{
    let (verdict, observed) = match body() {
        Ok((true, v)) => (Verdict::Pass, v),
        Ok((false, v)) => (Verdict::Fail, v),
        Err(h) => (h.verdict, h.observed),
    };
    TheoremReport {
        theorem_id: id,
        graph_id: graph_id(g),
        expected,
        observed,
        verdict,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn set_json(s: &BTreeSet<i64>) -> Value {
    json!(s.iter().collect::<Vec<_>>())
}

/// Runs the checks against one solver configuration.
///
/// Checks other than [`Checker::delta_bound`] use the configured options
/// as-is; the minimum-degree bound is always checked with the solver's own
/// use of that bound switched off.
#[derive(Debug, Clone, Copy, Default)]
pub struct Checker {
    pub solve: SolveOptions,
}

impl Checker {
    pub fn new(solve: SolveOptions) -> Self {
        Checker { solve }
    }

    fn gamma(&self, g: &Graph) -> Result<SolveResult, SolveError> {
        solve(g, Variant::L, &self.solve)
    }

    fn unpruned(&self, g: &Graph) -> Result<SolveResult, SolveError> {
        solve(g, Variant::L, &self.solve.without_delta_bound())
    }

    pub fn delta_bound(&self, g: &Graph) -> TheoremReport {
        let start = Instant::now();
        let base = self.unpruned(g);
        self.delta_bound_from(g, &base, start)
    }

    fn delta_bound_from(
        &self,
        g: &Graph,
        base: &Result<SolveResult, SolveError>,
        start: Instant,
    ) -> TheoremReport {
        let expected = "delta = 0 or gamma <= n - delta + 1".to_string();
        run(TheoremId::DeltaBound, g, expected, start, || {
            let r = base.clone()?;
            let n = g.n();
            let delta = g.min_degree().unwrap_or(0);
            let bound = (delta > 0).then(|| n + 1 - delta);
            let ok = bound.is_none_or(|b| r.value <= b);
            Ok((
                ok,
                json!({ "n": n, "delta": delta, "gamma": r.value, "bound": bound, "witness": r.witness }),
            ))
        })
    }

    pub fn full_implies_leaf(&self, g: &Graph) -> TheoremReport {
        let start = Instant::now();
        let base = self.gamma(g);
        self.full_implies_leaf_from(g, &base, start)
    }

    fn full_implies_leaf_from(
        &self,
        g: &Graph,
        base: &Result<SolveResult, SolveError>,
        start: Instant,
    ) -> TheoremReport {
        let expected = "gamma = n implies delta <= 1".to_string();
        run(TheoremId::FullImpliesLeaf, g, expected, start, || {
            let r = base.clone()?;
            let delta = g.min_degree().unwrap_or(0);
            let ok = r.value != g.n() || delta <= 1;
            Ok((ok, json!({ "n": g.n(), "delta": delta, "gamma": r.value })))
        })
    }

    pub fn triple_twin(&self, g: &Graph) -> TheoremReport {
        let start = Instant::now();
        let base = self.gamma(g);
        self.triple_twin_from(g, &base, start)
    }

    fn triple_twin_from(
        &self,
        g: &Graph,
        base: &Result<SolveResult, SolveError>,
        start: Instant,
    ) -> TheoremReport {
        let expected = "three pairwise adjacent closed twins imply gamma != n".to_string();
        run(TheoremId::TripleTwin, g, expected, start, || {
            let triple = g.twin_triple();
            if triple.is_none() {
                return Ok((true, json!({ "n": g.n(), "triple": null })));
            }
            let r = base.clone()?;
            Ok((
                r.value != g.n(),
                json!({ "n": g.n(), "triple": triple, "gamma": r.value }),
            ))
        })
    }

    /// `None` unless `g` is connected with at least three vertices.
    pub fn complete_characterization(&self, g: &Graph) -> Option<TheoremReport> {
        let start = Instant::now();
        let base = self.gamma(g);
        self.complete_characterization_from(g, &base, start)
    }

    fn complete_characterization_from(
        &self,
        g: &Graph,
        base: &Result<SolveResult, SolveError>,
        start: Instant,
    ) -> Option<TheoremReport> {
        if g.n() < 3 || !g.is_connected() {
            return None;
        }
        let expected = "gamma = 2 iff complete; a length-2 witness is an adjacent pair".to_string();
        Some(run(
            TheoremId::CompleteCharacterization,
            g,
            expected,
            start,
            || {
                let r = base.clone()?;
                let complete = g.is_complete();
                let adjacent_pair = (r.value == 2).then(|| g.has_edge(r.witness[0], r.witness[1]));
                let ok = (r.value == 2) == complete && adjacent_pair != Some(false);
                Ok((
                    ok,
                    json!({ "gamma": r.value, "complete": complete, "witness": r.witness, "adjacent_pair": adjacent_pair }),
                ))
            },
        ))
    }

    pub fn edge_removal(&self, g: &Graph) -> TheoremReport {
        let start = Instant::now();
        let base = self.gamma(g);
        self.edge_removal_from(g, &base, start)
    }

    fn edge_removal_from(
        &self,
        g: &Graph,
        base: &Result<SolveResult, SolveError>,
        start: Instant,
    ) -> TheoremReport {
        let expected = "gamma - 1 <= gamma(G - e) <= gamma + 2 for every edge e".to_string();
        run(TheoremId::EdgeRemoval, g, expected, start, || {
            let gamma = base.clone()?.value as i64;
            let mut rows = Vec::new();
            let mut realized = BTreeSet::new();
            let mut ok = true;
            for (u, v) in g.edges() {
                let h = g.remove_edge(u, v).expect("edge exists");
                let after = self.gamma(&h)?.value as i64;
                realized.insert(after - gamma);
                ok &= (-1..=2).contains(&(after - gamma));
                rows.push(json!([u, v, after]));
            }
            Ok((
                ok,
                json!({ "gamma": gamma, "removals": rows, "realized": set_json(&realized) }),
            ))
        })
    }

    pub fn vertex_removal(&self, g: &Graph) -> TheoremReport {
        let start = Instant::now();
        let base = self.gamma(g);
        self.vertex_removal_from(g, &base, start)
    }

    fn vertex_removal_from(
        &self,
        g: &Graph,
        base: &Result<SolveResult, SolveError>,
        start: Instant,
    ) -> TheoremReport {
        let expected = "gamma - 2 <= gamma(G - u) <= gamma for every vertex u".to_string();
        run(TheoremId::VertexRemoval, g, expected, start, || {
            let gamma = base.clone()?.value as i64;
            let mut rows = Vec::new();
            let mut realized = BTreeSet::new();
            let mut ok = true;
            for u in 0..g.n() {
                let h = g.remove_vertex(u).expect("vertex exists");
                let after = self.gamma(&h)?.value as i64;
                realized.insert(after - gamma);
                ok &= (-2..=0).contains(&(after - gamma));
                rows.push(json!([u, after]));
            }
            Ok((
                ok,
                json!({ "gamma": gamma, "removals": rows, "realized": set_json(&realized) }),
            ))
        })
    }

    /// Removes `trials` random `k`-subsets of edges. `None` when `g` has
    /// fewer than `k` edges.
    pub fn k_edge_removal(
        &self,
        g: &Graph,
        k: usize,
        trials: usize,
        seed: u64,
    ) -> Option<TheoremReport> {
        let start = Instant::now();
        let base = self.gamma(g);
        self.k_edge_from(g, &base, k, trials, seed, false, start)
    }

    /// Adds `trials` random `k`-subsets of non-edges and tests the same
    /// `-k..=+2k` window. Informational: the window is not implied by the
    /// single-edge removal bounds in this direction.
    pub fn k_edge_addition(
        &self,
        g: &Graph,
        k: usize,
        trials: usize,
        seed: u64,
    ) -> Option<TheoremReport> {
        let start = Instant::now();
        let base = self.gamma(g);
        self.k_edge_from(g, &base, k, trials, seed, true, start)
    }

    #[allow(clippy::too_many_arguments)]
    fn k_edge_from(
        &self,
        g: &Graph,
        base: &Result<SolveResult, SolveError>,
        k: usize,
        trials: usize,
        seed: u64,
        add: bool,
        start: Instant,
    ) -> Option<TheoremReport> {
        let pool: Vec<_> = if add {
            (1..g.n())
                .flat_map(|v| (0..v).map(move |u| (u, v)))
                .filter(|&(u, v)| !g.has_edge(u, v))
                .collect()
        } else {
            g.edges().collect()
        };
        if k == 0 || pool.len() < k {
            return None;
        }
        let (id, verb) = if add {
            (TheoremId::KEdgeAddition, "adding")
        } else {
            (TheoremId::KEdgeRemoval, "removing")
        };
        let expected = format!("gamma - k <= gamma(G') <= gamma + 2k after {verb} k edges");
        Some(run(id, g, expected, start, || {
            let gamma = base.clone()?.value as i64;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rows = Vec::with_capacity(trials);
            let mut ok = true;
            let k_i = k as i64;
            for _ in 0..trials {
                let picked: Vec<_> = sample(&mut rng, pool.len(), k)
                    .into_iter()
                    .map(|i| pool[i])
                    .collect();
                let mut h = g.clone();
                for &(u, v) in &picked {
                    h = if add {
                        h.add_edge(u, v)
                    } else {
                        h.remove_edge(u, v)
                    }
                    .expect("edge in pool");
                }
                let after = self.gamma(&h)?.value as i64;
                ok &= (gamma - k_i..=gamma + 2 * k_i).contains(&after);
                rows.push(json!({ "edges": picked, "gamma": after }));
            }
            Ok((
                ok,
                json!({ "k": k, "trials": trials, "seed": seed, "gamma": gamma, "samples": rows }),
            ))
        }))
    }

    /// Compares `g` against `samples` random non-empty induced subgraphs.
    pub fn induced_monotone(&self, g: &Graph, samples: usize, seed: u64) -> Option<TheoremReport> {
        if g.n() == 0 {
            return None;
        }
        let start = Instant::now();
        let expected = "gamma(G[S]) <= gamma(G) for induced subgraphs".to_string();
        Some(run(TheoremId::InducedMonotone, g, expected, start, || {
            let gamma = self.gamma(g)?.value;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rows = Vec::with_capacity(samples);
            let mut ok = true;
            for _ in 0..samples {
                let mut keep: VertexSet = (0..g.n()).filter(|_| rng.gen_bool(0.5)).collect();
                if keep.is_empty() {
                    keep.insert(rng.gen_range(0..g.n()));
                }
                let h = g.induced_subgraph(keep).expect("subset of vertices");
                let sub = self.gamma(&h)?.value;
                ok &= sub <= gamma;
                rows.push(json!({ "keep": keep.to_vec(), "gamma": sub }));
            }
            Ok((
                ok,
                json!({ "samples": samples, "seed": seed, "gamma": gamma, "subgraphs": rows }),
            ))
        }))
    }

    /// `None` unless `g` is a forest.
    pub fn forest_full(&self, g: &Graph) -> Option<TheoremReport> {
        if g.edge_count() + g.components().len() != g.n() {
            return None;
        }
        let start = Instant::now();
        let expected = "gamma = n on forests".to_string();
        Some(run(TheoremId::ForestFull, g, expected, start, || {
            let r = self.gamma(g)?;
            Ok((
                r.value == g.n(),
                json!({ "n": g.n(), "gamma": r.value, "witness": r.witness }),
            ))
        }))
    }
}

/// Re-runs the check a report came from, using only the report's contents.
pub fn replay(report: &TheoremReport, checker: &Checker) -> Result<Option<TheoremReport>, String> {
    let g = report.graph().map_err(|e| e.to_string())?;
    let param = |key: &str| {
        report.observed[key]
            .as_u64()
            .ok_or_else(|| format!("report lacks numeric {key:?}"))
    };
    Ok(match report.theorem_id {
        TheoremId::DeltaBound => Some(checker.delta_bound(&g)),
        TheoremId::FullImpliesLeaf => Some(checker.full_implies_leaf(&g)),
        TheoremId::TripleTwin => Some(checker.triple_twin(&g)),
        TheoremId::CompleteCharacterization => checker.complete_characterization(&g),
        TheoremId::EdgeRemoval => Some(checker.edge_removal(&g)),
        TheoremId::VertexRemoval => Some(checker.vertex_removal(&g)),
        TheoremId::KEdgeRemoval => checker.k_edge_removal(
            &g,
            param("k")? as usize,
            param("trials")? as usize,
            param("seed")?,
        ),
        TheoremId::KEdgeAddition => checker.k_edge_addition(
            &g,
            param("k")? as usize,
            param("trials")? as usize,
            param("seed")?,
        ),
        TheoremId::InducedMonotone => {
            checker.induced_monotone(&g, param("samples")? as usize, param("seed")?)
        }
        TheoremId::ForestFull => checker.forest_full(&g),
        TheoremId::WorkedExample => {
            let example = WorkedExample {
                name: report.observed["name"]
                    .as_str()
                    .unwrap_or_default()
                    .to_string(),
                graph: g,
                claimed: param("claimed")? as usize,
            };
            Some(check_worked_example(checker, &example))
        }
    })
}
