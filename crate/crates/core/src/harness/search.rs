//! Hill climbing for graphs whose single deletions realize many different
//! changes in the L-Grundy number.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::graph_id;
use crate::engine::Variant;
use crate::generators::random_graph_with;
use crate::graph::Graph;
use crate::solver::{solve, SolveError, SolveOptions, SOLVER_MAX_VERTICES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchTarget {
    /// Changes caused by deleting one edge.
    EdgeDeltas,
    /// Changes caused by deleting one vertex.
    VertexDeltas,
}

impl SearchTarget {
    pub fn name(self) -> &'static str {
        match self {
            SearchTarget::EdgeDeltas => "edge-deltas",
            SearchTarget::VertexDeltas => "vertex-deltas",
        }
    }

    /// Every change a single deletion can cause.
    pub fn allowed(self) -> RangeInclusive<i64> {
        match self {
            SearchTarget::EdgeDeltas => -1..=2,
            SearchTarget::VertexDeltas => -2..=0,
        }
    }
}

impl fmt::Display for SearchTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SearchTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "edge-deltas" | "edge" => Ok(SearchTarget::EdgeDeltas),
            "vertex-deltas" | "vertex" => Ok(SearchTarget::VertexDeltas),
            _ => Err(format!("unknown search target {s:?}")),
        }
    }
}

/// `γ_L` of a graph and of each of its single deletions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaProfile {
    pub gamma: usize,
    /// `(element, γ_L after deleting it)`; an element is an edge `(u, v)` or
    /// a vertex `(u, u)`.
    pub entries: Vec<((usize, usize), usize)>,
    pub realized: BTreeSet<i64>,
}

pub fn delta_profile(
    g: &Graph,
    target: SearchTarget,
    opts: &SolveOptions,
) -> Result<DeltaProfile, SolveError> {
    let gamma = solve(g, Variant::L, opts)?.value;
    let elements: Vec<(usize, usize)> = match target {
        SearchTarget::EdgeDeltas => g.edges().collect(),
        SearchTarget::VertexDeltas => (0..g.n()).map(|u| (u, u)).collect(),
    };
    let mut entries = Vec::with_capacity(elements.len());
    let mut realized = BTreeSet::new();
    for (u, v) in elements {
        let h = match target {
            SearchTarget::EdgeDeltas => g.remove_edge(u, v),
            SearchTarget::VertexDeltas => g.remove_vertex(u),
        }
        .expect("element of g");
        let after = solve(&h, Variant::L, opts)?.value;
        realized.insert(after as i64 - gamma as i64);
        entries.push(((u, v), after));
    }
    Ok(DeltaProfile {
        gamma,
        entries,
        realized,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub seed: u64,
    /// Total edge flips across all restarts.
    pub steps: u64,
    pub restarts: u32,
    /// Order range for random starting graphs.
    pub n_min: usize,
    pub n_max: usize,
    /// Start every restart from this graph instead of a random one.
    #[serde(skip)]
    pub seed_graph: Option<Graph>,
    pub solve: SolveOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 0,
            steps: 5000,
            restarts: 20,
            n_min: 5,
            n_max: 8,
            seed_graph: None,
            solve: SolveOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchState {
    pub target: SearchTarget,
    /// Graph the last restart ended on.
    pub current: Graph,
    pub realized_deltas: BTreeSet<i64>,
    /// Highest-scoring graph seen; ties go to the smaller order.
    pub best: Graph,
    pub best_gamma: usize,
    pub best_realized: BTreeSet<i64>,
    /// Realized set of the caller's seed graph, before any flip.
    pub seed_realized: Option<BTreeSet<i64>>,
    /// Union of the realized sets of every graph evaluated.
    pub observed: BTreeSet<i64>,
    pub rng_seed: u64,
    pub step_count: u64,
    pub evaluations: u64,
    /// Flips dropped because a solve hit its budget.
    pub skipped: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid search options: {0}")]
    InvalidOptions(String),
    #[error("deleting {element:?} from {graph6} changes gamma by {delta}, outside {allowed:?}")]
    OutOfRange {
        graph6: String,
        element: (usize, usize),
        delta: i64,
        allowed: RangeInclusive<i64>,
    },
    #[error("solving {graph6}: {error}")]
    Solve { graph6: String, error: SolveError },
}

struct Scored {
    graph: Graph,
    profile: DeltaProfile,
}

impl Scored {
    fn score(&self) -> usize {
        self.profile.realized.len()
    }
}

fn evaluate(
    g: Graph,
    target: SearchTarget,
    opts: &SolveOptions,
    state: &mut SearchState,
) -> Result<Scored, SearchError> {
    let graph6 = graph_id(&g);
    let profile = delta_profile(&g, target, opts).map_err(|error| SearchError::Solve {
        graph6: graph6.clone(),
        error,
    })?;
    state.evaluations += 1;
    let allowed = target.allowed();
    for &(element, after) in &profile.entries {
        let delta = after as i64 - profile.gamma as i64;
        if !allowed.contains(&delta) {
            return Err(SearchError::OutOfRange {
                graph6,
                element,
                delta,
                allowed,
            });
        }
    }
    state.observed.extend(profile.realized.iter().copied());
    Ok(Scored { graph: g, profile })
}

fn better(a: &Scored, b: &Scored) -> bool {
    a.score() > b.score() || (a.score() == b.score() && a.graph.n() < b.graph.n())
}

/// Flips one vertex pair at a time, keeping the flip when the number of
/// distinct deltas does not drop.
///
/// A delta outside the proved range stops the search with
/// [`SearchError::OutOfRange`]; that would be a bug, not a discovery.
pub fn extremal_search(
    target: SearchTarget,
    opts: &SearchOptions,
) -> Result<SearchState, SearchError> {
    if opts.restarts == 0 {
        return Err(SearchError::InvalidOptions(
            "restarts must be positive".into(),
        ));
    }
    match &opts.seed_graph {
        Some(g) if g.n() < 2 || g.n() > SOLVER_MAX_VERTICES => {
            return Err(SearchError::InvalidOptions(format!(
                "seed graph order {} not in 2..={SOLVER_MAX_VERTICES}",
                g.n()
            )))
        }
        None if opts.n_min < 2 || opts.n_min > opts.n_max || opts.n_max > SOLVER_MAX_VERTICES => {
            return Err(SearchError::InvalidOptions(format!(
                "order range {}..={} not within 2..={SOLVER_MAX_VERTICES}",
                opts.n_min, opts.n_max
            )))
        }
        _ => {}
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let placeholder = Graph::edgeless(0).expect("empty graph");
    let mut state = SearchState {
        target,
        current: placeholder.clone(),
        realized_deltas: BTreeSet::new(),
        best: placeholder,
        best_gamma: 0,
        best_realized: BTreeSet::new(),
        seed_realized: None,
        observed: BTreeSet::new(),
        rng_seed: opts.seed,
        step_count: 0,
        evaluations: 0,
        skipped: 0,
    };
    let mut best: Option<Scored> = None;
    let restarts = u64::from(opts.restarts);

    for r in 0..restarts {
        let start = match &opts.seed_graph {
            Some(g) => g.clone(),
            None => {
                let n = rng.gen_range(opts.n_min..=opts.n_max);
                let p = rng.gen_range(0.2..0.8);
                random_graph_with(n, p, &mut rng).expect("order within cap")
            }
        };
        let mut current = evaluate(start, target, &opts.solve, &mut state)?;
        if r == 0 && opts.seed_graph.is_some() {
            state.seed_realized = Some(current.profile.realized.clone());
        }
        let steps = opts.steps / restarts + u64::from(r < opts.steps % restarts);
        for _ in 0..steps {
            state.step_count += 1;
            let n = current.graph.n();
            let u = rng.gen_range(0..n);
            let v = (u + rng.gen_range(1..n)) % n;
            let flipped = if current.graph.has_edge(u, v) {
                current.graph.remove_edge(u, v)
            } else {
                current.graph.add_edge(u, v)
            }
            .expect("distinct in-range pair");
            let next = match evaluate(flipped, target, &opts.solve, &mut state) {
                Ok(s) => s,
                Err(SearchError::Solve {
                    error: SolveError::BudgetExhausted { .. },
                    ..
                }) => {
                    state.skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            if next.score() >= current.score() {
                current = next;
            }
            if best.as_ref().is_none_or(|b| better(&current, b)) {
                best = Some(Scored {
                    graph: current.graph.clone(),
                    profile: current.profile.clone(),
                });
            }
        }
        if best.as_ref().is_none_or(|b| better(&current, b)) {
            best = Some(Scored {
                graph: current.graph.clone(),
                profile: current.profile.clone(),
            });
        }
        state.realized_deltas = current.profile.realized.clone();
        state.current = current.graph;
    }

    let best = best.expect("at least one restart");
    state.best = best.graph;
    state.best_gamma = best.profile.gamma;
    state.best_realized = best.profile.realized;
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cycle_with_leaf;
    use crate::generators::{complete, cycle};
    use crate::harness::prism_k4;

    #[test]
    fn profiles_of_small_graphs() {
        let p = delta_profile(
            &complete(4).unwrap(),
            SearchTarget::EdgeDeltas,
            &SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(
            (p.gamma, p.realized.into_iter().collect::<Vec<_>>()),
            (2, vec![1])
        );
        let cwl = cycle_with_leaf(5).unwrap().graph;
        let p = delta_profile(&cwl, SearchTarget::VertexDeltas, &SolveOptions::default()).unwrap();
        assert_eq!(p.gamma, 6);
        assert!(p.realized.contains(&-2));
        let p = delta_profile(
            &cycle(5).unwrap(),
            SearchTarget::VertexDeltas,
            &SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(p.realized.into_iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn prism_rung_profile() {
        let p = delta_profile(
            &prism_k4(),
            SearchTarget::EdgeDeltas,
            &SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(p.gamma, 5);
        let rung = p.entries.iter().find(|(e, _)| *e == (0, 1)).unwrap();
        assert_eq!(rung.1, 6);
    }

    #[test]
    fn search_is_deterministic_and_in_range() {
        let opts = SearchOptions {
            seed: 1,
            steps: 200,
            restarts: 4,
            ..Default::default()
        };
        for target in [SearchTarget::EdgeDeltas, SearchTarget::VertexDeltas] {
            let a = extremal_search(target, &opts).unwrap();
            assert_eq!(a, extremal_search(target, &opts).unwrap());
            assert_eq!(a.step_count, 200);
            assert!(a.observed.iter().all(|d| target.allowed().contains(d)));
            assert!(a.best_realized.is_subset(&a.observed));
            let again = delta_profile(&a.best, target, &SolveOptions::default()).unwrap();
            assert_eq!(again.realized, a.best_realized);
        }
    }

    #[test]
    fn seeded_search_reports_seed_profile() {
        let opts = SearchOptions {
            steps: 10,
            restarts: 2,
            seed_graph: Some(cycle_with_leaf(5).unwrap().graph),
            ..Default::default()
        };
        let s = extremal_search(SearchTarget::VertexDeltas, &opts).unwrap();
        assert!(s.seed_realized.unwrap().contains(&-2));
    }

    #[test]
    fn rejects_bad_options() {
        let bad = SearchOptions {
            n_min: 9,
            n_max: 4,
            ..Default::default()
        };
        assert!(matches!(
            extremal_search(SearchTarget::EdgeDeltas, &bad),
            Err(SearchError::InvalidOptions(_))
        ));
        let bad = SearchOptions {
            restarts: 0,
            ..Default::default()
        };
        assert!(extremal_search(SearchTarget::EdgeDeltas, &bad).is_err());
        assert_eq!(
            "vertex".parse::<SearchTarget>().unwrap(),
            SearchTarget::VertexDeltas
        );
    }
}
