//! Exact Grundy-type domination numbers.
//!
//! [`solve`] runs a depth-first search over sequences in ascending vertex
//! order. Because the blocked set and the candidate set depend only on the
//! *set* of chosen vertices, the best extension length is memoised per chosen
//! subset. Two cuts apply: a branch is dropped when even taking every live
//! candidate cannot beat the incumbent (candidates never revive), and the whole
//! search stops once the incumbent meets [`upper_bound`].

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::{Vertex, VertexSet};
use crate::engine::{candidates, validate_sequence, SequenceError, SequenceState, Variant};
use crate::graph::Graph;

/// Largest graph accepted by [`solve`].
pub const SOLVER_MAX_VERTICES: usize = 32;
/// Largest graph accepted by [`brute_oracle`].
pub const ORACLE_MAX_VERTICES: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub memo_enabled: bool,
    /// Subset memoisation is used only for graphs with at most this many vertices.
    pub memo_cap: usize,
    /// Abort after exploring this many search nodes.
    pub node_budget: Option<u64>,
    /// Stop as soon as the incumbent reaches `n - δ + 1` (L and total).
    pub use_delta_bound_pruning: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            memo_enabled: true,
            memo_cap: 24,
            node_budget: None,
            use_delta_bound_pruning: true,
        }
    }
}

impl SolveOptions {
    /// Options that never consult the minimum-degree bound, for checking it.
    pub fn without_delta_bound(self) -> Self {
        SolveOptions {
            use_delta_bound_pruning: false,
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes_explored: u64,
    pub memo_hits: u64,
    pub pruned: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: usize,
    pub witness: Vec<Vertex>,
    pub stats: SearchStats,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph on {n} vertices exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("node budget exhausted after {} nodes; best sequence found has length {lower_bound}", stats.nodes_explored)]
    BudgetExhausted {
        lower_bound: usize,
        witness: Vec<Vertex>,
        stats: SearchStats,
    },
    #[error("internal error: search produced an invalid witness {witness:?}: {error}")]
    WitnessRejected {
        witness: Vec<Vertex>,
        error: SequenceError,
    },
}

/// Trivial and minimum-degree upper bound on the sequence length.
///
/// For L and total sequences with `δ ≥ 1` this is `n - δ + 1`; otherwise `n`.
pub fn upper_bound(g: &Graph, variant: Variant) -> usize {
    let n = g.n();
    match g.min_degree() {
        Some(d) if d >= 1 && variant != Variant::CLASSIC => n - d + 1,
        _ => n,
    }
}

/// Greedy sequence: repeatedly append the candidate with the largest fresh
/// set, lowest index first on ties.
pub fn greedy_bound(g: &Graph, variant: Variant) -> Vec<Vertex> {
    let mut state = SequenceState::new();
    loop {
        let pick = candidates(g, variant, &state)
            .iter()
            .map(|v| (state.fresh(g, variant, v).len(), v))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        match pick {
            Some((_, v)) => {
                state.push(g, variant, v).expect("candidate is valid");
            }
            None => return state.chosen().to_vec(),
        }
    }
}

/// Longest valid sequence of `g` under `variant`, with a witness.
///
/// The empty graph has value 0.
pub fn solve(g: &Graph, variant: Variant, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let n = g.n();
    if n > SOLVER_MAX_VERTICES {
        return Err(SolveError::TooLarge {
            n,
            cap: SOLVER_MAX_VERTICES,
        });
    }
    let greedy = greedy_bound(g, variant);
    let target = if opts.use_delta_bound_pruning {
        upper_bound(g, variant)
    } else {
        n
    };
    let mut search = Search {
        cover: (0..n).map(|v| variant.covered_by(g, v).bits()).collect(),
        accumulate: (0..n).map(|v| variant.blocked_by(g, v).bits()).collect(),
        all: VertexSet::full(n).bits(),
        memo: (opts.memo_enabled && n <= opts.memo_cap).then(HashMap::new),
        best_len: greedy.len(),
        best: greedy,
        path: Vec::with_capacity(n),
        target,
        budget: opts.node_budget,
        stats: SearchStats::default(),
    };
    let outcome = if search.best_len >= target {
        Ok(())
    } else {
        search.dfs(0, 0).map(|_| ())
    };
    let Search {
        best,
        best_len,
        stats,
        ..
    } = search;
    if let Err(Halt::Budget) = outcome {
        return Err(SolveError::BudgetExhausted {
            lower_bound: best_len,
            witness: best,
            stats,
        });
    }
    if let Err(error) = validate_sequence(g, variant, &best) {
        return Err(SolveError::WitnessRejected {
            witness: best,
            error,
        });
    }
    Ok(SolveResult {
        value: best_len,
        witness: best,
        stats,
        elapsed: start.elapsed(),
    })
}

/// Exact value with default options.
pub fn gamma(g: &Graph, variant: Variant) -> Result<usize, SolveError> {
    solve(g, variant, &SolveOptions::default()).map(|r| r.value)
}

enum Halt {
    Target,
    Budget,
}

/// Best extension length from a chosen subset: exact, or an upper bound that
/// could not beat the incumbent when it was recorded.
#[derive(Debug, Clone, Copy)]
struct Bound {
    ext: usize,
    exact: bool,
}

struct Search {
    cover: Vec<u64>,
    accumulate: Vec<u64>,
    all: u64,
    memo: Option<HashMap<u64, Bound>>,
    best_len: usize,
    best: Vec<Vertex>,
    path: Vec<Vertex>,
    target: usize,
    budget: Option<u64>,
    stats: SearchStats,
}

impl Search {
    fn live(&self, chosen: u64, blocked: u64) -> VertexSet {
        VertexSet::from_bits(self.all & !chosen)
            .iter()
            .filter(|&v| self.cover[v] & !blocked != 0)
            .collect()
    }

    fn dfs(&mut self, chosen: u64, blocked: u64) -> Result<Bound, Halt> {
        self.stats.nodes_explored += 1;
        if self.budget.is_some_and(|b| self.stats.nodes_explored > b) {
            return Err(Halt::Budget);
        }
        let depth = self.path.len();
        if depth > self.best_len {
            self.best_len = depth;
            self.best.clone_from(&self.path);
            if depth >= self.target {
                return Err(Halt::Target);
            }
        }
        let live = self.live(chosen, blocked);
        if live.is_empty() {
            return Ok(Bound {
                ext: 0,
                exact: true,
            });
        }
        if let Some(hit) = self.memo.as_ref().and_then(|m| m.get(&chosen)).copied() {
            if hit.exact || depth + hit.ext <= self.best_len {
                self.stats.memo_hits += 1;
                return Ok(hit);
            }
        }
        if depth + live.len() <= self.best_len {
            self.stats.pruned += 1;
            return Ok(self.remember(
                chosen,
                Bound {
                    ext: live.len(),
                    exact: false,
                },
            ));
        }
        let mut exact_best = 0;
        let mut bound_best = 0;
        for v in live.iter() {
            self.path.push(v);
            let child = self.dfs(chosen | 1 << v, blocked | self.accumulate[v]);
            self.path.pop();
            let child = child?;
            if child.exact {
                exact_best = exact_best.max(child.ext + 1);
            } else {
                bound_best = bound_best.max(child.ext + 1);
            }
        }
        let result = if exact_best >= bound_best {
            Bound {
                ext: exact_best,
                exact: true,
            }
        } else {
            Bound {
                ext: bound_best,
                exact: false,
            }
        };
        Ok(self.remember(chosen, result))
    }

    fn remember(&mut self, chosen: u64, b: Bound) -> Bound {
        if let Some(m) = self.memo.as_mut() {
            m.insert(chosen, b);
        }
        b
    }
}

/// Plain recursive maximum over all valid sequences, with no memoisation and
/// no pruning. Shares no code with [`solve`]; used only as a cross-check.
pub fn brute_oracle(g: &Graph, variant: Variant) -> Result<usize, SolveError> {
    let n = g.n();
    if n > ORACLE_MAX_VERTICES {
        return Err(SolveError::TooLarge {
            n,
            cap: ORACLE_MAX_VERTICES,
        });
    }
    let closed = variant.coverage() == crate::engine::Neighborhood::Closed;
    let closed_acc = variant.accumulation() == crate::engine::Neighborhood::Closed;
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| g.has_edge(u, v)).collect())
        .collect();
    let mut used = vec![false; n];
    let mut blocked_count = vec![0u32; n];
    fn rec(
        adj: &[Vec<bool>],
        closed: bool,
        closed_acc: bool,
        used: &mut [bool],
        blocked_count: &mut [u32],
    ) -> usize {
        let n = adj.len();
        let mut best = 0;
        for v in 0..n {
            if used[v] {
                continue;
            }
            let fresh = (0..n).any(|u| (adj[v][u] || (closed && u == v)) && blocked_count[u] == 0);
            if !fresh {
                continue;
            }
            used[v] = true;
            for u in 0..n {
                if adj[v][u] || (closed_acc && u == v) {
                    blocked_count[u] += 1;
                }
            }
            best = best.max(1 + rec(adj, closed, closed_acc, used, blocked_count));
            for u in 0..n {
                if adj[v][u] || (closed_acc && u == v) {
                    blocked_count[u] -= 1;
                }
            }
            used[v] = false;
        }
        best
    }
    Ok(rec(&adj, closed, closed_acc, &mut used, &mut blocked_count))
}
