//! Named graph families, seeded random graphs and exhaustive labelled enumeration.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::Vertex;
use crate::graph::{Graph, GraphError, MAX_VERTICES};

/// Default largest order accepted by [`enumerate_labeled_graphs`].
pub const ENUMERATION_LIMIT: usize = 6;

pub fn edgeless(n: usize) -> Result<Graph, GraphError> {
    Graph::edgeless(n)
}

/// `P_n` with edges `i ~ i+1`.
pub fn path(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// `C_n` with edges `i ~ i+1 (mod n)`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `K_{1,k}` with centre 0.
pub fn star(k: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(k + 1, (1..=k).map(|v| (0, v)))
}

/// Complete multipartite graph; parts are consecutive label ranges.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph, GraphError> {
    let n: usize = parts.iter().sum();
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge {
            n,
            cap: MAX_VERTICES,
        });
    }
    let mut part_of = Vec::with_capacity(n);
    for (i, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, size));
    }
    let edges = (0..n).flat_map(|u| {
        let part_of = &part_of;
        (u + 1..n)
            .filter(move |&v| part_of[u] != part_of[v])
            .map(move |v| (u, v))
    });
    Graph::from_edges(n, edges.collect::<Vec<_>>())
}

/// Erdős–Rényi `G(n, p)`, deterministic in `seed`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidParameter(format!(
            "edge probability {p} not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_graph_with(n, p, &mut rng)
}

pub fn random_graph_with<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Uniform random recursive tree, randomly relabelled.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_forest_with(n, 1.0, &mut rng)
}

/// Random forest: each vertex after the first joins an earlier one with
/// probability `attach`, otherwise it starts a new tree.
pub fn random_forest(n: usize, attach: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&attach) {
        return Err(GraphError::InvalidParameter(format!(
            "attach probability {attach} not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_forest_with(n, attach, &mut rng)
}

fn random_forest_with<R: Rng>(n: usize, attach: f64, rng: &mut R) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.gen_bool(attach) {
            edges.push((rng.gen_range(0..v), v));
        }
    }
    let g = Graph::from_edges(n, edges)?;
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    g.permute(&perm)
}

/// All `2^(n(n-1)/2)` labelled graphs on `n <= 6` vertices.
pub fn enumerate_labeled_graphs(n: usize) -> Result<LabeledGraphs, GraphError> {
    LabeledGraphs::with_limit(n, ENUMERATION_LIMIT)
}

/// Iterator over every labelled simple graph on `n` vertices.
///
/// Graph number `mask` has pair `k` present iff bit `k` of `mask` is set,
/// pairs ordered `(0,1), (0,2), (1,2), (0,3), ...`.
#[derive(Debug, Clone)]
pub struct LabeledGraphs {
    n: usize,
    pairs: Vec<(Vertex, Vertex)>,
    next: u64,
    end: u64,
}

impl LabeledGraphs {
    pub fn with_limit(n: usize, limit: usize) -> Result<Self, GraphError> {
        if n > limit {
            return Err(GraphError::InvalidParameter(format!(
                "exhaustive enumeration capped at n = {limit}, got {n}"
            )));
        }
        let pairs: Vec<_> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        if pairs.len() >= 63 {
            return Err(GraphError::InvalidParameter(format!(
                "cannot enumerate labelled graphs on {n} vertices"
            )));
        }
        Ok(LabeledGraphs {
            n,
            end: 1u64 << pairs.len(),
            pairs,
            next: 0,
        })
    }

    pub fn total(&self) -> u64 {
        self.end
    }

    pub fn graph(&self, mask: u64) -> Graph {
        let edges = self
            .pairs
            .iter()
            .enumerate()
            .filter(|&(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(self.n, edges).expect("pairs are in range")
    }
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.end {
            return None;
        }
        let g = self.graph(self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for LabeledGraphs {}
