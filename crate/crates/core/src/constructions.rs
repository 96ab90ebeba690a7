//! Graph families with explicit long L-sequences.
//!
//! Each builder returns the graph together with a witness sequence assembled
//! from an explicit ordering rule, and refuses to return anything the engine
//! does not accept at the promised length. Where a family is described with
//! 1-based names `v_1, ..., v_n`, vertex `v_i` is emitted as `i - 1` and any
//! pendant vertices follow the original ones.

use serde::Serialize;
use thiserror::Error;

use crate::bitset::{Vertex, VertexSet};
use crate::engine::{validate_sequence, SequenceError, SequenceState, Variant};
use crate::generators::{complete, cycle};
use crate::graph::{Graph, GraphError};
use crate::solver::{solve, SolveError, SolveOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// `γ_L(C_n) = n - 1`.
    CycleLemma,
    /// A cycle with one pendant vertex has `γ_L = n`.
    CycleWithLeaf,
    /// `K_k` with pendants on all but one vertex has `γ_L = n`.
    CliqueWithLeaves,
    /// Pendants on every vertex missed by a maximum sequence give `2n - k`.
    Saturation,
    /// Pendants on every vertex of degree at least three give `γ_L = n`.
    LeafAugmentation,
    /// Two cycles joined by a bridge have `γ_L = 2n - 1`.
    DoubleCycleBridge,
    /// Half graph with a perfect matching has total Grundy number `2k`.
    TStructure,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::CycleLemma => "cycle-lemma",
            Provenance::CycleWithLeaf => "cycle-with-leaf",
            Provenance::CliqueWithLeaves => "clique-with-leaves",
            Provenance::Saturation => "saturation",
            Provenance::LeafAugmentation => "leaf-augmentation",
            Provenance::DoubleCycleBridge => "double-cycle-bridge",
            Provenance::TStructure => "t-structure",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionOutput {
    pub graph: Graph,
    pub witness: Vec<Vertex>,
    pub expected_gamma: usize,
    pub provenance: Provenance,
    pub variant: Variant,
    /// Set for degenerate but permitted parameters.
    pub warning: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("supplied sequence is not valid: {0}")]
    InvalidSequence(SequenceError),
    #[error("supplied sequence has length {given} but the maximum is {gamma}")]
    NotMaximum { given: usize, gamma: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("internal error: {provenance:?} witness {witness:?} rejected: {reason}")]
    WitnessRejected {
        provenance: Provenance,
        witness: Vec<Vertex>,
        reason: String,
    },
}

fn finish(
    graph: Graph,
    witness: Vec<Vertex>,
    expected_gamma: usize,
    provenance: Provenance,
    variant: Variant,
) -> Result<ConstructionOutput, ConstructionError> {
    let log = validate_sequence(&graph, variant, &witness).map_err(|e| {
        ConstructionError::WitnessRejected {
            provenance,
            witness: witness.clone(),
            reason: e.to_string(),
        }
    })?;
    if log.len() != expected_gamma {
        return Err(ConstructionError::WitnessRejected {
            provenance,
            reason: format!(
                "length {} differs from expected {expected_gamma}",
                log.len()
            ),
            witness,
        });
    }
    Ok(ConstructionOutput {
        graph,
        witness,
        expected_gamma,
        provenance,
        variant,
        warning: None,
    })
}

/// Odd-indexed cycle vertices ascending, then even-indexed descending
/// without `v_2`, on the 0-based labels `offset + i - 1`.
fn cycle_order(n: usize, offset: usize) -> Vec<Vertex> {
    let odd = (1..=n).step_by(2);
    let even = (4..=n).rev().filter(|i| i % 2 == 0);
    odd.chain(even).map(|i| offset + i - 1).collect()
}

/// Path vertices in order, with the final two swapped. Valid for any path
/// whose vertices have no chosen neighbours outside it.
fn path_order(xs: &[Vertex]) -> Vec<Vertex> {
    let mut out = xs.to_vec();
    let len = out.len();
    if len >= 2 {
        out.swap(len - 2, len - 1);
    }
    out
}

/// `C_n` with witness of length `n - 1`.
pub fn cycle_witness(n: usize) -> Result<ConstructionOutput, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    finish(
        cycle(n)?,
        cycle_order(n, 0),
        n - 1,
        Provenance::CycleLemma,
        Variant::L,
    )
}

/// `C_n` plus a leaf `u = n` on `v_2 = 1`; witness `u`, the cycle order, `v_2`.
pub fn cycle_with_leaf(n: usize) -> Result<ConstructionOutput, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    let g = cycle(n)?.add_leaf(1)?;
    let mut w = vec![n];
    w.extend(cycle_order(n, 0));
    w.push(1);
    finish(g, w, n + 1, Provenance::CycleWithLeaf, Variant::L)
}

/// `K_k` on `u_i = i - 1` with pendant `v_i = k + i - 1` on each `u_i`, `i < k`.
///
/// Witness: `u_k`, every pendant, then `u_1, ..., u_{k-1}`.
pub fn clique_with_leaves(k: usize) -> Result<ConstructionOutput, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::InvalidParameter(format!(
            "clique needs k >= 2, got {k}"
        )));
    }
    let mut g = complete(k)?;
    for i in 0..k - 1 {
        g = g.add_leaf(i)?;
    }
    let mut w = vec![k - 1];
    w.extend(k..2 * k - 1);
    w.extend(0..k - 1);
    let mut out = finish(g, w, 2 * k - 1, Provenance::CliqueWithLeaves, Variant::L)?;
    if k == 2 {
        out.warning = Some("k = 2 yields the path P_3".into());
    }
    Ok(out)
}

/// Adds a pendant to every vertex missed by `seq`, a maximum L-sequence of
/// `g` of length `k < n`, giving an L-sequence of length `2n - k`.
pub fn saturate(g: &Graph, seq: &[Vertex]) -> Result<ConstructionOutput, ConstructionError> {
    validate_sequence(g, Variant::L, seq).map_err(ConstructionError::InvalidSequence)?;
    let gamma = solve(g, Variant::L, &SolveOptions::default())?.value;
    if seq.len() != gamma {
        return Err(ConstructionError::NotMaximum {
            given: seq.len(),
            gamma,
        });
    }
    let n = g.n();
    let k = seq.len();
    if k >= n {
        return Err(ConstructionError::InvalidParameter(format!(
            "sequence already covers all {n} vertices"
        )));
    }
    let missed = g.vertices().difference(seq.iter().copied().collect());
    let mut h = g.clone();
    for u in missed.iter() {
        h = h.add_leaf(u)?;
    }
    let mut w = seq.to_vec();
    w.extend(n..n + missed.len());
    w.extend(missed.iter());
    finish(h, w, 2 * n - k, Provenance::Saturation, Variant::L)
}

/// Adds a pendant to each vertex of degree at least three and orders the
/// result with [`proof_order_witness`].
pub fn leaf_augment(g: &Graph) -> Result<ConstructionOutput, ConstructionError> {
    if !g.is_connected() {
        return Err(ConstructionError::Hypothesis(
            "graph must be connected".into(),
        ));
    }
    let high: Vec<Vertex> = (0..g.n()).filter(|&v| g.adj(v).len() >= 3).collect();
    let mut h = g.clone();
    for &v in &high {
        h = h.add_leaf(v)?;
    }
    let w = proof_order_witness(&h)?;
    let n = h.n();
    let mut out = finish(h, w, n, Provenance::LeafAugmentation, Variant::L)?;
    if high.is_empty() {
        out.warning = Some("no vertex of degree >= 3; graph returned unchanged".into());
    }
    Ok(out)
}

/// Full-length L-sequence for a graph in which every vertex of degree at
/// least three has a pendant neighbour.
///
/// Degree-2 chains come first, then vertices of degree at most one, then
/// vertices of degree three or more. A chain between high-degree vertices is
/// added in path order, its last two vertices swapped when the far high-degree
/// neighbour is already footprinted. Chains that end in a leaf, and path
/// components, are added in path order starting from the leaf with the final
/// two swapped. Components that are cycles are rejected.
pub fn proof_order_witness(g: &Graph) -> Result<Vec<Vertex>, ConstructionError> {
    let n = g.n();
    let deg: Vec<usize> = g.degrees();
    for v in (0..n).filter(|&v| deg[v] >= 3) {
        if !g.adj(v).iter().any(|u| deg[u] == 1) {
            return Err(ConstructionError::Hypothesis(format!(
                "vertex {v} has degree {} but no pendant neighbour",
                deg[v]
            )));
        }
    }

    let mut builder = OrderBuilder {
        g,
        state: SequenceState::new(),
        footprinted: VertexSet::EMPTY,
    };
    let mut placed = VertexSet::EMPTY;

    for start in (0..n).filter(|&v| deg[v] == 2) {
        if placed.contains(start) {
            continue;
        }
        let chain = degree_two_chain(g, &deg, start).ok_or_else(|| {
            ConstructionError::Hypothesis(format!(
                "vertex {start} lies on a component that is a cycle"
            ))
        })?;
        let Chain {
            mut inner,
            mut head,
            mut tail,
        } = chain;
        placed = placed.union(inner.iter().copied().collect());
        let leafy = |v: Vertex| deg[v] == 1;
        match (leafy(head), leafy(tail)) {
            (false, false) => {
                let m = inner.len();
                if m >= 3 {
                    builder.extend(&inner[..m - 2])?;
                    let (a, b) = (inner[m - 2], inner[m - 1]);
                    if builder.footprinted.contains(tail) {
                        builder.extend(&[b, a])?;
                    } else {
                        builder.extend(&[a, b])?;
                    }
                } else {
                    builder.extend(&inner)?;
                }
            }
            (head_leaf, _) => {
                if !head_leaf {
                    inner.reverse();
                    std::mem::swap(&mut head, &mut tail);
                }
                let mut xs = vec![head];
                xs.extend(&inner);
                if leafy(tail) {
                    xs.push(tail);
                }
                placed = placed.union(xs.iter().copied().collect());
                builder.extend(&path_order(&xs))?;
            }
        }
    }

    for v in (0..n).filter(|&v| deg[v] <= 1) {
        if placed.contains(v) {
            continue;
        }
        placed.insert(v);
        builder.extend(&[v])?;
        if let Some(u) = g.adj(v).first().filter(|&u| deg[u] == 1) {
            placed.insert(u);
            builder.extend(&[u])?;
        }
    }

    for v in (0..n).filter(|&v| deg[v] >= 3) {
        builder.extend(&[v])?;
    }
    Ok(builder.state.chosen().to_vec())
}

struct OrderBuilder<'g> {
    g: &'g Graph,
    state: SequenceState,
    footprinted: VertexSet,
}

impl OrderBuilder<'_> {
    fn extend(&mut self, vs: &[Vertex]) -> Result<(), ConstructionError> {
        for &v in vs {
            let newly = self.state.push(self.g, Variant::L, v).map_err(|e| {
                ConstructionError::WitnessRejected {
                    provenance: Provenance::LeafAugmentation,
                    witness: self.state.chosen().to_vec(),
                    reason: e.to_string(),
                }
            })?;
            self.footprinted = self.footprinted.union(newly);
        }
        Ok(())
    }
}

/// A maximal run of degree-2 vertices and the vertices just beyond each end.
struct Chain {
    inner: Vec<Vertex>,
    head: Vertex,
    tail: Vertex,
}

/// Returns `None` when the run closes up into a cycle.
fn degree_two_chain(g: &Graph, deg: &[usize], start: Vertex) -> Option<Chain> {
    let walk = |from: Vertex, first: Vertex| -> Option<(Vec<Vertex>, Vertex)> {
        let mut prev = from;
        let mut cur = first;
        let mut run = Vec::new();
        while deg[cur] == 2 {
            if cur == start {
                return None;
            }
            run.push(cur);
            let next = g.adj(cur).without(prev).first().expect("degree two");
            prev = cur;
            cur = next;
        }
        Some((run, cur))
    };
    let mut nbrs = g.adj(start).iter();
    let (a, b) = (nbrs.next()?, nbrs.next()?);
    let (left, head) = walk(start, a)?;
    let (right, tail) = walk(start, b)?;
    let mut inner: Vec<Vertex> = left.into_iter().rev().collect();
    inner.push(start);
    inner.extend(right);
    Some(Chain { inner, head, tail })
}

/// Two copies of `C_n` on `0..n` and `n..2n`, joined by the bridge `0 ~ n`.
pub fn double_cycle_bridge(n: usize) -> Result<ConstructionOutput, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    let c = cycle(n)?;
    let g = c.disjoint_union(&c)?.add_edge(0, n)?;
    let w = if n == 3 {
        vec![1, 2, 0, 4, 3]
    } else {
        // The far cycle plus the near bridge end behaves as a cycle with a
        // leaf; the near cycle then contributes a path of n - 2.
        let mut w = vec![0];
        w.extend(path_order(&(n + 1..2 * n).collect::<Vec<_>>()));
        w.push(n);
        w.extend(path_order(&(1..n - 1).collect::<Vec<_>>()));
        w
    };
    finish(g, w, 2 * n - 1, Provenance::DoubleCycleBridge, Variant::L)
}

/// Half graph with matching: `x_i = i - 1`, `y_j = k + j - 1`, `x_i ~ y_j`
/// iff `i >= j`. The `x` side and the `y` side are both independent.
pub fn t_structure_instance(k: usize) -> Result<Graph, ConstructionError> {
    if k < 1 {
        return Err(ConstructionError::InvalidParameter(
            "k must be at least 1".into(),
        ));
    }
    let edges = (0..k).flat_map(|i| (0..=i).map(move |j| (i, k + j)));
    Ok(Graph::from_edges(2 * k, edges.collect::<Vec<_>>())?)
}

/// [`t_structure_instance`] with the total sequence `x_1..x_k, y_k..y_1`.
pub fn t_structure(k: usize) -> Result<ConstructionOutput, ConstructionError> {
    let g = t_structure_instance(k)?;
    let mut w: Vec<Vertex> = (0..k).collect();
    w.extend((k..2 * k).rev());
    finish(g, w, 2 * k, Provenance::TStructure, Variant::TOTAL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{path, random_tree, star};
    use crate::solver::{brute_oracle, gamma};

    fn solver_agrees(out: &ConstructionOutput) {
        assert_eq!(
            gamma(&out.graph, out.variant).unwrap(),
            out.expected_gamma,
            "{out:?}"
        );
    }

    #[test]
    fn cycles() {
        let c6 = cycle_witness(6).unwrap();
        assert_eq!(c6.witness, vec![0, 2, 4, 5, 3]);
        let c5 = cycle_witness(5).unwrap();
        assert_eq!(c5.witness, vec![0, 2, 4, 3]);
        assert_eq!(cycle_witness(3).unwrap().expected_gamma, 2);
        assert!(cycle_witness(2).is_err());
        for n in 3..=12 {
            solver_agrees(&cycle_witness(n).unwrap());
        }
    }

    #[test]
    fn cycle_with_leaves() {
        let fig = cycle_with_leaf(3).unwrap();
        assert_eq!(fig.expected_gamma, 4);
        assert_eq!(fig.graph.edge_count(), 4);
        assert_eq!(cycle_with_leaf(5).unwrap().expected_gamma, 6);
        let out = cycle_with_leaf(6).unwrap();
        let log = validate_sequence(&out.graph, Variant::L, &out.witness).unwrap();
        // the leaf footprints v_2 first; v_2 footprints the leaf last
        assert!(log.steps[0].newly.contains(1));
        assert_eq!(log.steps.last().unwrap().newly.to_vec(), vec![6]);
        for n in 3..=10 {
            solver_agrees(&cycle_with_leaf(n).unwrap());
        }
    }

    #[test]
    fn cliques_with_leaves() {
        assert_eq!(clique_with_leaves(3).unwrap().graph.n(), 5);
        assert_eq!(clique_with_leaves(4).unwrap().expected_gamma, 7);
        let p3 = clique_with_leaves(2).unwrap();
        assert!(p3.warning.is_some());
        assert!(clique_with_leaves(1).is_err());
        let out = clique_with_leaves(5).unwrap();
        let log = validate_sequence(&out.graph, Variant::L, &out.witness).unwrap();
        // u_1 also picks up u_k, which no earlier open neighbourhood contains
        assert_eq!(log.steps[5].newly.to_vec(), vec![4, 5]);
        for i in 1..4 {
            let step = &log.steps[5 + i];
            assert_eq!(step.vertex, i);
            assert_eq!(step.newly.to_vec(), vec![5 + i]);
        }
        for k in 2..=5 {
            solver_agrees(&clique_with_leaves(k).unwrap());
        }
    }

    #[test]
    fn saturation() {
        let k3 = complete(3).unwrap();
        let out = saturate(&k3, &[0, 1]).unwrap();
        assert_eq!((out.graph.n(), out.expected_gamma), (4, 4));
        solver_agrees(&out);
        assert_eq!(out.graph.min_degree(), Some(1));

        let c5 = cycle(5).unwrap();
        let out = saturate(&c5, &[0, 2, 4, 3]).unwrap();
        assert_eq!((out.graph.n(), out.expected_gamma), (6, 6));
        solver_agrees(&out);

        let p3 = path(3).unwrap();
        assert!(matches!(
            saturate(&c5, &[0, 2]),
            Err(ConstructionError::NotMaximum { given: 2, gamma: 4 })
        ));
        assert!(matches!(
            saturate(&k3, &[0, 1, 2]),
            Err(ConstructionError::InvalidSequence(_))
        ));
        assert!(matches!(
            saturate(&p3, &[0, 2, 1]),
            Err(ConstructionError::InvalidParameter(_))
        ));
    }

    #[test]
    fn leaf_augmentation() {
        let k4 = leaf_augment(&complete(4).unwrap()).unwrap();
        assert_eq!(k4.expected_gamma, 8);
        solver_agrees(&k4);

        let s = leaf_augment(&star(3).unwrap()).unwrap();
        assert_eq!(s.expected_gamma, 5);
        solver_agrees(&s);

        let p4 = leaf_augment(&path(4).unwrap()).unwrap();
        assert_eq!(p4.graph, path(4).unwrap());
        assert_eq!(p4.expected_gamma, 4);
        assert!(p4.warning.is_some());

        assert!(matches!(
            leaf_augment(&cycle(5).unwrap()),
            Err(ConstructionError::Hypothesis(_))
        ));
        let two = cycle(3).unwrap().disjoint_union(&path(2).unwrap()).unwrap();
        assert!(matches!(
            leaf_augment(&two),
            Err(ConstructionError::Hypothesis(_))
        ));
    }

    #[test]
    fn proof_order_examples() {
        // two K_{1,3} centres joined through a 3-vertex chain, each centre with its own leaves
        let g = Graph::from_edges(
            11,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 8),
                (7, 9),
                (7, 10),
            ],
        )
        .unwrap();
        let w = proof_order_witness(&g).unwrap();
        assert_eq!(validate_sequence(&g, Variant::L, &w).unwrap().len(), 11);
        assert_eq!(gamma(&g, Variant::L).unwrap(), 11);

        let fig = cycle(3).unwrap().add_leaf(2).unwrap();
        assert_eq!(proof_order_witness(&fig).unwrap().len(), 4);

        for seed in 0..30 {
            let t = random_tree(12, seed).unwrap();
            assert!(
                matches!(proof_order_witness(&t), Ok(w) if w.len() == 12)
                    || t.degrees().iter().any(|&d| d >= 3)
            );
        }
        for n in 1..=8 {
            assert_eq!(proof_order_witness(&path(n).unwrap()).unwrap().len(), n);
        }

        // degree-3 vertex without a pendant neighbour
        let bad = complete(4).unwrap();
        assert!(matches!(
            proof_order_witness(&bad),
            Err(ConstructionError::Hypothesis(_))
        ));
    }

    #[test]
    fn leaf_augmentation_on_random_connected_graphs() {
        let mut checked = 0;
        for seed in 0..200 {
            let g = crate::generators::random_graph(7, 0.35, seed).unwrap();
            if !g.is_connected() {
                continue;
            }
            match leaf_augment(&g) {
                Ok(out) => {
                    checked += 1;
                    if out.graph.n() <= 14 {
                        solver_agrees(&out);
                    }
                }
                Err(ConstructionError::Hypothesis(_)) => {}
                Err(e) => panic!("{e} on {g:?}"),
            }
        }
        assert!(checked > 50);
    }

    #[test]
    fn double_cycles() {
        assert_eq!(double_cycle_bridge(3).unwrap().graph.n(), 6);
        assert_eq!(double_cycle_bridge(3).unwrap().expected_gamma, 5);
        assert_eq!(double_cycle_bridge(4).unwrap().expected_gamma, 7);
        for n in 3..=8 {
            let out = double_cycle_bridge(n).unwrap();
            solver_agrees(&out);
            let split = out.graph.remove_edge(0, n).unwrap();
            assert_eq!(gamma(&split, Variant::L).unwrap(), 2 * n - 2);
        }
    }

    #[test]
    fn t_structures() {
        assert_eq!(t_structure_instance(1).unwrap(), complete(2).unwrap());
        for k in 1..=4 {
            let out = t_structure(k).unwrap();
            assert_eq!(brute_oracle(&out.graph, Variant::TOTAL).unwrap(), 2 * k);
            solver_agrees(&out);
        }
        assert!(t_structure_instance(0).is_err());
    }
}
