//! Immutable simple undirected graphs and the surgeries used by the theorem checks.

use std::fmt;

use thiserror::Error;

use crate::bitset::{Vertex, VertexSet, WORD_BITS};

/// Maximum order of any [`Graph`].
pub const MAX_VERTICES: usize = WORD_BITS;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {n} exceeds the supported maximum of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("edge ({u}, {v}) has an endpoint out of range for a graph on {n} vertices")]
    EdgeOutOfRange { u: Vertex, v: Vertex, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: Vertex },
    #[error("edge ({u}, {v}) is not present")]
    MissingEdge { u: Vertex, v: Vertex },
    #[error("edge ({u}, {v}) is already present")]
    DuplicateEdge { u: Vertex, v: Vertex },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),
    #[error("malformed edge list at line {line}: {reason}")]
    MalformedEdgeList { line: usize, reason: String },
}

/// A simple undirected graph on the vertices `0..n`.
///
/// Row `v` of the adjacency holds the open neighbourhood `N(v)`. Rows are
/// kept symmetric and irreflexive by every constructor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<VertexSet>,
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Result<Self, GraphError> {
        check_order(n)?;
        Ok(Graph {
            rows: vec![VertexSet::EMPTY; n],
        })
    }

    /// Builds a graph from unordered pairs. Repeated pairs are harmless.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::edgeless(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EdgeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            g.rows[u].insert(v);
            g.rows[v].insert(u);
        }
        g.debug_check();
        Ok(g)
    }

    /// Builds a graph from adjacency rows, validating symmetry and irreflexivity.
    pub fn from_rows(rows: Vec<VertexSet>) -> Result<Self, GraphError> {
        let n = rows.len();
        check_order(n)?;
        let universe = VertexSet::full(n);
        for (v, row) in rows.iter().enumerate() {
            if let Some(u) = row.difference(universe).first() {
                return Err(GraphError::EdgeOutOfRange { u: v, v: u, n });
            }
            if row.contains(v) {
                return Err(GraphError::SelfLoop { vertex: v });
            }
            for u in row.iter() {
                if !rows[u].contains(v) {
                    return Err(GraphError::InvalidParameter(format!(
                        "adjacency is not symmetric at ({v}, {u})"
                    )));
                }
            }
        }
        Ok(Graph { rows })
    }

    fn debug_check(&self) {
        if cfg!(debug_assertions) {
            for (v, row) in self.rows.iter().enumerate() {
                assert!(!row.contains(v), "self-loop at {v}");
                assert!(row.is_subset(VertexSet::full(self.n())));
                for u in row.iter() {
                    assert!(
                        self.rows[u].contains(v),
                        "asymmetric adjacency at ({v}, {u})"
                    );
                }
            }
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Open neighbourhood of `v`; panics if `v` is out of range.
    #[inline]
    pub fn adj(&self, v: Vertex) -> VertexSet {
        self.rows[v]
    }

    /// Closed neighbourhood of `v`; panics if `v` is out of range.
    #[inline]
    pub fn closed_adj(&self, v: Vertex) -> VertexSet {
        self.rows[v].with(v)
    }

    pub fn rows(&self) -> &[VertexSet] {
        &self.rows
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub fn open_neighborhood(&self, v: Vertex) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adj(v))
    }

    pub fn closed_neighborhood(&self, v: Vertex) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self.closed_adj(v))
    }

    pub fn degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.rows[v].len())
    }

    /// Minimum degree, `None` for the empty graph.
    pub fn min_degree(&self) -> Option<usize> {
        self.rows.iter().map(|r| r.len()).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.rows.iter().map(|r| r.len()).max()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len()).collect()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.rows[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.rows.iter().all(|r| r.len() + 1 == n)
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0).len() == self.n() || self.n() == 0
    }

    /// Vertex set of the connected component containing `v`.
    pub fn component_of(&self, v: Vertex) -> VertexSet {
        if v >= self.n() {
            return VertexSet::EMPTY;
        }
        let mut seen = VertexSet::singleton(v);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier.iter() {
                next = next.union(self.rows[u]);
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let c = self.component_of(v);
            left = left.difference(c);
            out.push(c);
        }
        out
    }

    /// Returns a copy with the edge `uv` added.
    pub fn add_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        if u >= self.n() || v >= self.n() {
            return Err(GraphError::EdgeOutOfRange { u, v, n: self.n() });
        }
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge { u, v });
        }
        let mut g = self.clone();
        g.rows[u].insert(v);
        g.rows[v].insert(u);
        Ok(g)
    }

    /// Returns a copy with the edge `uv` removed.
    pub fn remove_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        if u >= self.n() || v >= self.n() {
            return Err(GraphError::EdgeOutOfRange { u, v, n: self.n() });
        }
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge { u, v });
        }
        let mut g = self.clone();
        g.rows[u].remove(v);
        g.rows[v].remove(u);
        Ok(g)
    }

    /// Deletes `v`; vertices above `v` shift down by one.
    pub fn remove_vertex(&self, v: Vertex) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|&(u, _)| u != v)
            .map(|(_, row)| drop_bit(*row, v))
            .collect();
        Ok(Graph { rows })
    }

    /// Subgraph induced by `keep`, relabelled in ascending order.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Result<Graph, GraphError> {
        if let Some(v) = keep.difference(self.vertices()).first() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            });
        }
        let order: Vec<Vertex> = keep.to_vec();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in order.iter().enumerate() {
            index[v] = i;
        }
        let rows = order
            .iter()
            .map(|&v| {
                self.rows[v]
                    .intersection(keep)
                    .iter()
                    .map(|u| index[u])
                    .collect()
            })
            .collect();
        Ok(Graph { rows })
    }

    /// Attaches a new pendant vertex `n` to `v`.
    pub fn add_leaf(&self, v: Vertex) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        check_order(self.n() + 1)?;
        let leaf = self.n();
        let mut g = self.clone();
        g.rows.push(VertexSet::singleton(v));
        g.rows[v].insert(leaf);
        Ok(g)
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[Vertex]) -> Result<Graph, GraphError> {
        let n = self.n();
        if perm.len() != n || perm.iter().copied().collect::<VertexSet>() != self.vertices() {
            return Err(GraphError::InvalidParameter(format!(
                "not a permutation of 0..{n}: {perm:?}"
            )));
        }
        let mut rows = vec![VertexSet::EMPTY; n];
        for (v, row) in self.rows.iter().enumerate() {
            rows[perm[v]] = row.iter().map(|u| perm[u]).collect();
        }
        Ok(Graph { rows })
    }

    /// Places `other` after `self`, shifting its labels by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let shift = self.n();
        check_order(shift + other.n())?;
        let mut rows = self.rows.clone();
        rows.extend(
            other
                .rows
                .iter()
                .map(|r| VertexSet::from_bits(r.bits() << shift)),
        );
        Ok(Graph { rows })
    }

    /// Cartesian product; vertex `(a, b)` is labelled `a * h.n() + b`.
    pub fn cartesian_product(&self, h: &Graph) -> Result<Graph, GraphError> {
        if self.n() == 0 || h.n() == 0 {
            return Err(GraphError::InvalidParameter(
                "cartesian product factors must be non-empty".into(),
            ));
        }
        let m = h.n();
        check_order(self.n() * m)?;
        let mut edges = Vec::new();
        for a in 0..self.n() {
            for (b, b2) in h.edges() {
                edges.push((a * m + b, a * m + b2));
            }
        }
        for (a, a2) in self.edges() {
            for b in 0..m {
                edges.push((a * m + b, a2 * m + b));
            }
        }
        Graph::from_edges(self.n() * m, edges)
    }

    /// Three pairwise adjacent vertices that agree outside each other, if any.
    ///
    /// Adjacent vertices never have equal open neighbourhoods, so the
    /// condition is `N(a) \ {b} = N(b) \ {a}` for each pair, which is the same
    /// as equal closed neighbourhoods.
    pub fn twin_triple(&self) -> Option<[Vertex; 3]> {
        let n = self.n();
        for a in 0..n {
            for b in self.rows[a].iter().filter(|&b| b > a) {
                if self.closed_adj(a) != self.closed_adj(b) {
                    continue;
                }
                for c in self.rows[a]
                    .intersection(self.rows[b])
                    .iter()
                    .filter(|&c| c > b)
                {
                    if self.closed_adj(c) == self.closed_adj(a) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.n(),
            self.edges().collect::<Vec<_>>()
        )
    }
}

fn check_order(n: usize) -> Result<(), GraphError> {
    if n > MAX_VERTICES {
        Err(GraphError::TooLarge {
            n,
            cap: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

/// Removes bit `v` and shifts the higher bits down by one.
fn drop_bit(set: VertexSet, v: Vertex) -> VertexSet {
    let bits = set.bits();
    let low = bits & ((1u64 << v) - 1);
    let high = if v + 1 >= 64 { 0 } else { bits >> (v + 1) << v };
    VertexSet::from_bits(low | high)
}
