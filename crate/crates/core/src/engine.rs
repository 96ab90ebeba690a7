//! Footprint semantics shared by the classic, total and L Grundy sequences.
//!
//! A step appends a vertex `v` whose *coverage* neighbourhood still contains a
//! vertex outside the *blocked* set, the union of the *accumulation*
//! neighbourhoods of everything chosen so far. The three variants differ only
//! in which neighbourhood (open or closed) plays each role.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::{Vertex, VertexSet};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Neighborhood {
    Open,
    Closed,
}

impl Neighborhood {
    #[inline]
    pub fn of(self, g: &Graph, v: Vertex) -> VertexSet {
        match self {
            Neighborhood::Open => g.adj(v),
            Neighborhood::Closed => g.closed_adj(v),
        }
    }
}

/// Which Grundy flavour a sequence is measured against.
///
/// Only [`Variant::CLASSIC`], [`Variant::TOTAL`] and [`Variant::L`] can be
/// constructed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Variant {
    coverage: Neighborhood,
    accumulation: Neighborhood,
}

impl Variant {
    /// `N[v_i] \ ∪ N[v_j]` non-empty.
    pub const CLASSIC: Variant = Variant {
        coverage: Neighborhood::Closed,
        accumulation: Neighborhood::Closed,
    };
    /// `N(v_i) \ ∪ N(v_j)` non-empty.
    pub const TOTAL: Variant = Variant {
        coverage: Neighborhood::Open,
        accumulation: Neighborhood::Open,
    };
    /// `N[v_i] \ ∪ N(v_j)` non-empty.
    pub const L: Variant = Variant {
        coverage: Neighborhood::Closed,
        accumulation: Neighborhood::Open,
    };

    pub const ALL: [Variant; 3] = [Variant::CLASSIC, Variant::TOTAL, Variant::L];

    pub fn coverage(self) -> Neighborhood {
        self.coverage
    }

    pub fn accumulation(self) -> Neighborhood {
        self.accumulation
    }

    pub fn name(self) -> &'static str {
        match (self.coverage, self.accumulation) {
            (Neighborhood::Closed, Neighborhood::Closed) => "classic",
            (Neighborhood::Open, Neighborhood::Open) => "total",
            (Neighborhood::Closed, Neighborhood::Open) => "l",
            (Neighborhood::Open, Neighborhood::Closed) => {
                unreachable!("variant is not constructible")
            }
        }
    }

    #[inline]
    pub fn covered_by(self, g: &Graph, v: Vertex) -> VertexSet {
        self.coverage.of(g, v)
    }

    #[inline]
    pub fn blocked_by(self, g: &Graph, v: Vertex) -> VertexSet {
        self.accumulation.of(g, v)
    }
}

impl fmt::Debug for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "classic" => Ok(Variant::CLASSIC),
            "total" | "t" => Ok(Variant::TOTAL),
            "l" => Ok(Variant::L),
            other => Err(format!(
                "unknown variant {other:?} (expected classic, total or l)"
            )),
        }
    }
}

impl TryFrom<String> for Variant {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<Variant> for String {
    fn from(v: Variant) -> String {
        v.name().to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("vertex {vertex} is already in the sequence")]
    Duplicate { vertex: Vertex },
    #[error("vertex {vertex} footprints nothing: its coverage neighbourhood {coverage:?} is entirely blocked")]
    NoFreshVertex { vertex: Vertex, coverage: VertexSet },
}

/// First offending position of a rejected sequence.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid at index {index}: {reason}")]
pub struct SequenceError {
    pub index: usize,
    pub reason: StepError,
}

/// A partial sequence together with its blocked set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SequenceState {
    chosen: Vec<Vertex>,
    chosen_set: VertexSet,
    blocked: VertexSet,
}

impl SequenceState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn chosen(&self) -> &[Vertex] {
        &self.chosen
    }

    pub fn chosen_set(&self) -> VertexSet {
        self.chosen_set
    }

    pub fn blocked(&self) -> VertexSet {
        self.blocked
    }

    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }

    /// Position of `v` in the sequence.
    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.chosen.iter().position(|&u| u == v)
    }

    /// What `v` would footprint if appended now.
    #[inline]
    pub fn fresh(&self, g: &Graph, variant: Variant, v: Vertex) -> VertexSet {
        variant.covered_by(g, v).difference(self.blocked)
    }

    /// Appends `v`, returning the set it footprints.
    pub fn push(&mut self, g: &Graph, variant: Variant, v: Vertex) -> Result<VertexSet, StepError> {
        if v >= g.n() {
            return Err(StepError::OutOfRange {
                vertex: v,
                n: g.n(),
            });
        }
        if self.chosen_set.contains(v) {
            return Err(StepError::Duplicate { vertex: v });
        }
        let fresh = self.fresh(g, variant, v);
        if fresh.is_empty() {
            return Err(StepError::NoFreshVertex {
                vertex: v,
                coverage: variant.covered_by(g, v),
            });
        }
        self.chosen.push(v);
        self.chosen_set.insert(v);
        self.blocked = self.blocked.union(variant.blocked_by(g, v));
        Ok(fresh)
    }
}

/// `v` can be appended to `state`.
pub fn step_valid(g: &Graph, variant: Variant, state: &SequenceState, v: Vertex) -> bool {
    v < g.n() && !state.chosen_set.contains(v) && !state.fresh(g, variant, v).is_empty()
}

/// Returns `state` extended by `v`.
pub fn append_step(
    state: &SequenceState,
    g: &Graph,
    variant: Variant,
    v: Vertex,
) -> Result<SequenceState, StepError> {
    let mut next = state.clone();
    next.push(g, variant, v)?;
    Ok(next)
}

/// Every vertex that could be appended to `state`.
pub fn candidates(g: &Graph, variant: Variant, state: &SequenceState) -> VertexSet {
    g.vertices()
        .difference(state.chosen_set)
        .iter()
        .filter(|&v| !state.fresh(g, variant, v).is_empty())
        .collect()
}

/// One step of a footprint log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Footprint {
    pub vertex: Vertex,
    pub newly: VertexSet,
}

/// Per-step footprints of a valid sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FootprintLog {
    pub steps: Vec<Footprint>,
    /// For each vertex, the first step that footprinted it.
    pub footprinter: Vec<Option<usize>>,
}

impl FootprintLog {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn sequence(&self) -> Vec<Vertex> {
        self.steps.iter().map(|s| s.vertex).collect()
    }

    /// How many steps footprinted `u`.
    pub fn attributions(&self, u: Vertex) -> usize {
        self.steps.iter().filter(|s| s.newly.contains(u)).count()
    }
}

/// Checks `seq` step by step and returns its footprint log, or the first
/// offending index.
pub fn validate_sequence(
    g: &Graph,
    variant: Variant,
    seq: &[Vertex],
) -> Result<FootprintLog, SequenceError> {
    let mut state = SequenceState::new();
    let mut steps = Vec::with_capacity(seq.len());
    let mut footprinter = vec![None; g.n()];
    for (index, &v) in seq.iter().enumerate() {
        let newly = state
            .push(g, variant, v)
            .map_err(|reason| SequenceError { index, reason })?;
        for u in newly.iter() {
            footprinter[u].get_or_insert(index);
        }
        steps.push(Footprint { vertex: v, newly });
    }
    Ok(FootprintLog { steps, footprinter })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::generators::{complete, cycle, edgeless, path, random_graph};

    fn state(g: &Graph, variant: Variant, seq: &[Vertex]) -> SequenceState {
        let mut s = SequenceState::new();
        for &v in seq {
            s.push(g, variant, v).unwrap();
        }
        s
    }

    #[test]
    fn step_valid_examples() {
        let k3 = complete(3).unwrap();
        assert!(step_valid(
            &k3,
            Variant::L,
            &state(&k3, Variant::L, &[0]),
            1
        ));
        assert_eq!(
            state(&k3, Variant::L, &[0])
                .fresh(&k3, Variant::L, 1)
                .to_vec(),
            vec![0]
        );
        assert!(!step_valid(
            &k3,
            Variant::L,
            &state(&k3, Variant::L, &[0, 1]),
            2
        ));
        let c5 = cycle(5).unwrap();
        for v in 0..5 {
            assert!(step_valid(&c5, Variant::CLASSIC, &SequenceState::new(), v));
        }
        assert!(!step_valid(&c5, Variant::L, &SequenceState::new(), 5));
        assert!(!step_valid(
            &c5,
            Variant::L,
            &state(&c5, Variant::L, &[0]),
            0
        ));
    }

    #[test]
    fn append_examples() {
        let c4 = cycle(4).unwrap();
        let s = state(&c4, Variant::L, &[0, 2]);
        assert_eq!(s.blocked().to_vec(), vec![1, 3]);

        let p2 = path(2).unwrap();
        let s = append_step(&SequenceState::new(), &p2, Variant::TOTAL, 0).unwrap();
        assert_eq!(s.blocked().to_vec(), vec![1]);

        let e3 = edgeless(3).unwrap();
        let s = state(&e3, Variant::L, &[0, 1, 2]);
        assert!(s.blocked().is_empty());

        let k3 = complete(3).unwrap();
        let s = state(&k3, Variant::L, &[0, 1]);
        assert_eq!(
            append_step(&s, &k3, Variant::L, 2),
            Err(StepError::NoFreshVertex {
                vertex: 2,
                coverage: VertexSet::full(3)
            })
        );
        assert_eq!(
            append_step(&s, &k3, Variant::L, 1),
            Err(StepError::Duplicate { vertex: 1 })
        );
    }

    #[test]
    fn validate_examples() {
        let fig = cycle(3).unwrap().add_leaf(2).unwrap();
        let log = validate_sequence(&fig, Variant::L, &[0, 1, 3, 2]).unwrap();
        assert_eq!(log.len(), 4);
        assert_eq!(log.steps[3].newly.to_vec(), vec![3]);

        let c5 = cycle(5).unwrap();
        assert_eq!(
            validate_sequence(&c5, Variant::L, &[0, 2, 4, 3])
                .unwrap()
                .len(),
            4
        );

        let k3 = complete(3).unwrap();
        let err = validate_sequence(&k3, Variant::L, &[0, 1, 2]).unwrap_err();
        assert_eq!(err.index, 2);
        assert!(matches!(
            err.reason,
            StepError::NoFreshVertex { vertex: 2, .. }
        ));

        let err = validate_sequence(&k3, Variant::L, &[0, 0]).unwrap_err();
        assert_eq!(
            err,
            SequenceError {
                index: 1,
                reason: StepError::Duplicate { vertex: 0 }
            }
        );

        let err = validate_sequence(&k3, Variant::L, &[7]).unwrap_err();
        assert_eq!(err.reason, StepError::OutOfRange { vertex: 7, n: 3 });
    }

    /// Every ordering of K_3 under L stalls after two steps.
    #[test]
    fn k3_l_permutations() {
        let k3 = complete(3).unwrap();
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        for p in perms {
            assert_eq!(validate_sequence(&k3, Variant::L, &p).unwrap_err().index, 2);
            assert!(validate_sequence(&k3, Variant::L, &p[..2]).is_ok());
        }
    }

    #[test]
    fn candidates_examples() {
        let k4 = complete(4).unwrap();
        assert_eq!(
            candidates(&k4, Variant::L, &SequenceState::new()),
            VertexSet::full(4)
        );
        assert!(candidates(&k4, Variant::L, &state(&k4, Variant::L, &[0, 1])).is_empty());
        let p3 = path(3).unwrap();
        assert_eq!(
            candidates(&p3, Variant::L, &state(&p3, Variant::L, &[1])).to_vec(),
            vec![0, 2]
        );
    }

    #[test]
    fn footprinter_keeps_first() {
        // P_2 under L: 0 footprints {0,1}; 1 then footprints 0 again.
        let p2 = path(2).unwrap();
        let log = validate_sequence(&p2, Variant::L, &[0, 1]).unwrap();
        assert_eq!(log.steps[1].newly.to_vec(), vec![0]);
        assert_eq!(log.footprinter, vec![Some(0), Some(0)]);
        assert_eq!(log.attributions(0), 2);
    }

    #[test]
    fn variant_names() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert!("z".parse::<Variant>().is_err());
        assert_eq!(serde_json::to_string(&Variant::L).unwrap(), "\"l\"");
    }

    fn arb_graph() -> impl Strategy<Value = (Graph, u64)> {
        (1usize..=10, 0.0f64..=1.0, any::<u64>())
            .prop_map(|(n, p, seed)| (random_graph(n, p, seed).unwrap(), seed))
    }

    fn random_valid_sequence(g: &Graph, variant: Variant, rng: &mut ChaCha8Rng) -> Vec<Vertex> {
        let mut s = SequenceState::new();
        loop {
            let c = candidates(g, variant, &s).to_vec();
            match c.choose(rng) {
                Some(&v) => {
                    s.push(g, variant, v).unwrap();
                }
                None => return s.chosen().to_vec(),
            }
        }
    }

    proptest! {
        #[test]
        fn blocked_is_order_independent((g, seed) in arb_graph()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for variant in Variant::ALL {
                let seq = random_valid_sequence(&g, variant, &mut rng);
                let expect = seq.iter().fold(VertexSet::EMPTY, |b, &v| b.union(variant.blocked_by(&g, v)));
                let mut shuffled = seq.clone();
                shuffled.shuffle(&mut rng);
                let b2 = shuffled.iter().fold(VertexSet::EMPTY, |b, &v| b.union(variant.blocked_by(&g, v)));
                prop_assert_eq!(state(&g, variant, &seq).blocked(), expect);
                prop_assert_eq!(b2, expect);
            }
        }

        #[test]
        fn dead_candidates_stay_dead((g, seed) in arb_graph()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for variant in Variant::ALL {
                let seq = random_valid_sequence(&g, variant, &mut rng);
                let cut = rng.gen_range(0..=seq.len());
                let prefix = state(&g, variant, &seq[..cut]);
                let dead = g.vertices().difference(candidates(&g, variant, &prefix));
                for k in cut..=seq.len() {
                    let ext = state(&g, variant, &seq[..k]);
                    prop_assert!(candidates(&g, variant, &ext).is_disjoint(dead));
                }
            }
        }

        #[test]
        fn validate_matches_stepwise((g, seed) in arb_graph()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for variant in Variant::ALL {
                let len = rng.gen_range(0..=g.n());
                let seq: Vec<Vertex> = (0..len).map(|_| rng.gen_range(0..g.n())).collect();
                let mut s = SequenceState::new();
                let stepwise = seq.iter().enumerate().try_for_each(|(i, &v)| {
                    if step_valid(&g, variant, &s, v) {
                        s.push(&g, variant, v).unwrap();
                        Ok(())
                    } else {
                        Err(i)
                    }
                });
                let validated = validate_sequence(&g, variant, &seq).map(|_| ()).map_err(|e| e.index);
                prop_assert_eq!(stepwise, validated);
            }
        }

        #[test]
        fn footprint_attribution_limits((g, seed) in arb_graph()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for variant in Variant::ALL {
                let seq = random_valid_sequence(&g, variant, &mut rng);
                let log = validate_sequence(&g, variant, &seq).unwrap();
                let limit = if variant == Variant::L { 2 } else { 1 };
                for u in 0..g.n() {
                    prop_assert!(log.attributions(u) <= limit);
                }
                prop_assert!(log.steps.iter().all(|s| !s.newly.is_empty()));
            }
        }

        #[test]
        fn edgeless_permutations_all_valid(n in 1usize..=8, seed in any::<u64>()) {
            let g = edgeless(n).unwrap();
            let mut perm: Vec<Vertex> = (0..n).collect();
            perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(validate_sequence(&g, Variant::L, &perm).unwrap().len(), n);
        }
    }
}
