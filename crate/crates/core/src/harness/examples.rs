//! Small graphs with published L-Grundy numbers.

use std::time::Instant;

use serde_json::json;

use super::{run, Checker, TheoremId, TheoremReport};
use crate::constructions::{clique_with_leaves, cycle_with_leaf, double_cycle_bridge};
use crate::generators::{complete, cycle, path};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkedExample {
    pub name: String,
    pub graph: Graph,
    /// The value the example is stated to have.
    pub claimed: usize,
}

fn example(name: impl Into<String>, graph: Graph, claimed: usize) -> WorkedExample {
    WorkedExample {
        name: name.into(),
        graph,
        claimed,
    }
}

/// `K_4 □ K_2`; vertex `(a, b)` is `2a + b`, so the rungs are `{2a, 2a + 1}`.
pub fn prism_k4() -> Graph {
    complete(4)
        .unwrap()
        .cartesian_product(&complete(2).unwrap())
        .unwrap()
}

/// The fixed list of worked examples, in a stable order.
pub fn worked_examples() -> Vec<WorkedExample> {
    let prism = prism_k4();
    let mut out = vec![
        example("K4 x K2", prism.clone(), 4),
        example("K4 x K2 minus a rung", prism.remove_edge(0, 1).unwrap(), 6),
        example(
            "K4 minus an edge",
            complete(4).unwrap().remove_edge(0, 1).unwrap(),
            3,
        ),
        example(
            "triangle with a pendant",
            complete(3).unwrap().add_leaf(2).unwrap(),
            4,
        ),
        example("K5", complete(5).unwrap(), 2),
        example("C5", cycle(5).unwrap(), 4),
        example("C6", cycle(6).unwrap(), 5),
        example("P6", path(6).unwrap(), 6),
    ];
    let cwl = cycle_with_leaf(5).unwrap();
    out.push(example("C5 with a leaf", cwl.graph.clone(), 6));
    out.push(example(
        "C5 with a leaf, leaf removed",
        cwl.graph.remove_vertex(5).unwrap(),
        4,
    ));
    out.push(example(
        "K4 with a pendant per vertex",
        clique_with_leaves(4).unwrap().graph,
        7,
    ));
    for n in 3..=6 {
        let g = double_cycle_bridge(n).unwrap().graph;
        out.push(example(
            format!("two C{n} joined by a bridge"),
            g.clone(),
            2 * n - 1,
        ));
        let cut = g.remove_edge(0, n).unwrap();
        out.push(example(
            format!("two C{n} joined by a bridge, bridge removed"),
            cut,
            2 * n - 2,
        ));
    }
    out
}

pub fn check_worked_example(checker: &Checker, ex: &WorkedExample) -> TheoremReport {
    let start = Instant::now();
    let expected = format!("gamma = {}", ex.claimed);
    run(TheoremId::WorkedExample, &ex.graph, expected, start, || {
        let r = checker.gamma(&ex.graph)?;
        Ok((
            r.value == ex.claimed,
            json!({ "name": ex.name, "claimed": ex.claimed, "gamma": r.value, "witness": r.witness }),
        ))
    })
}
