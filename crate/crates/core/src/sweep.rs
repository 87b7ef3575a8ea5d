//! Exhaustive cross-check of the graph theorems over small graphs.

use serde::Serialize;

use crate::algebra::TwoStepAlgebra;
use crate::error::{Error, Result};
use crate::graph::{enumerate_graphs, Graph};
use crate::invariants::invariants_equal_lambda2z;
use crate::tst::{crosscheck_with, solve_tst};

pub const MAX_SWEEP_VERTICES: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `(Λ²n)^n = Λ²z` disagrees with "every vertex has degree ≥ 2".
    Valency,
    /// Minimum degree ≥ 2 but the TST system has nonzero solutions.
    TstType,
    /// A predicted zero entry of `S` is nonzero on some solution.
    ZeroPattern,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub graph: Graph,
    pub kind: ViolationKind,
}

/// Outcome for one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphOutcome {
    pub graph: Graph,
    pub min_degree_two: bool,
    pub invariants_equal: bool,
    pub tst_dim: usize,
    pub zero_pattern_violations: usize,
}

impl GraphOutcome {
    pub fn compute(g: &Graph) -> Self {
        let a = TwoStepAlgebra::from_graph(g);
        let sol = solve_tst(&a);
        GraphOutcome {
            graph: g.clone(),
            min_degree_two: g.min_degree_at_least_two(),
            invariants_equal: invariants_equal_lambda2z(&a),
            tst_dim: sol.dim(),
            zero_pattern_violations: crosscheck_with(g, &sol).violations.len(),
        }
    }

    pub fn violations(&self) -> Vec<ViolationKind> {
        let mut v = Vec::new();
        if self.invariants_equal != self.min_degree_two {
            v.push(ViolationKind::Valency);
        }
        if self.min_degree_two && self.tst_dim != 0 {
            v.push(ViolationKind::TstType);
        }
        if self.zero_pattern_violations > 0 {
            v.push(ViolationKind::ZeroPattern);
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub max_vertices: usize,
    pub graphs: usize,
    pub connected: usize,
    pub min_degree_two: usize,
    pub invariants_equal: usize,
    pub tst_type: usize,
    pub violations: Vec<Violation>,
}

/// Every graph without isolated vertices on `2..=max_vertices` vertices, one per
/// isomorphism class.
pub fn sweep(max_vertices: usize) -> Result<SweepSummary> {
    if !(2..=MAX_SWEEP_VERTICES).contains(&max_vertices) {
        return Err(Error::InvalidParameters(format!(
            "max vertices must be in 2..={MAX_SWEEP_VERTICES}, got {max_vertices}"
        )));
    }
    let graphs = enumerate_graphs(max_vertices);
    let outcomes: Vec<GraphOutcome> = graphs.iter().map(GraphOutcome::compute).collect();
    let violations = outcomes
        .iter()
        .flat_map(|o| {
            o.violations().into_iter().map(|kind| Violation {
                graph: o.graph.clone(),
                kind,
            })
        })
        .collect();
    Ok(SweepSummary {
        max_vertices,
        graphs: outcomes.len(),
        connected: graphs.iter().filter(|g| g.is_connected()).count(),
        min_degree_two: outcomes.iter().filter(|o| o.min_degree_two).count(),
        invariants_equal: outcomes.iter().filter(|o| o.invariants_equal).count(),
        tst_type: outcomes.iter().filter(|o| o.tst_dim == 0).count(),
        violations,
    })
}
