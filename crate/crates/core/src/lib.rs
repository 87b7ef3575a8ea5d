//! Exact computations on 2-step nilpotent Lie algebras built from graphs: invariant
//! bivectors, the TST system, Lie bialgebra cobracket verification and the classification
//! of nearly coboundary structures.

pub mod algebra;
pub mod classify;
pub mod cobracket;
pub mod error;
pub mod exterior;
pub mod graph;
pub mod invariants;
pub mod linalg;
pub mod rational;
pub mod sweep;
pub mod tst;

pub use algebra::{Element, TwoStepAlgebra};
pub use error::{Error, Result};
pub use exterior::ExtVector;
pub use graph::{parse_graph, Graph};
pub use linalg::{Mat, SolutionSpace};
pub use rational::Rational;
