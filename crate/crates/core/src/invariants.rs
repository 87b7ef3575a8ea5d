//! The subspace `(Λ²n)^n` of bivectors killed by every `ad_x`.

use serde_json::{json, Value};

use crate::algebra::TwoStepAlgebra;
use crate::exterior::{binom, component_of, to_terms, ExtVector, ExteriorIndex, Lambda2Component};
use crate::linalg::{Mat, SolutionSpace};
use crate::rational::Rational;

/// Nullspace of the `ad_{e_i}` matrices stacked over the W basis. Central generators act by
/// zero and are not stacked.
pub fn invariant_subspace(a: &TwoStepAlgebra) -> SolutionSpace {
    let blocks: Vec<Mat> = (0..a.dim_w())
        .map(|x| a.ad_matrix_on_lambda2(x).expect("W index in range"))
        .collect();
    if blocks.is_empty() {
        return Mat::zeros(0, binom(a.dim(), 2)).nullspace();
    }
    Mat::vstack(&blocks)
        .expect("blocks share a width")
        .nullspace()
}

/// Invariant subspace as exterior vectors.
pub fn invariant_basis(a: &TwoStepAlgebra) -> Vec<ExtVector> {
    invariant_subspace(a)
        .basis
        .into_iter()
        .map(|v| ExtVector::from_coeffs(a.dim(), 2, v).expect("Λ² length"))
        .collect()
}

fn supported_in_lambda2z(a: &TwoStepAlgebra, v: &[Rational]) -> bool {
    let idx = ExteriorIndex::new(a.dim(), 2);
    v.iter().enumerate().all(|(pos, c)| {
        if c.is_zero() {
            return true;
        }
        let m = idx.monomial(pos);
        let [p, q] = *m.as_slice() else {
            unreachable!()
        };
        component_of(a.dim_w(), p, q) == Lambda2Component::Lambda2Z
    })
}

/// True iff `(Λ²n)^n = Λ²z`, comparing the computed space against the `Λ²z` coordinates.
pub fn invariants_equal_lambda2z(a: &TwoStepAlgebra) -> bool {
    InvariantReport::compute(a).equal
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub dim_invariants: usize,
    pub dim_lambda2z: usize,
    pub equal: bool,
    pub basis: Vec<ExtVector>,
}

impl InvariantReport {
    pub fn compute(a: &TwoStepAlgebra) -> Self {
        let space = invariant_subspace(a);
        let dim_lambda2z = binom(a.dim_z(), 2);
        let equal =
            space.dim() == dim_lambda2z && space.basis.iter().all(|v| supported_in_lambda2z(a, v));
        InvariantReport {
            dim_invariants: space.dim(),
            dim_lambda2z,
            equal,
            basis: space
                .basis
                .into_iter()
                .map(|v| ExtVector::from_coeffs(a.dim(), 2, v).expect("Λ² length"))
                .collect(),
        }
    }

    pub fn to_json(&self, a: &TwoStepAlgebra) -> Value {
        json!({
            "dim_invariants": self.dim_invariants,
            "dim_lambda2z": self.dim_lambda2z,
            "equal": self.equal,
            "basis": self.basis.iter().map(|v| to_terms(a, v)).collect::<Vec<_>>(),
        })
    }
}
