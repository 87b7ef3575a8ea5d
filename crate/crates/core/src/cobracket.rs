//! Candidate cobrackets `δ: n → Λ²n` and the Lie bialgebra axioms.
//!
//! A cobracket is stored as one `Λ²n` column per basis generator. Co-Jacobi is checked as
//! `Σ c_pq (δ(b_p) ∧ b_q − b_p ∧ δ(b_q)) = 0` for `δ(x) = Σ c_pq b_p ∧ b_q`, and the cocycle
//! condition as `δ[x, y] = ad_x δ(y) − ad_y δ(x)` on all basis pairs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Element, Origin, TwoStepAlgebra};
use crate::error::{Error, Result};
use crate::exterior::{
    ad_on_ext, component_of, from_terms, to_terms, wedge_basis_right, ExtVector, Lambda2Component,
    Term,
};
use crate::graph::Graph;
use crate::invariants::invariants_equal_lambda2z;
use crate::linalg::Mat;
use crate::rational::Rational;
use crate::tst::is_tst_type;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cobracket {
    algebra: TwoStepAlgebra,
    columns: Vec<ExtVector>,
}

impl Cobracket {
    pub fn new(algebra: TwoStepAlgebra, columns: Vec<ExtVector>) -> Result<Self> {
        if columns.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns for an algebra of dimension {}",
                columns.len(),
                algebra.dim()
            )));
        }
        for (b, c) in columns.iter().enumerate() {
            if c.grade() != 2 || c.dim() != algebra.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "column {} lies in Λ^{} of dimension {}",
                    algebra.label(b),
                    c.grade(),
                    c.dim()
                )));
            }
        }
        Ok(Cobracket { algebra, columns })
    }

    pub fn zero(algebra: TwoStepAlgebra) -> Self {
        let columns = vec![ExtVector::zero(algebra.dim(), 2); algebra.dim()];
        Cobracket { algebra, columns }
    }

    pub fn algebra(&self) -> &TwoStepAlgebra {
        &self.algebra
    }

    pub fn columns(&self) -> &[ExtVector] {
        &self.columns
    }

    pub fn column(&self, b: usize) -> &ExtVector {
        &self.columns[b]
    }

    pub fn scale(&self, s: &Rational) -> Cobracket {
        Cobracket {
            algebra: self.algebra.clone(),
            columns: self.columns.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// `δ(x)` by linearity.
    pub fn apply(&self, x: &Element) -> Result<ExtVector> {
        self.algebra.check_element(x)?;
        let mut out = ExtVector::zero(self.algebra.dim(), 2);
        for (b, c) in x.to_full().iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&self.columns[b], c)?;
            }
        }
        Ok(out)
    }

    fn cojacobi_of(&self, omega: &ExtVector) -> ExtVector {
        let dim = self.algebra.dim();
        let mut out = ExtVector::zero(dim, 3);
        let minus = Rational::from(-1);
        for (m, c) in omega.terms() {
            let [p, q] = *m.as_slice() else {
                unreachable!()
            };
            // δ(b_p) ∧ b_q − b_p ∧ δ(b_q) = δ(b_p) ∧ b_q − δ(b_q) ∧ b_p
            wedge_basis_right(&self.columns[p], q, &mut out, c);
            wedge_basis_right(&self.columns[q], p, &mut out, &(c * &minus));
        }
        out
    }

    pub fn check_cojacobi(&self) -> ResidualReport {
        let residuals = (0..self.algebra.dim())
            .map(|b| (self.algebra.label(b), self.cojacobi_of(&self.columns[b])))
            .collect();
        ResidualReport::from_all(residuals)
    }

    /// `δ[b_p, b_q] − ad_{b_p} δ(b_q) + ad_{b_q} δ(b_p)` for one basis pair.
    pub fn cocycle_residual(&self, p: usize, q: usize) -> ExtVector {
        let a = &self.algebra;
        let mut r = ExtVector::zero(a.dim(), 2);
        for (i, c) in a.basis_bracket(p, q) {
            r.add_scaled(&self.columns[a.z_index(*i)], c)
                .expect("same space");
        }
        let bp = Element::basis(a, p);
        let bq = Element::basis(a, q);
        let ad_p = ad_on_ext(a, &bp, &self.columns[q]).expect("same algebra");
        let ad_q = ad_on_ext(a, &bq, &self.columns[p]).expect("same algebra");
        r.add_scaled(&ad_p, &Rational::from(-1))
            .expect("same space");
        r.add_assign(&ad_q).expect("same space");
        r
    }

    /// Checks every pair of basis generators, central ones included.
    pub fn check_cocycle(&self) -> ResidualReport {
        let n = self.algebra.dim();
        let mut residuals = Vec::new();
        for p in 0..n {
            for q in p + 1..n {
                let label = format!("[{}, {}]", self.algebra.label(p), self.algebra.label(q));
                residuals.push((label, self.cocycle_residual(p, q)));
            }
        }
        ResidualReport::from_all(residuals)
    }

    pub fn is_bialgebra(&self) -> bool {
        self.check_cojacobi().passed() && self.check_cocycle().passed()
    }

    /// The `Λ²W` block of `δ` restricted to W, as a cobracket vanishing on z.
    pub fn delta1(&self) -> Cobracket {
        let a = &self.algebra;
        let dim_w = a.dim_w();
        let columns = (0..a.dim())
            .map(|b| {
                if b < dim_w {
                    self.columns[b].filtered(|m| m.iter().all(|&i| i < dim_w))
                } else {
                    ExtVector::zero(a.dim(), 2)
                }
            })
            .collect();
        Cobracket {
            algebra: a.clone(),
            columns,
        }
    }

    /// Co-Jacobi of `δ₁` alone. The check runs even when `δ` is not a bialgebra; the
    /// returned flag says whether that precondition held.
    pub fn delta1_cojacobi(&self) -> Delta1Check {
        Delta1Check {
            precondition_met: self.is_bialgebra(),
            holds: self.delta1().check_cojacobi().passed(),
        }
    }

    pub fn is_nearly_coboundary(&self) -> bool {
        (self.algebra.dim_w()..self.algebra.dim()).all(|b| self.columns[b].is_zero())
    }

    /// `δ(z) ⊂ Λ²z` and `δ(W) ⊂ W∧z ⊕ Λ²z`.
    pub fn structural_containment(&self) -> ContainmentReport {
        let a = &self.algebra;
        let hypotheses_satisfied = invariants_equal_lambda2z(a) && is_tst_type(a);
        let mut violations = Vec::new();
        for (b, col) in self.columns.iter().enumerate() {
            let central = a.is_central_index(b);
            for (m, c) in col.terms() {
                let [p, q] = *m.as_slice() else {
                    unreachable!()
                };
                let allowed = match component_of(a.dim_w(), p, q) {
                    Lambda2Component::Lambda2Z => true,
                    Lambda2Component::WWedgeZ => !central,
                    Lambda2Component::Lambda2W => false,
                };
                if !allowed {
                    violations.push(ContainmentViolation {
                        generator: a.label(b),
                        basis: vec![a.label(p), a.label(q)],
                        coeff: c.clone(),
                    });
                }
            }
        }
        ContainmentReport {
            hypotheses_satisfied,
            violations,
        }
    }

    /// The `D^i` family read off the `W∧z` block: `D^i[m][k]` is the coefficient of
    /// `e_m ∧ z_i` in `δ(e_k)`.
    pub fn d_family(&self) -> Vec<Mat> {
        let a = &self.algebra;
        let (dw, dz) = (a.dim_w(), a.dim_z());
        let mut ds = vec![Mat::zeros(dw, dw); dz];
        for k in 0..dw {
            for (m, c) in self.columns[k].terms() {
                let [p, q] = *m.as_slice() else {
                    unreachable!()
                };
                if p < dw && q >= dw {
                    ds[q - dw][(p, k)] = c.clone();
                }
            }
        }
        ds
    }

    /// Splits `δ` into construction data. Fails when `δ` has a `Λ²W` component or when
    /// `δ(z)` leaves `Λ²z`.
    pub fn decompose(&self) -> Result<ConstructionData> {
        let a = &self.algebra;
        let report = self.structural_containment();
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidParameters(format!(
                "δ({}) has a {:?} term outside the construction shape",
                v.generator, v.basis
            )));
        }
        let dw = a.dim_w();
        let delta_z = (dw..a.dim()).map(|b| self.columns[b].clone()).collect();
        let phi_star = (0..dw)
            .map(|k| self.columns[k].filtered(|m| m.iter().all(|&i| i >= dw)))
            .collect();
        Ok(ConstructionData {
            delta_z,
            d_family: self.d_family(),
            phi_star,
        })
    }

    /// Serializable form with the algebra description and labelled columns.
    pub fn to_file(&self) -> Result<CobracketFile> {
        let a = &self.algebra;
        let algebra = match a.origin() {
            Origin::Graph(g) => AlgebraSpec::Graph(g.clone()),
            Origin::Heisenberg(m) => AlgebraSpec::Heisenberg(*m),
            Origin::Tensors => AlgebraSpec::Tensors(TensorSpec {
                dim_w: a.dim_w(),
                t: a.tensors()
                    .iter()
                    .map(|t| (0..t.rows()).map(|i| t.row(i).to_vec()).collect())
                    .collect(),
            }),
        };
        let columns = (0..a.dim())
            .filter(|&b| !self.columns[b].is_zero())
            .map(|b| (a.label(b), to_terms(a, &self.columns[b])))
            .collect();
        Ok(CobracketFile { algebra, columns })
    }

    pub fn to_json(&self) -> Result<Value> {
        Ok(serde_json::to_value(self.to_file()?)?)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: CobracketFile = serde_json::from_str(s)?;
        file.into_cobracket()
    }
}

/// Per-item residual vectors; only nonzero residuals are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualReport {
    pub checked: usize,
    pub residuals: Vec<(String, ExtVector)>,
}

impl ResidualReport {
    fn from_all(all: Vec<(String, ExtVector)>) -> Self {
        let checked = all.len();
        ResidualReport {
            checked,
            residuals: all.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }

    /// Largest support among the residuals.
    pub fn max_support(&self) -> usize {
        self.residuals
            .iter()
            .map(|(_, v)| v.support_len())
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self, a: &TwoStepAlgebra) -> Value {
        let failures: Vec<Value> = self
            .residuals
            .iter()
            .map(|(label, v)| json!({"at": label, "residual": to_terms(a, v)}))
            .collect();
        json!({
            "passed": self.passed(),
            "checked": self.checked,
            "max_support": self.max_support(),
            "failures": failures,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Delta1Check {
    pub precondition_met: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainmentViolation {
    pub generator: String,
    pub basis: Vec<String>,
    pub coeff: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentReport {
    /// `(Λ²n)^n = Λ²z` and TST type; without them containment is not guaranteed.
    pub hypotheses_satisfied: bool,
    pub violations: Vec<ContainmentViolation>,
}

impl ContainmentReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "hypotheses_satisfied": self.hypotheses_satisfied,
            "holds": self.holds(),
            "violations": self.violations,
        });
        if !self.hypotheses_satisfied {
            v["note"] = json!("hypotheses not satisfied, containment not guaranteed");
        }
        v
    }
}

/// Input of the general construction on `n = W ⊕ z`.
///
/// `delta_z[i] = δ_z(z_i)` and `phi_star[k] = Φ*(e_k)` lie in `Λ²z` (as `Λ²n` vectors);
/// `d_family[i]` is `D^i` acting on column vectors, so `D^i(e_k)` is column `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionData {
    pub delta_z: Vec<ExtVector>,
    pub d_family: Vec<Mat>,
    pub phi_star: Vec<ExtVector>,
}

impl ConstructionData {
    pub fn zero(a: &TwoStepAlgebra) -> Self {
        ConstructionData {
            delta_z: vec![ExtVector::zero(a.dim(), 2); a.dim_z()],
            d_family: vec![Mat::zeros(a.dim_w(), a.dim_w()); a.dim_z()],
            phi_star: vec![ExtVector::zero(a.dim(), 2); a.dim_w()],
        }
    }

    fn validate(&self, a: &TwoStepAlgebra) -> Result<()> {
        let (dw, dz) = (a.dim_w(), a.dim_z());
        if self.delta_z.len() != dz || self.d_family.len() != dz || self.phi_star.len() != dw {
            return Err(Error::DimensionMismatch(format!(
                "construction data sizes ({}, {}, {}) for dims ({dw}, {dz})",
                self.delta_z.len(),
                self.d_family.len(),
                self.phi_star.len()
            )));
        }
        if self
            .d_family
            .iter()
            .any(|d| d.rows() != dw || d.cols() != dw)
        {
            return Err(Error::DimensionMismatch(format!(
                "every D^i must be {dw}x{dw}"
            )));
        }
        for v in self.delta_z.iter().chain(&self.phi_star) {
            if v.grade() != 2 || v.dim() != a.dim() {
                return Err(Error::DimensionMismatch(
                    "construction vectors must lie in Λ²n".into(),
                ));
            }
            if v.terms().any(|(m, _)| m.as_slice()[0] < dw) {
                return Err(Error::InvalidParameters(
                    "δ_z and Φ* must take values in Λ²z".into(),
                ));
            }
        }
        Ok(())
    }
}

/// `δ(z_i) = δ_z(z_i)`, `δ(e_k) = Σ_i D^i(e_k) ∧ z_i + Φ*(e_k)`.
pub fn build_from_data(a: &TwoStepAlgebra, data: &ConstructionData) -> Result<Cobracket> {
    data.validate(a)?;
    let mut columns = Vec::with_capacity(a.dim());
    for k in 0..a.dim_w() {
        let mut col = data.phi_star[k].clone();
        for (i, d) in data.d_family.iter().enumerate() {
            for m in 0..a.dim_w() {
                col.add_term(&[m, a.z_index(i)], &d[(m, k)]);
            }
        }
        columns.push(col);
    }
    columns.extend(data.delta_z.iter().cloned());
    Cobracket::new(a.clone(), columns)
}

/// Verdicts on construction data. `phi_cocycle` is the condition making the `Λ³z` part of
/// co-Jacobi on W vanish: `Σ_i Φ*(D^i v) ∧ z_i + Σ_{p<q} φ_pq(v) (δ_z(z_p) ∧ z_q − z_p ∧ δ_z(z_q))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionCheck {
    pub delta_z_cojacobi: ResidualReport,
    /// Central index pairs `(p, q)` where `𝔇([z^p, z^q]) ≠ [𝔇(z^p), 𝔇(z^q)]`.
    pub homomorphism_failures: Vec<(usize, usize)>,
    pub compatibility: ResidualReport,
    pub phi_cocycle: ResidualReport,
}

impl ConstructionCheck {
    pub fn homomorphism(&self) -> bool {
        self.homomorphism_failures.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.delta_z_cojacobi.passed()
            && self.homomorphism()
            && self.compatibility.passed()
            && self.phi_cocycle.passed()
    }

    pub fn to_json(&self, a: &TwoStepAlgebra) -> Value {
        json!({
            "passed": self.passed(),
            "delta_z_cojacobi": self.delta_z_cojacobi.to_json(a),
            "homomorphism": self.homomorphism(),
            "homomorphism_failures": self.homomorphism_failures
                .iter()
                .map(|&(p, q)| json!([a.label(a.z_index(p)), a.label(a.z_index(q))]))
                .collect::<Vec<_>>(),
            "compatibility": self.compatibility.to_json(a),
            "phi_cocycle": self.phi_cocycle.to_json(a),
        })
    }
}

pub fn check_construction_data(
    a: &TwoStepAlgebra,
    data: &ConstructionData,
) -> Result<ConstructionCheck> {
    data.validate(a)?;
    let (dw, dz) = (a.dim_w(), a.dim_z());

    // (1) δ_z is a Lie coalgebra structure on z
    let mut only_z = ConstructionData::zero(a);
    only_z.delta_z = data.delta_z.clone();
    let delta_z_cojacobi = build_from_data(a, &only_z)?.check_cojacobi();

    // (2) 𝔇: z* → End(W), 𝔇(f) = −Σ f(z_i) D^i, is a Lie map for the bracket on z* dual
    // to δ_z: [z^p, z^q] = −Σ_k c^k_pq z^k with δ_z(z_k) = Σ c^k_pq z_p ∧ z_q
    let frak_d = |f: &[Rational]| -> Mat {
        let mut m = Mat::zeros(dw, dw);
        for (i, fi) in f.iter().enumerate() {
            if !fi.is_zero() {
                m = m.checked_sub(&data.d_family[i].scale(fi)).expect("square");
            }
        }
        m
    };
    let unit = |p: usize| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dz];
        v[p] = Rational::one();
        v
    };
    let mut homomorphism_failures = Vec::new();
    for p in 0..dz {
        for q in p + 1..dz {
            let dual: Vec<Rational> = (0..dz)
                .map(|k| -data.delta_z[k].coefficient(&[a.z_index(p), a.z_index(q)]))
                .collect();
            let lhs = frak_d(&dual);
            let (dp, dq) = (frak_d(&unit(p)), frak_d(&unit(q)));
            let rhs = dp
                .checked_mul(&dq)
                .and_then(|x| x.checked_sub(&dq.checked_mul(&dp)?))
                .expect("square");
            if lhs != rhs {
                homomorphism_failures.push((p, q));
            }
        }
    }

    // (3) Σ_i T_i(x)(y) δ_z(z_i) = Σ_j ([D^j x, y] + [x, D^j y]) ∧ z_j on W-basis pairs
    let mut compat = Vec::new();
    for x in 0..dw {
        for y in x + 1..dw {
            let mut r = ExtVector::zero(a.dim(), 2);
            for (i, c) in a.basis_bracket(x, y) {
                r.add_scaled(&data.delta_z[*i], c).expect("same space");
            }
            for (j, d) in data.d_family.iter().enumerate() {
                let mut b = vec![Rational::zero(); dz];
                for m in 0..dw {
                    for (i, c) in a.basis_bracket(m, y) {
                        b[*i].add_product(&d[(m, x)], c);
                    }
                    for (i, c) in a.basis_bracket(x, m) {
                        b[*i].add_product(&d[(m, y)], c);
                    }
                }
                for (i, c) in b.iter().enumerate() {
                    r.add_term(&[a.z_index(i), a.z_index(j)], &-c);
                }
            }
            compat.push((format!("({}, {})", a.label(x), a.label(y)), r));
        }
    }
    let compatibility = ResidualReport::from_all(compat);

    // (4) Λ³z part of co-Jacobi on each e_k
    let mut phi = Vec::new();
    let minus = Rational::from(-1);
    for k in 0..dw {
        let mut r = ExtVector::zero(a.dim(), 3);
        for (i, d) in data.d_family.iter().enumerate() {
            let mut image = ExtVector::zero(a.dim(), 2);
            for m in 0..dw {
                if !d[(m, k)].is_zero() {
                    image
                        .add_scaled(&data.phi_star[m], &d[(m, k)])
                        .expect("same space");
                }
            }
            wedge_basis_right(&image, a.z_index(i), &mut r, &Rational::one());
        }
        for (mono, c) in data.phi_star[k].terms() {
            let [p, q] = *mono.as_slice() else {
                unreachable!()
            };
            wedge_basis_right(&data.delta_z[p - dw], q, &mut r, c);
            wedge_basis_right(&data.delta_z[q - dw], p, &mut r, &(c * &minus));
        }
        phi.push((a.label(k), r));
    }
    let phi_cocycle = ResidualReport::from_all(phi);

    Ok(ConstructionCheck {
        delta_z_cojacobi,
        homomorphism_failures,
        compatibility,
        phi_cocycle,
    })
}

/// Bracket tensors written out as rows of rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorSpec {
    pub dim_w: usize,
    pub t: Vec<Vec<Vec<Rational>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraSpec {
    Graph(Graph),
    Tensors(TensorSpec),
    Heisenberg(usize),
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<TwoStepAlgebra> {
        match self {
            AlgebraSpec::Graph(g) => Ok(TwoStepAlgebra::from_graph(g)),
            AlgebraSpec::Heisenberg(m) => TwoStepAlgebra::heisenberg(*m),
            AlgebraSpec::Tensors(spec) => {
                let tensors = spec
                    .t
                    .iter()
                    .map(|rows| {
                        if rows.is_empty() {
                            Ok(Mat::zeros(0, 0))
                        } else {
                            Mat::from_rows(rows.clone())
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                TwoStepAlgebra::from_tensors(spec.dim_w, tensors)
            }
        }
    }
}

/// On-disk cobracket: generators missing from `columns` map to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CobracketFile {
    pub algebra: AlgebraSpec,
    pub columns: BTreeMap<String, Vec<Term>>,
}

impl CobracketFile {
    pub fn into_cobracket(self) -> Result<Cobracket> {
        let a = self.algebra.build()?;
        let mut columns = vec![ExtVector::zero(a.dim(), 2); a.dim()];
        for (label, terms) in &self.columns {
            let b = a
                .index_of_label(label)
                .ok_or_else(|| Error::Schema(format!("unknown generator {label:?}")))?;
            columns[b] = from_terms(&a, 2, terms)?;
        }
        Cobracket::new(a, columns)
    }
}
