//! Nearly coboundary cobrackets on graph algebras.
//!
//! With `δ(z) = 0` the data reduces to a commuting family `D_α` (one per edge) and
//! `ω_i ∈ Λ²z`. For diagonal `D_α(e_i) = λ_{i,α} e_i` the axioms become the linear
//! λ-system together with `ω_i ∧ A_i = 0`, where `A_i = Σ_α λ_{i,α} α`. On `K₃` the
//! non-diagonalizable normal forms are handled by [`F3Family`].

use std::collections::VecDeque;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::TwoStepAlgebra;
use crate::cobracket::{build_from_data, Cobracket, ConstructionData};
use crate::error::{Error, Result};
use crate::exterior::{binom, wedge, ExtVector};
use crate::graph::Graph;
use crate::linalg::{Mat, SolutionSpace};
use crate::rational::Rational;

/// Flat position of `λ_{v,α}` among the `|V|·|A|` unknowns.
pub fn lambda_index(g: &Graph, v: usize, alpha: usize) -> usize {
    v * g.edge_count() + alpha
}

/// Rows `λ_{i,α} + λ_{j,α} = 0` for every edge `(i, j)` and every edge `α ≠ (i, j)`.
pub fn lambda_system_matrix(g: &Graph) -> Mat {
    let unknowns = g.vertex_count() * g.edge_count();
    let mut rows = Vec::new();
    for (e, &(i, j)) in g.edges().iter().enumerate() {
        for alpha in (0..g.edge_count()).filter(|&a| a != e) {
            let mut row = vec![Rational::zero(); unknowns];
            row[lambda_index(g, i, alpha)] = Rational::one();
            row[lambda_index(g, j, alpha)] = Rational::one();
            rows.push(row);
        }
    }
    if rows.is_empty() {
        Mat::zeros(0, unknowns)
    } else {
        Mat::from_rows(rows).expect("uniform rows")
    }
}

pub fn lambda_system(g: &Graph) -> SolutionSpace {
    lambda_system_matrix(g).nullspace()
}

/// True iff `λ_{v,α}` vanishes on the whole solution space of the λ-system.
pub fn path_parity_zero(g: &Graph, v: usize, alpha: usize) -> bool {
    lambda_system(g).coordinate_vanishes(lambda_index(g, v, alpha))
}

/// A closed walk of odd length through `v` that avoids the edge `α`, as a vertex sequence
/// starting and ending at `v`. Chaining the relations along it gives
/// `λ_{v,α} = −λ_{v,α}`, so its existence forces `λ_{v,α} = 0`.
pub fn parity_certificate(g: &Graph, v: usize, alpha: usize) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let banned = g.edges()[alpha];
    let mut depth: Vec<Option<usize>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    depth[v] = Some(0);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        let du = depth[u].expect("queued vertices have a depth");
        for w in g.neighbors(u) {
            if (u.min(w), u.max(w)) == banned {
                continue;
            }
            match depth[w] {
                None => {
                    depth[w] = Some(du + 1);
                    parent[w] = u;
                    queue.push_back(w);
                }
                Some(dw) if dw % 2 == du % 2 => {
                    let mut walk = path_to_root(&parent, u, v);
                    walk.reverse();
                    walk.extend(path_to_root(&parent, w, v));
                    return Some(walk);
                }
                Some(_) => {}
            }
        }
    }
    None
}

fn path_to_root(parent: &[usize], mut u: usize, root: usize) -> Vec<usize> {
    let mut path = vec![u];
    while u != root {
        u = parent[u];
        path.push(u);
    }
    path
}

/// Diagonal data `D_α(e_i) = λ_{i,α} e_i` plus `ω_i ∈ Λ²z`, with `δ(z) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalFamily {
    graph: Graph,
    algebra: TwoStepAlgebra,
    lambda: Vec<Rational>,
    omega: Vec<ExtVector>,
}

impl DiagonalFamily {
    pub fn new(g: &Graph, lambda: Vec<Rational>, omega: Vec<ExtVector>) -> Result<Self> {
        let algebra = TwoStepAlgebra::from_graph(g);
        let (nv, ne) = (g.vertex_count(), g.edge_count());
        if lambda.len() != nv * ne || omega.len() != nv {
            return Err(Error::DimensionMismatch(format!(
                "{} λ values and {} ω vectors for {nv} vertices and {ne} edges",
                lambda.len(),
                omega.len()
            )));
        }
        for w in &omega {
            if w.grade() != 2 || w.dim() != algebra.dim() {
                return Err(Error::DimensionMismatch("ω must lie in Λ²n".into()));
            }
            if w.terms().any(|(m, _)| m.as_slice()[0] < nv) {
                return Err(Error::InvalidParameters("ω must lie in Λ²z".into()));
            }
        }
        Ok(DiagonalFamily {
            graph: g.clone(),
            algebra,
            lambda,
            omega,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn algebra(&self) -> &TwoStepAlgebra {
        &self.algebra
    }

    pub fn lambda(&self, v: usize, alpha: usize) -> &Rational {
        &self.lambda[lambda_index(&self.graph, v, alpha)]
    }

    pub fn omega(&self) -> &[ExtVector] {
        &self.omega
    }

    /// `A_v = Σ_α λ_{v,α} α` as a grade-1 vector of `n`.
    pub fn a_vector(&self, v: usize) -> ExtVector {
        let mut a = ExtVector::zero(self.algebra.dim(), 1);
        for alpha in 0..self.graph.edge_count() {
            a.add_term(&[self.algebra.z_index(alpha)], self.lambda(v, alpha));
        }
        a
    }

    pub fn construction_data(&self) -> ConstructionData {
        let mut data = ConstructionData::zero(&self.algebra);
        for (alpha, d) in data.d_family.iter_mut().enumerate() {
            for v in 0..self.graph.vertex_count() {
                d[(v, v)] = self.lambda(v, alpha).clone();
            }
        }
        data.phi_star = self.omega.clone();
        data
    }

    pub fn build(&self) -> Cobracket {
        build_from_data(&self.algebra, &self.construction_data()).expect("consistent data")
    }

    pub fn lambda_in_system(&self) -> bool {
        lambda_system(&self.graph).contains(&self.lambda)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaReport {
    /// Nonzero `ω_v ∧ A_v`, labelled by vertex.
    pub residuals: Vec<(String, ExtVector)>,
    /// Whether the verdict matches co-Jacobi of the assembled cobracket.
    pub cojacobi_agrees: bool,
}

impl OmegaReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}

pub fn omega_constraints(fam: &DiagonalFamily) -> OmegaReport {
    let residuals: Vec<(String, ExtVector)> = (0..fam.graph.vertex_count())
        .map(|v| {
            let r = wedge(&fam.omega[v], &fam.a_vector(v)).expect("grades 2 and 1");
            (Graph::vertex_label(v), r)
        })
        .filter(|(_, r)| !r.is_zero())
        .collect();
    let cojacobi = fam.build().check_cojacobi().passed();
    OmegaReport {
        cojacobi_agrees: cojacobi == residuals.is_empty(),
        residuals,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    /// `|V||A|` and `|V||A|(|A|−1)/2` for the cycle `C_n`.
    pub cycle: (usize, usize),
    /// The same counts for the complete graph `K_n`.
    pub complete: (usize, usize),
    pub closed_form_agrees: bool,
}

fn counts(g: &Graph) -> (usize, usize) {
    let (v, a) = (g.vertex_count(), g.edge_count());
    (v * a, v * binom(a, 2))
}

/// Parameter counts computed from the constructed graphs, checked against
/// `n², n²(n−1)/2, n²(n−1)/2, n²(n+1)(n−1)(n−2)/8`.
pub fn parameter_table(ns: RangeInclusive<usize>) -> Result<Vec<TableRow>> {
    if *ns.start() < 3 {
        return Err(Error::InvalidParameters(format!(
            "parameter table starts at n = 3, got {}",
            ns.start()
        )));
    }
    Ok(ns
        .map(|n| {
            let cycle = counts(&Graph::cycle(n));
            let complete = counts(&Graph::complete(n));
            let closed = (
                (n * n, n * n * (n - 1) / 2),
                (n * n * (n - 1) / 2, n * n * (n + 1) * (n - 1) * (n - 2) / 8),
            );
            TableRow {
                n,
                cycle,
                complete,
                closed_form_agrees: (cycle, complete) == closed,
            }
        })
        .collect())
}

/// Reads the `D` family off the `W∧z` block and tests pairwise commutation.
pub fn commuting_d_check(d: &Cobracket) -> Result<bool> {
    if !d.is_nearly_coboundary() {
        return Err(Error::NotNearlyCoboundary);
    }
    let ds = d.d_family();
    for (i, x) in ds.iter().enumerate() {
        for y in &ds[i + 1..] {
            if x.checked_mul(y)? != y.checked_mul(x)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub graph: Graph,
    pub lambda: SolutionSpace,
    /// `(vertex, edge)` pairs whose `λ` is forced to vanish.
    pub forced_zero: Vec<(usize, usize)>,
    pub omega_free_parameters: usize,
    pub caveats: Vec<String>,
}

pub fn classify_diagonal(g: &Graph) -> Classification {
    let lambda = lambda_system(g);
    let mut forced_zero = Vec::new();
    for v in 0..g.vertex_count() {
        for alpha in 0..g.edge_count() {
            if lambda.coordinate_vanishes(lambda_index(g, v, alpha)) {
                forced_zero.push((v, alpha));
            }
        }
    }
    let mut caveats = Vec::new();
    if !g.min_degree_at_least_two() {
        caveats.push(
            "minimum degree below 2: δ need not vanish on Λ²W or keep δ(z) in Λ²z, so the \
             diagonal family may miss structures"
                .to_string(),
        );
    }
    Classification {
        graph: g.clone(),
        omega_free_parameters: g.vertex_count() * binom(g.edge_count(), 2),
        lambda,
        forced_zero,
        caveats,
    }
}

impl Classification {
    pub fn to_json(&self) -> Value {
        let g = &self.graph;
        let pair = |v: usize, alpha: usize| json!([Graph::vertex_label(v), g.edge_label(alpha)]);
        let basis: Vec<Value> = self
            .lambda
            .basis
            .iter()
            .map(|vec| {
                let entries: Vec<Value> = vec
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| {
                        let (v, alpha) = (k / g.edge_count(), k % g.edge_count());
                        json!([pair(v, alpha), c])
                    })
                    .collect();
                Value::Array(entries)
            })
            .collect();
        json!({
            "graph": g,
            "lambda_dim": self.lambda.dim(),
            "lambda_basis": basis,
            "forced_zero_lambdas": self
                .forced_zero
                .iter()
                .map(|&(v, alpha)| pair(v, alpha))
                .collect::<Vec<_>>(),
            "omega_free_parameters": self.omega_free_parameters,
            "caveats": self.caveats,
        })
    }
}

/// Jordan normal-form cases for commuting `D_α, D_β, D_γ` on `f₃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum F3Case {
    I,
    II,
    III,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct F3Params {
    pub lambda: Rational,
    pub lambda_prime: Rational,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub mu: Rational,
    pub nu: Rational,
    pub rho: Rational,
    pub tau: Rational,
}

/// On `K₃` the edges are `α = (1,2)`, `β = (2,3)`, `γ = (1,3)`; in the lexicographic
/// central order that is `α = z₀`, `γ = z₁`, `β = z₂`. Each `ω_i` lies in `Λ²z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F3Family {
    pub case: F3Case,
    pub params: F3Params,
    pub omega: [ExtVector; 3],
}

const ALPHA: usize = 3;
const GAMMA: usize = 4;
const BETA: usize = 5;

impl F3Family {
    pub fn new(case: F3Case, params: F3Params, omega: [ExtVector; 3]) -> Result<Self> {
        if case == F3Case::I && params.lambda == params.lambda_prime {
            return Err(Error::InvalidParameters("case I requires λ ≠ λ′".into()));
        }
        for w in &omega {
            if w.grade() != 2 || w.dim() != 6 || w.terms().any(|(m, _)| m.as_slice()[0] < 3) {
                return Err(Error::InvalidParameters("ω must lie in Λ²z of f₃".into()));
            }
        }
        Ok(F3Family {
            case,
            params,
            omega,
        })
    }

    pub fn algebra() -> TwoStepAlgebra {
        TwoStepAlgebra::from_graph(&Graph::complete(3))
    }

    /// `(D_α, D_β, D_γ)`, acting on column vectors.
    pub fn matrices(&self) -> [Mat; 3] {
        let p = &self.params;
        let o = Rational::zero;
        let one = Rational::one;
        let m = |rows: [[Rational; 3]; 3]| {
            Mat::from_rows(rows.into_iter().map(Vec::from).collect()).expect("3x3")
        };
        match self.case {
            F3Case::I => [
                m([
                    [p.lambda.clone(), one(), o()],
                    [o(), p.lambda.clone(), o()],
                    [o(), o(), p.lambda_prime.clone()],
                ]),
                m([
                    [p.a.clone(), p.b.clone(), o()],
                    [o(), p.a.clone(), o()],
                    [o(), o(), p.c.clone()],
                ]),
                m([
                    [p.mu.clone(), p.nu.clone(), o()],
                    [o(), p.mu.clone(), o()],
                    [o(), o(), p.tau.clone()],
                ]),
            ],
            F3Case::II => [
                m([
                    [p.lambda.clone(), one(), o()],
                    [o(), p.lambda.clone(), one()],
                    [o(), o(), p.lambda.clone()],
                ]),
                m([
                    [p.a.clone(), p.b.clone(), p.c.clone()],
                    [o(), p.a.clone(), p.b.clone()],
                    [o(), o(), p.a.clone()],
                ]),
                m([
                    [p.mu.clone(), p.nu.clone(), p.rho.clone()],
                    [o(), p.mu.clone(), p.nu.clone()],
                    [o(), o(), p.mu.clone()],
                ]),
            ],
            F3Case::III => [
                m([
                    [p.lambda.clone(), one(), o()],
                    [o(), p.lambda.clone(), o()],
                    [o(), o(), p.lambda.clone()],
                ]),
                m([
                    [p.a.clone(), p.b.clone(), p.c.clone()],
                    [o(), p.a.clone(), o()],
                    [o(), o(), p.a.clone()],
                ]),
                m([
                    [p.mu.clone(), p.nu.clone(), p.rho.clone()],
                    [o(), p.mu.clone(), o()],
                    [o(), o(), p.mu.clone()],
                ]),
            ],
        }
    }

    fn central(alpha: &Rational, beta: &Rational, gamma: &Rational) -> ExtVector {
        let mut v = ExtVector::zero(6, 1);
        v.add_term(&[ALPHA], alpha);
        v.add_term(&[BETA], beta);
        v.add_term(&[GAMMA], gamma);
        v
    }

    pub fn a(&self) -> ExtVector {
        let p = &self.params;
        Self::central(&p.lambda, &p.a, &p.mu)
    }

    pub fn b(&self) -> ExtVector {
        let p = &self.params;
        Self::central(&Rational::one(), &p.b, &p.nu)
    }

    pub fn c(&self) -> ExtVector {
        let p = &self.params;
        Self::central(&Rational::zero(), &p.c, &p.rho)
    }

    pub fn d(&self) -> ExtVector {
        let p = &self.params;
        Self::central(&p.lambda_prime, &p.c, &p.tau)
    }

    pub fn construction_data(&self) -> ConstructionData {
        let alg = Self::algebra();
        let [da, db, dg] = self.matrices();
        let mut data = ConstructionData::zero(&alg);
        data.d_family = vec![da, dg, db];
        data.phi_star = self.omega.to_vec();
        data
    }

    /// `δ(e₁) = e₁∧A + ω₁`, `δ(e₂) = e₂∧A + e₁∧B + ω₂` and the case-dependent `δ(e₃)`.
    pub fn closed_form(&self) -> [ExtVector; 3] {
        let e = |i: usize| ExtVector::basis(6, &[i]);
        let w = |x: &ExtVector, y: &ExtVector| wedge(x, y).expect("grade 1");
        let sum = |parts: &[ExtVector], omega: &ExtVector| {
            let mut acc = omega.clone();
            for p in parts {
                acc.add_assign(p).expect("same space");
            }
            acc
        };
        let (a, b, c) = (self.a(), self.b(), self.c());
        let d1 = sum(&[w(&e(0), &a)], &self.omega[0]);
        let d2 = sum(&[w(&e(1), &a), w(&e(0), &b)], &self.omega[1]);
        let d3 = match self.case {
            F3Case::I => sum(&[w(&e(2), &self.d())], &self.omega[2]),
            F3Case::II => sum(&[w(&e(2), &a), w(&e(1), &b), w(&e(0), &c)], &self.omega[2]),
            F3Case::III => sum(&[w(&e(2), &a), w(&e(0), &c)], &self.omega[2]),
        };
        [d1, d2, d3]
    }
}

/// `δ(e_i) = D_α(e_i)∧α + D_β(e_i)∧β + D_γ(e_i)∧γ + ω_i`, `δ(z) = 0`.
pub fn f3_build(fam: &F3Family) -> Result<Cobracket> {
    let alg = F3Family::algebra();
    let d = build_from_data(&alg, &fam.construction_data())?;
    let closed = fam.closed_form();
    for (i, expected) in closed.iter().enumerate() {
        assert_eq!(
            d.column(i),
            expected,
            "δ(e{}) differs from its closed form",
            i + 1
        );
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F3Residuals {
    /// The named wedge expressions that failed to vanish.
    pub residuals: Vec<(String, ExtVector)>,
    pub cojacobi_agrees: bool,
}

impl F3Residuals {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}

/// `ω₁∧A`, `ω₂∧A + ω₁∧B` and the case-dependent third expression.
pub fn f3_residuals(fam: &F3Family) -> Result<F3Residuals> {
    let w = |x: &ExtVector, y: &ExtVector| wedge(x, y).expect("grades 2 and 1");
    let [o1, o2, o3] = &fam.omega;
    let (a, b, c) = (fam.a(), fam.b(), fam.c());
    let first = w(o1, &a);
    let second = w(o2, &a).add(&w(o1, &b))?;
    let third = match fam.case {
        F3Case::I => w(o3, &fam.d()),
        F3Case::II => w(o3, &a).add(&w(o2, &b))?.add(&w(o1, &c))?,
        F3Case::III => w(o3, &a).add(&w(o1, &c))?,
    };
    let residuals: Vec<(String, ExtVector)> =
        [("ω1∧A", first), ("ω2∧A + ω1∧B", second), ("third", third)]
            .into_iter()
            .filter(|(_, r)| !r.is_zero())
            .map(|(n, r)| (n.to_string(), r))
            .collect();
    let cojacobi = f3_build(fam)?.check_cojacobi().passed();
    Ok(F3Residuals {
        cojacobi_agrees: cojacobi == residuals.is_empty(),
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn zz(i: usize, j: usize) -> ExtVector {
        ExtVector::basis(6, &[i, j])
    }

    fn zero_omega() -> [ExtVector; 3] {
        [zz(3, 3), zz(3, 3), zz(3, 3)]
    }

    #[test]
    fn lambda_dimensions() {
        assert_eq!(lambda_system(&Graph::complete(3)).dim(), 3);
        assert_eq!(lambda_system(&Graph::complete(4)).dim(), 0);
        assert_eq!(lambda_system(&Graph::complete(5)).dim(), 0);
        assert_eq!(lambda_system(&Graph::single_edge()).dim(), 2);
        assert_eq!(lambda_system(&Graph::cycle(4)).dim(), 4);
        assert_eq!(lambda_system(&Graph::cycle(5)).dim(), 5);
    }

    #[test]
    fn k3_sign_pattern() {
        let g = Graph::complete(3);
        let space = lambda_system(&g);
        // per edge, λ over (v1, v2, v3) is proportional to the given signs
        let expected = [(0, [1, 1, -1]), (2, [1, -1, -1]), (1, [1, -1, 1])];
        for (alpha, signs) in expected {
            for v in &space.basis {
                let x = &v[lambda_index(&g, 0, alpha)];
                for (vertex, s) in signs.iter().enumerate() {
                    assert_eq!(v[lambda_index(&g, vertex, alpha)], x * &q(*s));
                }
            }
        }
    }

    #[test]
    fn parity_certificate_matches_linear_system() {
        for g in crate::graph::enumerate_graphs(5) {
            for v in 0..g.vertex_count() {
                for alpha in 0..g.edge_count() {
                    let cert = parity_certificate(&g, v, alpha);
                    assert_eq!(
                        cert.is_some(),
                        path_parity_zero(&g, v, alpha),
                        "{g:?} {v} {alpha}"
                    );
                    if let Some(walk) = cert {
                        assert_eq!(walk.first(), Some(&v));
                        assert_eq!(walk.last(), Some(&v));
                        assert_eq!((walk.len() - 1) % 2, 1);
                        for s in walk.windows(2) {
                            let e = g.edge_index(s[0], s[1]).expect("walk uses edges");
                            assert_ne!(e, alpha);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn forced_zeros() {
        let k4 = Graph::complete(4);
        assert!((0..4).all(|v| (0..6).all(|a| path_parity_zero(&k4, v, a))));
        assert!(!path_parity_zero(&Graph::complete(3), 0, 0));
        assert!(!path_parity_zero(&Graph::single_edge(), 0, 0));
    }

    #[test]
    fn omega_examples() {
        let g = Graph::complete(3);
        let mut lambda = vec![q(0); 9];
        lambda[lambda_index(&g, 0, 0)] = q(1);
        let fam = DiagonalFamily::new(&g, lambda.clone(), zero_omega().to_vec()).unwrap();
        assert!(omega_constraints(&fam).passed());

        let mut omega = zero_omega().to_vec();
        omega[0] = zz(ALPHA, BETA);
        let fam = DiagonalFamily::new(&g, lambda.clone(), omega).unwrap();
        let r = omega_constraints(&fam);
        assert!(r.passed() && r.cojacobi_agrees);

        let mut omega = zero_omega().to_vec();
        omega[0] = zz(BETA, GAMMA);
        let fam = DiagonalFamily::new(&g, lambda, omega).unwrap();
        let r = omega_constraints(&fam);
        assert!(!r.passed() && r.cojacobi_agrees);
    }

    #[test]
    fn table_rows() {
        let rows = parameter_table(3..=6).unwrap();
        let got: Vec<_> = rows.iter().map(|r| (r.cycle, r.complete)).collect();
        assert_eq!(
            got,
            vec![
                ((9, 9), (9, 9)),
                ((16, 24), (24, 60)),
                ((25, 50), (50, 225)),
                ((36, 90), (90, 630)),
            ]
        );
        assert!(rows.iter().all(|r| r.closed_form_agrees));
        assert!(parameter_table(2..=4).is_err());
    }

    #[test]
    fn commuting_checks() {
        let g = Graph::complete(3);
        let mut lambda = vec![q(0); 9];
        lambda[lambda_index(&g, 0, 0)] = q(1);
        lambda[lambda_index(&g, 1, 0)] = q(1);
        lambda[lambda_index(&g, 2, 0)] = q(-1);
        let d = DiagonalFamily::new(&g, lambda, zero_omega().to_vec())
            .unwrap()
            .build();
        assert!(d.is_bialgebra());
        assert!(commuting_d_check(&d).unwrap());

        let fam = F3Family::new(F3Case::II, F3Params::default(), zero_omega()).unwrap();
        let params = F3Params {
            b: q(2),
            c: q(3),
            nu: q(-1),
            rho: q(5),
            ..F3Params::default()
        };
        let fam2 = F3Family { params, ..fam };
        assert!(commuting_d_check(&f3_build(&fam2).unwrap()).unwrap());

        let alg = F3Family::algebra();
        let mut data = ConstructionData::zero(&alg);
        data.d_family[0][(0, 1)] = q(1);
        data.d_family[1][(1, 0)] = q(1);
        let d = build_from_data(&alg, &data).unwrap();
        assert!(!commuting_d_check(&d).unwrap());
        assert!(!d.is_bialgebra());

        let mut cols = vec![ExtVector::zero(6, 2); 6];
        cols[3] = zz(ALPHA, BETA);
        let d = Cobracket::new(alg, cols).unwrap();
        assert!(matches!(
            commuting_d_check(&d),
            Err(Error::NotNearlyCoboundary)
        ));
    }

    #[test]
    fn f3_examples() {
        let omega = [zz(3, 4), zz(4, 5), zz(3, 5)];
        let params = F3Params {
            lambda_prime: q(1),
            ..F3Params::default()
        };
        // the Jordan 1 in D_α and λ′ ≠ λ keep two terms alive even with zero parameters
        let fam = F3Family::new(F3Case::I, params, omega.clone()).unwrap();
        let d = f3_build(&fam).unwrap();
        assert_eq!(d.column(0), &omega[0]);
        assert_eq!(d.column(1), &omega[1].add(&zz(0, ALPHA)).unwrap());
        assert_eq!(d.column(2), &omega[2].add(&zz(2, ALPHA)).unwrap());

        let fam = F3Family::new(F3Case::II, F3Params::default(), zero_omega()).unwrap();
        let d = f3_build(&fam).unwrap();
        assert!(d.column(0).is_zero());
        assert_eq!(d.column(1), &zz(0, ALPHA));
        assert_eq!(d.column(2), &zz(1, ALPHA));

        assert!(F3Family::new(F3Case::I, F3Params::default(), zero_omega()).is_err());
    }

    #[test]
    fn f3_residual_examples() {
        let params = F3Params {
            lambda: q(1),
            lambda_prime: q(2),
            ..F3Params::default()
        };
        let mut omega = zero_omega();
        omega[0] = zz(BETA, GAMMA);
        let fam = F3Family::new(F3Case::I, params, omega).unwrap();
        let r = f3_residuals(&fam).unwrap();
        assert!(!r.passed() && r.cojacobi_agrees);
        assert!(!f3_build(&fam).unwrap().is_bialgebra());

        let params = F3Params {
            mu: q(1),
            ..F3Params::default()
        };
        let mut omega = zero_omega();
        omega[2] = zz(ALPHA, BETA);
        let fam = F3Family::new(F3Case::III, params, omega).unwrap();
        let r = f3_residuals(&fam).unwrap();
        assert_eq!(r.residuals.len(), 1);
        assert!(r.cojacobi_agrees);
    }

    #[test]
    fn classification_json() {
        let c = classify_diagonal(&Graph::complete(3));
        let j = c.to_json();
        assert_eq!(j["lambda_dim"], 3);
        assert_eq!(j["omega_free_parameters"], 9);
        assert_eq!(j["caveats"], json!([]));
        let c = classify_diagonal(&Graph::path(3));
        assert_eq!(c.caveats.len(), 1);
        assert_eq!(classify_diagonal(&Graph::complete(4)).forced_zero.len(), 24);
    }
}
