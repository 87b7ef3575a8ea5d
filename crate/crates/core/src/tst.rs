//! The TST system `T_i S T_k + T_k S T_i = 0` in an antisymmetric unknown `S: W* → W`.
//!
//! Unknowns are the entries `s_pq`, `p < q`, in lexicographic order. Rows are indexed by a
//! central pair `i ≤ k` and an entry position `p < q`; the expression is antisymmetric, so
//! the lower triangle carries no extra information.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::algebra::TwoStepAlgebra;
use crate::exterior::{binom, ExteriorIndex};
use crate::graph::Graph;
use crate::linalg::{Mat, SolutionSpace};
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub struct TstSystem {
    dim_w: usize,
    tensors: Vec<Mat>,
    matrix: Mat,
}

impl TstSystem {
    pub fn unknowns(&self) -> usize {
        binom(self.dim_w, 2)
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    /// The antisymmetric matrix with the given upper-triangle entries.
    pub fn s_matrix(&self, entries: &[Rational]) -> Mat {
        let idx = ExteriorIndex::new(self.dim_w, 2);
        let mut s = Mat::zeros(self.dim_w, self.dim_w);
        for (pos, c) in entries.iter().enumerate() {
            let m = idx.monomial(pos);
            let [p, q] = *m.as_slice() else {
                unreachable!()
            };
            s[(p, q)] = c.clone();
            s[(q, p)] = -c;
        }
        s
    }

    /// `T_i S T_k + T_k S T_i = 0` for every pair, by direct multiplication.
    pub fn satisfied_by(&self, s: &Mat) -> bool {
        let prods: Vec<Mat> = self
            .tensors
            .iter()
            .map(|t| t.checked_mul(s).expect("square"))
            .collect();
        for i in 0..self.tensors.len() {
            for k in i..self.tensors.len() {
                let a = prods[i].checked_mul(&self.tensors[k]).expect("square");
                let b = prods[k].checked_mul(&self.tensors[i]).expect("square");
                if !a.checked_add(&b).expect("square").is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn solve(&self) -> TstSolution {
        let space = self.matrix.nullspace();
        let matrices: Vec<Mat> = space.basis.iter().map(|v| self.s_matrix(v)).collect();
        for s in &matrices {
            assert!(
                self.satisfied_by(s),
                "nullspace vector fails the TST equations"
            );
        }
        TstSolution {
            dim_w: self.dim_w,
            space,
            matrices,
        }
    }
}

pub fn assemble_tst(a: &TwoStepAlgebra) -> TstSystem {
    let n = a.dim_w();
    let idx = ExteriorIndex::new(n, 2);
    let t = a.tensors();
    let mut rows = Vec::new();
    for i in 0..t.len() {
        for k in i..t.len() {
            for m in idx.monomials() {
                let [p, q] = *m.as_slice() else {
                    unreachable!()
                };
                let mut row = vec![Rational::zero(); idx.len()];
                for (col, u) in idx.monomials().enumerate() {
                    let [x, y] = *u.as_slice() else {
                        unreachable!()
                    };
                    // s_xy enters S at (x, y) with +1 and at (y, x) with -1
                    let mut c = Rational::zero();
                    for (l, r) in [(&t[i], &t[k]), (&t[k], &t[i])] {
                        c.add_product(&l[(p, x)], &r[(y, q)]);
                        c -= &l[(p, y)] * &r[(x, q)];
                    }
                    row[col] = c;
                }
                rows.push(row);
            }
        }
    }
    let matrix = if rows.is_empty() {
        Mat::zeros(0, idx.len())
    } else {
        Mat::from_rows(rows).expect("uniform rows")
    };
    TstSystem {
        dim_w: n,
        tensors: t.to_vec(),
        matrix,
    }
}

#[derive(Debug, Clone)]
pub struct TstSolution {
    dim_w: usize,
    pub space: SolutionSpace,
    /// Basis solutions as antisymmetric `dim_w × dim_w` matrices.
    pub matrices: Vec<Mat>,
}

impl TstSolution {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// True when `s_pq` vanishes on every basis solution.
    pub fn entry_vanishes(&self, p: usize, q: usize) -> bool {
        let pos = ExteriorIndex::new(self.dim_w, 2).position(&[p.min(q), p.max(q)]);
        self.space.coordinate_vanishes(pos)
    }
}

pub fn solve_tst(a: &TwoStepAlgebra) -> TstSolution {
    assemble_tst(a).solve()
}

pub fn is_tst_type(a: &TwoStepAlgebra) -> bool {
    solve_tst(a).dim() == 0
}

/// Pairs predicted to vanish that are nonzero on some computed solution, 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroPatternReport {
    pub predicted: BTreeSet<(usize, usize)>,
    pub violations: Vec<(usize, usize)>,
}

pub fn crosscheck_zero_pattern(g: &Graph) -> ZeroPatternReport {
    let sol = solve_tst(&TwoStepAlgebra::from_graph(g));
    crosscheck_with(g, &sol)
}

pub fn crosscheck_with(g: &Graph, sol: &TstSolution) -> ZeroPatternReport {
    let predicted = g.predicted_s_zero_pattern();
    let violations = predicted
        .iter()
        .copied()
        .filter(|&(p, q)| !sol.entry_vanishes(p, q))
        .collect();
    ZeroPatternReport {
        predicted,
        violations,
    }
}

/// JSON report; each basis solution is listed by its nonzero entries `s_pq`, `p < q`.
pub fn tst_report_json(
    a: &TwoStepAlgebra,
    sol: &TstSolution,
    zero_pattern: Option<&ZeroPatternReport>,
) -> Value {
    let idx = ExteriorIndex::new(a.dim_w(), 2);
    let basis: Vec<Value> = sol
        .space
        .basis
        .iter()
        .map(|v| {
            let entries: Vec<Value> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(pos, c)| {
                    let m = idx.monomial(pos);
                    let [p, q] = *m.as_slice() else {
                        unreachable!()
                    };
                    json!([[a.label(p), a.label(q)], c])
                })
                .collect();
            Value::Array(entries)
        })
        .collect();
    let violations: Vec<Value> = zero_pattern
        .map(|z| {
            z.violations
                .iter()
                .map(|&(p, q)| json!([a.label(p), a.label(q)]))
                .collect()
        })
        .unwrap_or_default();
    json!({
        "tst_type": sol.dim() == 0,
        "solution_dim": sol.dim(),
        "basis": basis,
        "zero_pattern_violations": violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn system_sizes() {
        let h3 = TwoStepAlgebra::from_graph(&Graph::single_edge());
        let sys = assemble_tst(&h3);
        assert_eq!((sys.matrix().rows(), sys.unknowns()), (1, 1));
        let p3 = assemble_tst(&TwoStepAlgebra::from_graph(&Graph::path(3)));
        assert_eq!((p3.matrix().rows(), p3.unknowns()), (9, 3));
        let k3 = assemble_tst(&TwoStepAlgebra::from_graph(&Graph::complete(3)));
        assert_eq!((k3.matrix().rows(), k3.unknowns()), (18, 3));
    }

    #[test]
    fn small_solutions() {
        assert_eq!(
            solve_tst(&TwoStepAlgebra::from_graph(&Graph::single_edge())).dim(),
            0
        );
        assert!(is_tst_type(&TwoStepAlgebra::from_graph(&Graph::complete(
            3
        ))));
        assert!(is_tst_type(&TwoStepAlgebra::from_graph(&Graph::complete(
            4
        ))));
        assert!(is_tst_type(&TwoStepAlgebra::heisenberg(2).unwrap()));
    }

    #[test]
    fn path_solution_is_e13() {
        let sol = solve_tst(&TwoStepAlgebra::from_graph(&Graph::path(3)));
        assert_eq!(sol.dim(), 1);
        let s = &sol.matrices[0];
        let mut expected = Mat::zeros(3, 3);
        expected[(0, 2)] = q(1);
        expected[(2, 0)] = q(-1);
        assert_eq!(s, &expected);
    }

    #[test]
    fn path_zero_pattern() {
        let r = crosscheck_zero_pattern(&Graph::path(3));
        assert_eq!(r.predicted, [(0, 1), (1, 2)].into_iter().collect());
        assert!(r.violations.is_empty());
    }

    #[test]
    fn diagonal_equation_kills_edge_entries() {
        // T_α S T_α has (i, j) entry equal to S_ji when α joins i and j
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let a = TwoStepAlgebra::from_graph(&g);
        let sys = assemble_tst(&a);
        let entries: Vec<Rational> = (1..=6).map(|k| Rational::new(k, 7)).collect();
        let s = sys.s_matrix(&entries);
        for (e, &(i, j)) in g.edges().iter().enumerate() {
            let t = &a.tensors()[e];
            let tst = t.checked_mul(&s).unwrap().checked_mul(t).unwrap();
            assert_eq!(tst[(i, j)], s[(j, i)]);
        }
    }

    #[test]
    fn json_report() {
        let a = TwoStepAlgebra::from_graph(&Graph::path(3));
        let sol = solve_tst(&a);
        let z = crosscheck_with(&Graph::path(3), &sol);
        let j = tst_report_json(&a, &sol, Some(&z));
        assert_eq!(j["tst_type"], false);
        assert_eq!(j["solution_dim"], 1);
        assert_eq!(j["basis"][0][0][0], json!(["v1", "v3"]));
        assert_eq!(j["basis"][0][0][1], "1");
        assert_eq!(j["zero_pattern_violations"], json!([]));
    }
}
