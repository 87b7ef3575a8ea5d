//! Grades 1 to 3 of the exterior algebra on `n = W ⊕ z`.
//!
//! A basis monomial is a strictly increasing tuple of basis indices of `n` (W first, then
//! z). Flat positions enumerate tuples lexicographically. Unsorted monomials are normalized
//! by sorting, picking up the sign of the sorting permutation; repeated indices give zero.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, TwoStepAlgebra};
use crate::error::{Error, Result};
use crate::rational::Rational;

pub(crate) fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A sorted basis monomial of grade at most 3.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    len: u8,
    idx: [usize; 3],
}

impl Monomial {
    pub fn as_slice(&self) -> &[usize] {
        &self.idx[..self.len as usize]
    }

    /// Sorts `indices` and returns the monomial with the permutation sign, or `None` when an
    /// index repeats.
    pub fn normalize(indices: &[usize]) -> Option<(Monomial, bool)> {
        assert!(indices.len() <= 3, "grade above 3");
        let mut idx = [0usize; 3];
        idx[..indices.len()].copy_from_slice(indices);
        let k = indices.len();
        let mut negative = false;
        for i in 0..k {
            for j in 0..k - 1 - i {
                if idx[j] > idx[j + 1] {
                    idx.swap(j, j + 1);
                    negative = !negative;
                } else if idx[j] == idx[j + 1] {
                    return None;
                }
            }
        }
        if (1..k).any(|i| idx[i - 1] == idx[i]) {
            return None;
        }
        Some((Monomial { len: k as u8, idx }, negative))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_slice())
    }
}

/// Ranking between sorted monomials and flat positions for one grade.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExteriorIndex {
    dim: usize,
    grade: usize,
}

impl ExteriorIndex {
    pub fn new(dim: usize, grade: usize) -> Self {
        assert!((1..=3).contains(&grade), "grade must be 1, 2 or 3");
        ExteriorIndex { dim, grade }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn len(&self) -> usize {
        binom(self.dim, self.grade)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat position of a strictly increasing tuple.
    pub fn position(&self, sorted: &[usize]) -> usize {
        debug_assert_eq!(sorted.len(), self.grade);
        debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]));
        let n = self.dim;
        match *sorted {
            [p] => p,
            [p, q] => (binom(n, 2) - binom(n - p, 2)) + (q - p - 1),
            [p, q, r] => {
                let m = n - p - 1;
                let (a, b) = (q - p - 1, r - p - 1);
                (binom(n, 3) - binom(n - p, 3)) + (binom(m, 2) - binom(m - a, 2)) + (b - a - 1)
            }
            _ => unreachable!(),
        }
    }

    pub fn monomial(&self, pos: usize) -> Monomial {
        let n = self.dim;
        let mut idx = [0usize; 3];
        match self.grade {
            1 => idx[0] = pos,
            2 => {
                let (p, q) = unrank2(n, pos);
                idx[0] = p;
                idx[1] = q;
            }
            _ => {
                let mut p = 0;
                while binom(n, 3) - binom(n - p - 1, 3) <= pos {
                    p += 1;
                }
                let rest = pos - (binom(n, 3) - binom(n - p, 3));
                let (a, b) = unrank2(n - p - 1, rest);
                idx = [p, p + 1 + a, p + 1 + b];
            }
        }
        Monomial {
            len: self.grade as u8,
            idx,
        }
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..self.len()).map(|pos| self.monomial(pos))
    }
}

fn unrank2(n: usize, pos: usize) -> (usize, usize) {
    let mut p = 0;
    while binom(n, 2) - binom(n - p - 1, 2) <= pos {
        p += 1;
    }
    let q = pos - (binom(n, 2) - binom(n - p, 2)) + p + 1;
    (p, q)
}

/// A dense vector in `Λ^grade n`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtVector {
    index: ExteriorIndex,
    coeffs: Vec<Rational>,
}

impl ExtVector {
    pub fn zero(dim: usize, grade: usize) -> Self {
        let index = ExteriorIndex::new(dim, grade);
        ExtVector {
            coeffs: vec![Rational::zero(); index.len()],
            index,
        }
    }

    pub fn from_coeffs(dim: usize, grade: usize, coeffs: Vec<Rational>) -> Result<Self> {
        let index = ExteriorIndex::new(dim, grade);
        if coeffs.len() != index.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a space of dimension {}",
                coeffs.len(),
                index.len()
            )));
        }
        Ok(ExtVector { index, coeffs })
    }

    /// The signed monomial `coeff · b_{i1} ∧ … ∧ b_{ik}` (zero if an index repeats).
    pub fn monomial(dim: usize, indices: &[usize], coeff: Rational) -> Self {
        let mut v = ExtVector::zero(dim, indices.len());
        v.add_term(indices, &coeff);
        v
    }

    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        ExtVector::monomial(dim, indices, Rational::one())
    }

    pub fn from_element(x: &Element) -> Self {
        let mut coeffs = x.w.clone();
        coeffs.extend(x.z.iter().cloned());
        let dim = coeffs.len();
        ExtVector {
            index: ExteriorIndex::new(dim, 1),
            coeffs,
        }
    }

    pub fn dim(&self) -> usize {
        self.index.dim
    }

    pub fn grade(&self) -> usize {
        self.index.grade
    }

    pub fn index(&self) -> ExteriorIndex {
        self.index
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff_at(&self, pos: usize) -> &Rational {
        &self.coeffs[pos]
    }

    /// Coefficient of the monomial `b_{i1} ∧ …` in any index order, with sign.
    pub fn coefficient(&self, indices: &[usize]) -> Rational {
        match Monomial::normalize(indices) {
            None => Rational::zero(),
            Some((m, negative)) => {
                let c = &self.coeffs[self.index.position(m.as_slice())];
                if negative {
                    -c
                } else {
                    c.clone()
                }
            }
        }
    }

    /// `self += coeff · b_{i1} ∧ …`, indices in any order.
    pub fn add_term(&mut self, indices: &[usize], coeff: &Rational) {
        assert_eq!(indices.len(), self.grade(), "monomial grade mismatch");
        if coeff.is_zero() {
            return;
        }
        if let Some((m, negative)) = Monomial::normalize(indices) {
            let slot = &mut self.coeffs[self.index.position(m.as_slice())];
            if negative {
                *slot -= coeff;
            } else {
                *slot += coeff;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Nonzero terms in flat order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(pos, c)| (self.index.monomial(pos), c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn check_same_space(&self, other: &ExtVector) -> Result<()> {
        if self.index != other.index {
            return Err(Error::DimensionMismatch(format!(
                "Λ^{} of dim {} versus Λ^{} of dim {}",
                self.grade(),
                self.dim(),
                other.grade(),
                other.dim()
            )));
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &ExtVector) -> Result<()> {
        self.check_same_space(other)?;
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &ExtVector, s: &Rational) -> Result<()> {
        self.check_same_space(other)?;
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_product(b, s);
        }
        Ok(())
    }

    pub fn sub(&self, other: &ExtVector) -> Result<ExtVector> {
        self.check_same_space(other)?;
        Ok(ExtVector {
            index: self.index,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn add(&self, other: &ExtVector) -> Result<ExtVector> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> ExtVector {
        ExtVector {
            index: self.index,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Keeps only the coefficients whose monomial satisfies `keep`.
    pub fn filtered(&self, keep: impl Fn(&[usize]) -> bool) -> ExtVector {
        let mut out = ExtVector::zero(self.dim(), self.grade());
        for (pos, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() && keep(self.index.monomial(pos).as_slice()) {
                out.coeffs[pos] = c.clone();
            }
        }
        out
    }
}

impl fmt::Debug for ExtVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(m, c)| format!("{c}·{:?}", m.as_slice()))
            .collect();
        if terms.is_empty() {
            write!(f, "0 (Λ^{})", self.grade())
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Wedge product of grades 1∧1, 1∧2 or 2∧1.
pub fn wedge(x: &ExtVector, y: &ExtVector) -> Result<ExtVector> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(format!(
            "wedge of vectors over spaces of dimension {} and {}",
            x.dim(),
            y.dim()
        )));
    }
    let grade = x.grade() + y.grade();
    if grade > 3 || x.grade() > 2 || y.grade() > 2 {
        return Err(Error::UnsupportedGrade(x.grade(), y.grade()));
    }
    let mut out = ExtVector::zero(x.dim(), grade);
    let mut buf = [0usize; 3];
    for (mx, cx) in x.terms() {
        for (my, cy) in y.terms() {
            let a = mx.as_slice();
            let b = my.as_slice();
            buf[..a.len()].copy_from_slice(a);
            buf[a.len()..grade].copy_from_slice(b);
            out.add_term(&buf[..grade], &(cx * cy));
        }
    }
    Ok(out)
}

/// `x ∧ b_j` for a single basis vector, the workhorse of the axiom checks.
pub(crate) fn wedge_basis_right(x: &ExtVector, j: usize, out: &mut ExtVector, scale: &Rational) {
    let k = x.grade();
    let mut buf = [0usize; 3];
    for (m, c) in x.terms() {
        buf[..k].copy_from_slice(m.as_slice());
        buf[k] = j;
        out.add_term(&buf[..=k], &(c * scale));
    }
}

/// Which graded piece of `Λ²(W ⊕ z)` a flat position belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lambda2Component {
    Lambda2W,
    WWedgeZ,
    Lambda2Z,
}

/// Partition of the flat `Λ²n` basis into `Λ²W`, `W∧z` and `Λ²z` positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMasks {
    pub lambda2_w: Vec<usize>,
    pub w_wedge_z: Vec<usize>,
    pub lambda2_z: Vec<usize>,
}

impl GradedMasks {
    pub fn sizes(&self) -> (usize, usize, usize) {
        (
            self.lambda2_w.len(),
            self.w_wedge_z.len(),
            self.lambda2_z.len(),
        )
    }
}

pub fn component_of(dim_w: usize, p: usize, q: usize) -> Lambda2Component {
    match (p < dim_w, q < dim_w) {
        (true, true) => Lambda2Component::Lambda2W,
        (false, false) => Lambda2Component::Lambda2Z,
        _ => Lambda2Component::WWedgeZ,
    }
}

pub fn graded_projectors(a: &TwoStepAlgebra) -> GradedMasks {
    let idx = ExteriorIndex::new(a.dim(), 2);
    let mut masks = GradedMasks {
        lambda2_w: Vec::new(),
        w_wedge_z: Vec::new(),
        lambda2_z: Vec::new(),
    };
    for (pos, m) in idx.monomials().enumerate() {
        let [p, q] = *m.as_slice() else {
            unreachable!()
        };
        match component_of(a.dim_w(), p, q) {
            Lambda2Component::Lambda2W => masks.lambda2_w.push(pos),
            Lambda2Component::WWedgeZ => masks.w_wedge_z.push(pos),
            Lambda2Component::Lambda2Z => masks.lambda2_z.push(pos),
        }
    }
    masks
}

/// `ad_x ω` for `ω ∈ Λ²n`, extending `ad_x` as a derivation:
/// `ad_x(b_p ∧ b_q) = [x, b_p] ∧ b_q + b_p ∧ [x, b_q]`.
pub fn ad_on_ext(a: &TwoStepAlgebra, x: &Element, omega: &ExtVector) -> Result<ExtVector> {
    a.check_element(x)?;
    if omega.grade() != 2 || omega.dim() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "ad on Λ^{} of dim {}, expected Λ^2 of dim {}",
            omega.grade(),
            omega.dim(),
            a.dim()
        )));
    }
    let mut out = ExtVector::zero(a.dim(), 2);
    // [x, b_p] as z-coefficients, for every basis index p
    let images: Vec<Vec<Rational>> = (0..a.dim())
        .map(|p| a.bracket_with_basis(&x.w, p))
        .collect();
    for (m, c) in omega.terms() {
        let [p, q] = *m.as_slice() else {
            unreachable!()
        };
        for (i, coeff) in images[p].iter().enumerate() {
            if !coeff.is_zero() {
                out.add_term(&[a.z_index(i), q], &(c * coeff));
            }
        }
        for (i, coeff) in images[q].iter().enumerate() {
            if !coeff.is_zero() {
                out.add_term(&[p, a.z_index(i)], &(c * coeff));
            }
        }
    }
    Ok(out)
}

/// One signed term of a serialized exterior vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub basis: Vec<String>,
    pub coeff: Rational,
}

/// Nonzero terms in flat order, basis tuples sorted.
pub fn to_terms(a: &TwoStepAlgebra, v: &ExtVector) -> Vec<Term> {
    v.terms()
        .map(|(m, c)| Term {
            basis: m.as_slice().iter().map(|&b| a.label(b)).collect(),
            coeff: c.clone(),
        })
        .collect()
}

/// Inverse of [`to_terms`]. Tuples may be unsorted (sign applied); repeated labels and
/// duplicate terms are schema errors.
pub fn from_terms(a: &TwoStepAlgebra, grade: usize, terms: &[Term]) -> Result<ExtVector> {
    let mut v = ExtVector::zero(a.dim(), grade);
    let mut seen = std::collections::BTreeSet::new();
    for t in terms {
        if t.basis.len() != grade {
            return Err(Error::Schema(format!(
                "term {:?} has grade {}, expected {grade}",
                t.basis,
                t.basis.len()
            )));
        }
        let idx: Vec<usize> = t
            .basis
            .iter()
            .map(|l| {
                a.index_of_label(l)
                    .ok_or_else(|| Error::Schema(format!("unknown basis label {l:?}")))
            })
            .collect::<Result<_>>()?;
        let Some((m, _)) = Monomial::normalize(&idx) else {
            return Err(Error::Schema(format!(
                "repeated basis label in {:?}",
                t.basis
            )));
        };
        if !seen.insert(m) {
            return Err(Error::Schema(format!("duplicate term {:?}", t.basis)));
        }
        v.add_term(&idx, &t.coeff);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn ranks_round_trip() {
        for dim in 0..9 {
            for grade in 1..=3 {
                let idx = ExteriorIndex::new(dim, grade);
                let mut prev: Option<Monomial> = None;
                for pos in 0..idx.len() {
                    let m = idx.monomial(pos);
                    assert_eq!(idx.position(m.as_slice()), pos);
                    if let Some(p) = prev {
                        assert!(p < m, "lexicographic order");
                    }
                    prev = Some(m);
                }
            }
        }
        assert_eq!(ExteriorIndex::new(21, 3).len(), 1330);
    }

    #[test]
    fn wedge_alternates() {
        let e1 = ExtVector::basis(3, &[0]);
        let e2 = ExtVector::basis(3, &[1]);
        let e3 = ExtVector::basis(3, &[2]);
        assert!(wedge(&e1, &e1).unwrap().is_zero());
        let a = wedge(&e2, &e1).unwrap();
        let b = wedge(&e1, &e2).unwrap();
        assert_eq!(a, b.scale(&q(-1)));
        let t = wedge(&b, &e3).unwrap();
        assert_eq!(t.coefficient(&[0, 1, 2]), q(1));
        assert_eq!(t.coefficient(&[2, 1, 0]), q(-1));
    }

    #[test]
    fn wedge_rejects_high_grades() {
        let b = ExtVector::basis(4, &[0, 1]);
        assert!(matches!(wedge(&b, &b), Err(Error::UnsupportedGrade(2, 2))));
        let e = ExtVector::basis(5, &[0]);
        assert!(wedge(&b, &e).is_err());
    }

    #[test]
    fn projector_sizes() {
        let h3 = TwoStepAlgebra::from_graph(&Graph::single_edge());
        assert_eq!(graded_projectors(&h3).sizes(), (1, 2, 0));
        let k3 = TwoStepAlgebra::from_graph(&Graph::complete(3));
        assert_eq!(graded_projectors(&k3).sizes(), (3, 9, 3));
        let k4 = TwoStepAlgebra::from_graph(&Graph::complete(4));
        assert_eq!(graded_projectors(&k4).sizes(), (6, 24, 15));
    }

    #[test]
    fn ad_examples() {
        // h3: x = v1, y = v2, z = a1_2
        let h3 = TwoStepAlgebra::from_graph(&Graph::single_edge());
        let x = Element::basis(&h3, 0);
        let xy = ExtVector::basis(3, &[0, 1]);
        assert_eq!(
            ad_on_ext(&h3, &x, &xy).unwrap(),
            ExtVector::basis(3, &[0, 2])
        );

        // K3: basis v1 v2 v3 | a1_2 a1_3 a2_3 = indices 3 4 5
        let k3 = TwoStepAlgebra::from_graph(&Graph::complete(3));
        let e3 = Element::basis(&k3, 2);
        let w = ExtVector::basis(6, &[0, 3]);
        // [e3, e1] = -a1_3, so ad_{e3}(e1 ∧ a1_2) = -a1_3 ∧ a1_2 = a1_2 ∧ a1_3
        assert_eq!(
            ad_on_ext(&k3, &e3, &w).unwrap(),
            ExtVector::basis(6, &[3, 4])
        );

        // central directions act by zero
        for i in 0..3 {
            let zi = Element::basis(&k3, 3 + i);
            assert!(ad_on_ext(&k3, &zi, &w).unwrap().is_zero());
        }
    }

    #[test]
    fn lambda2z_is_killed() {
        let k3 = TwoStepAlgebra::from_graph(&Graph::complete(3));
        let zz = ExtVector::basis(6, &[3, 5]);
        for b in 0..6 {
            let x = Element::basis(&k3, b);
            assert!(ad_on_ext(&k3, &x, &zz).unwrap().is_zero());
        }
    }

    #[test]
    fn terms_round_trip_and_errors() {
        let k3 = TwoStepAlgebra::from_graph(&Graph::complete(3));
        let mut v = ExtVector::zero(6, 2);
        v.add_term(&[0, 3], &Rational::new(3, 4));
        v.add_term(&[5, 4], &q(2));
        let terms = to_terms(&k3, &v);
        assert_eq!(terms[0].basis, vec!["v1", "a1_2"]);
        assert_eq!(terms[1].basis, vec!["a1_3", "a2_3"]);
        assert_eq!(terms[1].coeff, q(-2));
        assert_eq!(from_terms(&k3, 2, &terms).unwrap(), v);

        let swapped = vec![Term {
            basis: vec!["a1_2".into(), "v1".into()],
            coeff: q(1),
        }];
        assert_eq!(
            from_terms(&k3, 2, &swapped).unwrap().coefficient(&[0, 3]),
            q(-1)
        );
        let repeated = vec![Term {
            basis: vec!["v1".into(), "v1".into()],
            coeff: q(1),
        }];
        assert!(from_terms(&k3, 2, &repeated).is_err());
        let unknown = vec![Term {
            basis: vec!["v1".into(), "v9".into()],
            coeff: q(1),
        }];
        assert!(from_terms(&k3, 2, &unknown).is_err());
    }
}
