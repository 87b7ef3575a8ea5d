#![allow(dead_code)]

use bialg::classify::{lambda_system, DiagonalFamily};
use bialg::cobracket::{Cobracket, ConstructionData};
use bialg::exterior::{wedge, ExtVector};
use bialg::{Graph, Rational, TwoStepAlgebra};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Rational {
    Rational::from(n)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

/// Random element of `Λ²z` with small entries, as a `Λ²n` vector.
pub fn random_lambda2z(a: &TwoStepAlgebra, rng: &mut ChaCha8Rng) -> ExtVector {
    let mut v = ExtVector::zero(a.dim(), 2);
    for p in 0..a.dim_z() {
        for r in p + 1..a.dim_z() {
            if rng.gen_bool(0.5) {
                v.add_term(&[a.z_index(p), a.z_index(r)], &small_rational(rng));
            }
        }
    }
    v
}

pub fn random_central(a: &TwoStepAlgebra, rng: &mut ChaCha8Rng) -> ExtVector {
    let mut v = ExtVector::zero(a.dim(), 1);
    for i in 0..a.dim_z() {
        v.add_term(&[a.z_index(i)], &small_rational(rng));
    }
    v
}

/// How the `ω` part of a corpus instance is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaMode {
    Zero,
    Random,
    /// `ω_v = A_v ∧ u_v`, which always satisfies `ω_v ∧ A_v = 0`.
    Aligned,
}

/// Diagonal family with `λ` a random combination of the λ-system solutions (or, when
/// `off_system`, fully random) and `ω` chosen per `mode`.
pub fn diagonal_instance(
    g: &Graph,
    mode: OmegaMode,
    off_system: bool,
    rng: &mut ChaCha8Rng,
) -> DiagonalFamily {
    let space = lambda_system(g);
    let lambda = if off_system {
        (0..space.ambient).map(|_| small_rational(rng)).collect()
    } else {
        let coeffs: Vec<Rational> = (0..space.dim()).map(|_| small_rational(rng)).collect();
        space.combine(&coeffs)
    };
    let a = TwoStepAlgebra::from_graph(g);
    let zero = DiagonalFamily::new(
        g,
        lambda.clone(),
        vec![ExtVector::zero(a.dim(), 2); g.vertex_count()],
    )
    .expect("valid family");
    let omega = (0..g.vertex_count())
        .map(|v| match mode {
            OmegaMode::Zero => ExtVector::zero(a.dim(), 2),
            OmegaMode::Random => random_lambda2z(&a, rng),
            OmegaMode::Aligned => {
                wedge(&zero.a_vector(v), &random_central(&a, rng)).expect("grades 1 and 1")
            }
        })
        .collect();
    DiagonalFamily::new(g, lambda, omega).expect("valid family")
}

pub fn corpus_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("K3", Graph::complete(3)),
        ("K4", Graph::complete(4)),
        ("C4", Graph::cycle(4)),
        ("C5", Graph::cycle(5)),
    ]
}

/// Construction data on K3, K4, C4, C5: 16 instances per graph mixing ω modes and on- and
/// off-system λ.
pub fn construction_corpus(
    rng: &mut ChaCha8Rng,
) -> Vec<(String, TwoStepAlgebra, ConstructionData)> {
    let modes = [OmegaMode::Zero, OmegaMode::Random, OmegaMode::Aligned];
    let mut out = Vec::new();
    for (name, g) in corpus_graphs() {
        for s in 0..16 {
            let off_system = s >= 12;
            let fam = diagonal_instance(&g, modes[s % 3], off_system, rng);
            out.push((
                format!("{name}#{s}"),
                fam.algebra().clone(),
                fam.construction_data(),
            ));
        }
    }
    out
}

/// `h₃` with `δ(z) = x∧z`, `δ(x) = 0`, `δ(y) = t·x∧y`.
pub fn heisenberg_fixture(t: Rational) -> Cobracket {
    let h3 = TwoStepAlgebra::heisenberg(1).expect("m = 1");
    let mut cols = vec![ExtVector::zero(3, 2); 3];
    cols[2].add_term(&[0, 2], &q(1));
    cols[1].add_term(&[0, 1], &t);
    Cobracket::new(h3, cols).expect("three columns")
}
