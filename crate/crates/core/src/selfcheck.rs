//! Named invariants of the octonion kernel, checked on seeded random inputs.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, Octonion};
use crate::classifier::basic_evaluations;
use crate::corpus::{named_multilinear, random_multilinear};
use crate::identity::{certify, Domain, Target, Vanishing};
use crate::malcev::malcev_identity_residual;
use crate::orbit::map_pure;
use crate::polynomial::{parse, ProductKind};
use crate::sampling::{random_rational_octonion, random_rational_pure, random_real_octonion, random_real_pure, rng_for, STREAM_SELFCHECK};
use crate::scalar::{Rational, Scalar};

/// Residual bound for floating-point properties.
pub const REAL_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    /// Largest residual, for properties checked in floating point.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfCheckReport {
    pub seed: u64,
    pub samples: usize,
    pub passed: bool,
    pub properties: Vec<PropertyResult>,
}

fn exact(name: &'static str, checked: usize, failure: Option<String>) -> PropertyResult {
    PropertyResult { name, passed: failure.is_none(), checked, max_residual: None, failure }
}

/// Index of the first sample where `holds` fails, checked in parallel.
fn first_failure(samples: usize, holds: impl Fn(usize) -> bool + Sync) -> Option<String> {
    (0..samples).into_par_iter().find_first(|&i| !holds(i)).map(|i| format!("sample {i}"))
}

fn rational_triple(seed: u64, property: u64, i: usize) -> [Octonion<Rational>; 3] {
    let mut rng = rng_for(seed ^ (property << 48), STREAM_SELFCHECK, i as u64);
    std::array::from_fn(|_| random_rational_octonion(&mut rng))
}

fn pure_triple(seed: u64, property: u64, i: usize) -> [Octonion<Rational>; 3] {
    let mut rng = rng_for(seed ^ (property << 48), STREAM_SELFCHECK, i as u64);
    std::array::from_fn(|_| random_rational_pure(&mut rng))
}

pub fn run_selfcheck(seed: u64, samples: usize) -> SelfCheckReport {
    let a = Algebra::standard_rational();
    let ra = Algebra::standard_real(1e-9);
    let mut properties = Vec::new();

    properties.push(exact(
        "alternative laws [x,x,y] = [x,y,x] = [y,x,x] = 0",
        samples,
        first_failure(samples, |i| {
            let [x, y, _] = rational_triple(seed, 1, i);
            a.associator(&x, &x, &y).is_exact_zero()
                && a.associator(&x, &y, &x).is_exact_zero()
                && a.associator(&y, &x, &x).is_exact_zero()
        }),
    ));
    properties.push(exact(
        "norm is multiplicative",
        samples,
        first_failure(samples, |i| {
            let [x, y, _] = rational_triple(seed, 2, i);
            a.norm(&a.multiply(&x, &y)) == a.norm(&x).mul_ref(&a.norm(&y))
        }),
    ));
    properties.push(exact(
        "conjugation reverses products",
        samples,
        first_failure(samples, |i| {
            let [x, y, _] = rational_triple(seed, 3, i);
            a.conjugate(&a.multiply(&x, &y)) == a.multiply(&a.conjugate(&y), &a.conjugate(&x))
        }),
    ));
    properties.push(exact(
        "trace is symmetric: tr(xy) = tr(yx)",
        samples,
        first_failure(samples, |i| {
            let [x, y, _] = rational_triple(seed, 4, i);
            a.trace(&a.multiply(&x, &y)) == a.trace(&a.multiply(&y, &x))
        }),
    ));
    properties.push(exact(
        "pure squares are scalar: v² = -‖v‖",
        samples,
        first_failure(samples, |i| {
            let [v, _, _] = pure_triple(seed, 5, i);
            a.multiply(&v, &v) == Octonion::scalar(a.norm(&v).neg_ref())
        }),
    ));
    properties.push(exact(
        "characteristic polynomial annihilates x",
        samples,
        first_failure(samples, |i| {
            let [x, _, _] = rational_triple(seed, 6, i);
            a.char_poly_residual(&x).is_exact_zero()
        }),
    ));
    properties.push(exact(
        "structure table matches recursive doubling",
        64,
        first_failure(64, |k| {
            let (x, y) = (Octonion::basis(k / 8), Octonion::basis(k % 8));
            a.multiply(&x, &y) == a.multiply_by_doubling(&x, &y)
        }),
    ));
    properties.push(exact(
        "Malcev identity on pure octonions",
        samples,
        first_failure(samples, |i| {
            let [x, y, z] = pure_triple(seed, 8, i);
            malcev_identity_residual(&a, &x, &y, &z).map(|r| r.is_exact_zero()).unwrap_or(false)
        }),
    ));

    let mut corpus: Vec<(String, crate::Polynomial)> =
        named_multilinear().into_iter().map(|(n, p)| (n.to_string(), p)).collect();
    for k in 0..4 {
        let mut rng = rng_for(seed, STREAM_SELFCHECK, 1000 + k);
        corpus.push((format!("random #{k}"), random_multilinear(&mut rng, 1 + k as usize % 3, 4)));
    }
    let mut checked = 0;
    let mut failure = None;
    for (name, p) in &corpus {
        let evals = basic_evaluations(&a, p).expect("corpus is multilinear");
        for ev in evals {
            checked += 1;
            if let Err(e) = ev {
                failure = Some(format!("{name}: {e}"));
                break;
            }
        }
        if failure.is_some() {
            break;
        }
    }
    properties.push(exact("basic evaluations are single basis multiples", checked, failure));

    let moufang = parse("((x1*x2)*x1)*x3 - x1*(x2*(x1*x3))").expect("valid literal");
    let failure = match certify(&a, &moufang, ProductKind::Octonion, Domain::Octonions, Target::All) {
        Vanishing::Certified(_) => None,
        Vanishing::Witness { value, .. } => Some(format!("nonzero value {value}")),
    };
    properties.push(exact("left Moufang identity (certified)", 1, failure));

    let pairs = samples.clamp(1, 50);
    let residuals: Vec<std::result::Result<f64, String>> = (0..pairs)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed ^ (11 << 48), STREAM_SELFCHECK, i as u64);
            let (x, y) = (random_real_pure(&mut rng), random_real_pure(&mut rng));
            let m = map_pure(&ra, &x, &y, seed.wrapping_add(i as u64)).map_err(|e| format!("pair {i}: {e}"))?;
            let pts: Vec<Octonion<f64>> = (0..10).map(|_| random_real_octonion(&mut rng)).collect();
            let mult = m.phi.multiplicativity_residual(&ra, pts.iter().zip(pts.iter().rev()));
            let norm = pts.iter().map(|p| (ra.norm(&m.phi.apply(p)) - ra.norm(p)).abs()).fold(0.0, f64::max);
            Ok(m.residual.max(mult).max(norm))
        })
        .collect();
    let max_residual = residuals.iter().filter_map(|r| r.as_ref().ok()).copied().fold(0.0, f64::max);
    let failure = residuals
        .iter()
        .find_map(|r| r.as_ref().err().cloned())
        .or_else(|| (max_residual > REAL_TOLERANCE).then(|| format!("residual {max_residual:e}")));
    properties.push(PropertyResult {
        name: "automorphisms map x to y and preserve products and norms",
        passed: failure.is_none(),
        checked: pairs,
        max_residual: Some(max_residual),
        failure,
    });

    let passed = properties.iter().all(|p| p.passed);
    SelfCheckReport { seed, samples, passed, properties }
}
