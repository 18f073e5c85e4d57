//! The Malcev algebra of pure octonions under `v ∘ w = vw − wv`.
//!
//! Any polynomial evaluated with this product has image `{0}` or all of V over
//! the reals: the squared norm of the value is a polynomial in the coordinates,
//! so along a ray it sweeps every nonnegative value, and automorphisms act
//! transitively on pure octonions of equal norm.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, Octonion};
use crate::classifier::Verdict;
use crate::error::{Error, Result};
use crate::identity::{certify, Domain, GridCertificate, Target, Vanishing};
use crate::orbit;
use crate::polynomial::{Polynomial, ProductKind};
use crate::sampling::{derive_seed, random_rational_pure, random_real_pure, rng_for, STREAM_MALCEV, STREAM_MALCEV_RAY};
use crate::scalar::{Rational, Scalar};

/// Rays drawn before giving up.
pub const MAX_RAYS: usize = 16;
/// Doublings of the upper end of the bisection interval.
pub const MAX_DOUBLINGS: usize = 60;

fn require_pure<S: Scalar>(alg: &Algebra<S>, xs: &[&Octonion<S>]) -> Result<()> {
    if xs.iter().all(|x| alg.is_pure(x)) {
        Ok(())
    } else {
        Err(Error::NotPure)
    }
}

pub fn malcev_product<S: Scalar>(alg: &Algebra<S>, v: &Octonion<S>, w: &Octonion<S>) -> Result<Octonion<S>> {
    require_pure(alg, &[v, w])?;
    Ok(alg.commutator(v, w))
}

/// `(xy)(xz) − ((xy)z)x − ((yz)x)x − ((zx)x)y` under the Malcev product.
pub fn malcev_identity_residual<S: Scalar>(
    alg: &Algebra<S>,
    x: &Octonion<S>,
    y: &Octonion<S>,
    z: &Octonion<S>,
) -> Result<Octonion<S>> {
    require_pure(alg, &[x, y, z])?;
    let m = |a: &Octonion<S>, b: &Octonion<S>| alg.commutator(a, b);
    let xy = m(x, y);
    let lhs = m(&xy, &m(x, z));
    let r1 = m(&m(&xy, z), x);
    let r2 = m(&m(&m(y, z), x), x);
    let r3 = m(&m(&m(z, x), x), y);
    Ok(lhs.sub(&r1).sub(&r2).sub(&r3))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MalcevWitness {
    pub assignment: Vec<Octonion<Rational>>,
    pub value: Octonion<Rational>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MalcevClassification {
    /// `Zero` or `Pure`.
    pub verdict: Verdict,
    pub samples_checked: usize,
    pub witness: Option<MalcevWitness>,
    /// Present for `Zero`: the exact vanishing certificate.
    pub certificate: Option<GridCertificate>,
    pub statement: String,
}

/// Decides whether `p`, evaluated with the Malcev product on V, vanishes identically.
pub fn classify_malcev(alg: &Algebra<Rational>, p: &Polynomial, samples: usize, seed: u64) -> MalcevClassification {
    let m = p.num_vars();
    let hit = (0..samples).into_par_iter().find_map_first(|i| {
        let mut rng = rng_for(seed, STREAM_MALCEV, i as u64);
        let assignment: Vec<Octonion<Rational>> = (0..m).map(|_| random_rational_pure(&mut rng)).collect();
        let value = p.evaluate_unchecked(alg, &assignment, ProductKind::Malcev);
        (!value.is_exact_zero()).then_some(MalcevWitness { assignment, value })
    });
    let (witness, certificate) = match hit {
        Some(w) => (Some(w), None),
        None => match certify(alg, p, ProductKind::Malcev, Domain::Pure, Target::All) {
            Vanishing::Certified(c) => (None, Some(c)),
            Vanishing::Witness { assignment, value } => (Some(MalcevWitness { assignment, value }), None),
        },
    };
    let (verdict, statement) = match &witness {
        Some(_) if alg.is_standard() => {
            (Verdict::Pure, "image contains nonzero pure values; over the reals it is all of V".to_string())
        }
        Some(_) => (Verdict::Pure, "image contains nonzero pure values".to_string()),
        None => (Verdict::Zero, "polynomial vanishes identically on V".to_string()),
    };
    MalcevClassification { verdict, samples_checked: samples, witness, certificate, statement }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MalcevRealization {
    pub assignment: Vec<Octonion<f64>>,
    pub value: Octonion<f64>,
    /// `‖p(assignment) − target‖` (Euclidean length)
    pub residual: f64,
    /// Scaling along the ray at which the norm matches the target's.
    pub t: f64,
    pub rays: usize,
}

/// Finds pure octonions with `p(x₁, …, xₘ) = target` under the Malcev product.
pub fn realize_malcev_target(
    alg: &Algebra<f64>,
    p: &Polynomial,
    verdict: Verdict,
    target: &Octonion<f64>,
    seed: u64,
) -> Result<MalcevRealization> {
    if verdict == Verdict::Zero {
        return Err(Error::NotSurjective);
    }
    if !alg.is_standard() {
        return Err(Error::RequiresStandardParams);
    }
    require_pure(alg, &[target])?;
    let m = p.num_vars();
    let eval = |xs: &[Octonion<f64>]| {
        let mut v = p.evaluate_unchecked(alg, xs, ProductKind::Malcev);
        v.coords[0] = 0.0;
        v
    };
    if alg.is_zero_octonion(target) {
        let assignment = vec![Octonion::zero(); m];
        let value = eval(&assignment);
        let residual = value.sub(target).euclidean_len();
        return Ok(MalcevRealization { assignment, value, residual, t: 0.0, rays: 0 });
    }
    let goal = alg.norm(target);
    let accept = alg.tolerance() * target.euclidean_len().max(1.0);
    for ray in 0..MAX_RAYS {
        let mut rng = rng_for(seed, STREAM_MALCEV_RAY, ray as u64);
        let x0: Vec<Octonion<f64>> = (0..m).map(|_| random_real_pure(&mut rng)).collect();
        let along = |t: f64| -> Vec<Octonion<f64>> { x0.iter().map(|x| x.scale(&t)).collect() };
        let g = |t: f64| alg.norm(&eval(&along(t)));
        // g(0) = 0 < goal since p has no constant term
        let (mut lo, mut hi) = (0.0, 1.0);
        let mut doublings = 0;
        while g(hi) < goal && doublings < MAX_DOUBLINGS {
            lo = hi;
            hi *= 2.0;
            doublings += 1;
        }
        if g(hi) < goal {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if g(mid) < goal {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t = if (g(lo) - goal).abs() < (g(hi) - goal).abs() { lo } else { hi };
        let point = along(t);
        let v = eval(&point);
        let rotation = match orbit::map_pure(alg, &v, target, derive_seed(seed, STREAM_MALCEV_RAY, ray as u64)) {
            Ok(r) => r,
            Err(Error::ZeroInput) => continue,
            Err(e) => return Err(e),
        };
        let assignment: Vec<Octonion<f64>> = point.iter().map(|x| rotation.phi.apply(x)).collect();
        let value = eval(&assignment);
        let residual = value.sub(target).euclidean_len();
        if residual <= accept {
            return Ok(MalcevRealization { assignment, value, residual, t, rays: ray + 1 });
        }
    }
    Err(Error::DegenerateRay(MAX_RAYS))
}
