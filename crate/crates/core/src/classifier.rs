//! Image classification for multilinear polynomials.
//!
//! By multilinearity, `p` is determined by its values on tuples of basis
//! elements, and each such value is a scalar multiple of a single basis
//! element. So the image is `{0}`, `F`, `V` or `O` according to whether the
//! basic values are all zero, scalar, pure, or include both a nonzero scalar and
//! a nonzero pure value.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, Octonion};
use crate::error::{Error, Result};
use crate::linalg::RowSpace;
use crate::orbit;
use crate::polynomial::{degree_profile, Polynomial, ProductKind};
use crate::sampling::{derive_seed, random_rational_octonion, random_real_octonion, rng_for, STREAM_CONSISTENCY, STREAM_REALIZE};
use crate::scalar::{Rational, Scalar};

/// Default cap on the number of variables for a basic scan (8⁸ tuples).
pub const DEFAULT_MAX_VARS: usize = 8;
/// Draw attempts for [`realize_target`].
pub const MAX_ATTEMPTS: usize = 16;

const SCAN_CHUNK: u64 = 1 << 12;
// Real-mode threshold for "this value left F" and "β is nonzero".
const GENERIC_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Zero,
    Scalars,
    Pure,
    Full,
    Dense,
    Anomalous,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `p(e_{i₁}, …, e_{iₙ}) = coefficient · e_{basis_index}`; a zero value has basis index 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasicEvaluation {
    pub tuple: Vec<usize>,
    #[serde(rename = "coeff")]
    pub coefficient: Rational,
    #[serde(rename = "basis")]
    pub basis_index: usize,
}

impl BasicEvaluation {
    pub fn is_zero(&self) -> bool {
        self.coefficient.is_exact_zero()
    }

    pub fn is_nonzero_scalar(&self) -> bool {
        !self.is_zero() && self.basis_index == 0
    }

    pub fn is_nonzero_pure(&self) -> bool {
        !self.is_zero() && self.basis_index != 0
    }

    pub fn value(&self) -> Octonion<Rational> {
        let mut o = Octonion::zero();
        o.coords[self.basis_index] = self.coefficient.clone();
        o
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImageClass {
    pub verdict: Verdict,
    pub evidence: Vec<BasicEvaluation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    /// Whether the base field is assumed to have Property P (every norm of a
    /// pure octonion is a square), which upgrades "contains" to "equals".
    pub assume_property_p: bool,
    /// Visit all 8ⁿ tuples even after both witnesses are found.
    pub full_scan: bool,
    pub max_vars: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { assume_property_p: true, full_scan: false, max_vars: DEFAULT_MAX_VARS }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    #[serde(flatten)]
    pub class: ImageClass,
    pub tuples_scanned: u64,
    pub warnings: Vec<String>,
}

fn require_multilinear(p: &Polynomial) -> Result<()> {
    if degree_profile(p).is_multilinear {
        Ok(())
    } else {
        Err(Error::NotMultilinear)
    }
}

/// The `index`-th tuple of `0..8` of length `n` in lexicographic order.
pub fn tuple_at(index: u64, n: usize) -> Vec<usize> {
    (0..n).map(|slot| ((index >> (3 * (n - 1 - slot))) & 7) as usize).collect()
}

/// Evaluates `p` on basis elements and checks that the value is supported on at most one basis element.
pub fn basic_evaluation(alg: &Algebra<Rational>, p: &Polynomial, tuple: &[usize]) -> Result<BasicEvaluation> {
    let table = alg.table();
    let mul = |a: &(Rational, usize), b: &(Rational, usize)| {
        let entry = table.get(a.1, b.1);
        (a.0.mul_ref(&b.0).mul_ref(&entry.coeff), entry.index)
    };
    let leaves: Vec<(Rational, usize)> = tuple.iter().map(|&i| (Rational::integer(1), i)).collect();
    let mut acc: [Rational; 8] = std::array::from_fn(|_| Rational::integer(0));
    for (c, w) in p.terms() {
        let (k, idx) = w.evaluate_with(&leaves, &mul);
        acc[idx].add_assign_ref(&c.mul_ref(&k));
    }
    let support: Vec<usize> = (0..8).filter(|&i| !acc[i].is_exact_zero()).collect();
    match support.as_slice() {
        [] => Ok(BasicEvaluation { tuple: tuple.to_vec(), coefficient: Rational::integer(0), basis_index: 0 }),
        &[k] => Ok(BasicEvaluation { tuple: tuple.to_vec(), coefficient: acc[k].clone(), basis_index: k }),
        many => Err(Error::Lemma3Violation { tuple: tuple.to_vec(), nonzero: many.len() }),
    }
}

/// All 8ⁿ basic evaluations in lexicographic tuple order.
pub fn basic_evaluations<'a>(
    alg: &'a Algebra<Rational>,
    p: &'a Polynomial,
) -> Result<impl Iterator<Item = Result<BasicEvaluation>> + 'a> {
    require_multilinear(p)?;
    let n = p.num_vars();
    Ok((0..8u64.pow(n as u32)).map(move |t| basic_evaluation(alg, p, &tuple_at(t, n))))
}

/// Maps which kinds of nonzero basic values occur to a verdict.
pub fn verdict_from_witnesses(scalar: bool, pure: bool) -> Verdict {
    match (scalar, pure) {
        (false, false) => Verdict::Zero,
        (true, false) => Verdict::Scalars,
        (false, true) => Verdict::Pure,
        (true, true) => Verdict::Full,
    }
}

/// Classifies the image of a multilinear polynomial on O.
///
/// The scan runs in parallel chunks but is reduced in tuple order, so the
/// witnesses and the reported count are the lexicographically first ones.
pub fn classify_multilinear(alg: &Algebra<Rational>, p: &Polynomial, opts: ScanOptions) -> Result<Classification> {
    require_multilinear(p)?;
    let n = p.num_vars();
    if n > opts.max_vars {
        return Err(Error::BudgetExceeded { vars: n, max: opts.max_vars });
    }
    let total = 8u64.pow(n as u32);
    let mut scalar: Option<BasicEvaluation> = None;
    let mut pure: Option<BasicEvaluation> = None;
    let mut scanned = 0;
    'scan: for start in (0..total).step_by(SCAN_CHUNK as usize) {
        let end = (start + SCAN_CHUNK).min(total);
        let chunk: Vec<Result<BasicEvaluation>> =
            (start..end).into_par_iter().map(|t| basic_evaluation(alg, p, &tuple_at(t, n))).collect();
        for ev in chunk {
            let ev = ev?;
            scanned += 1;
            if scalar.is_none() && ev.is_nonzero_scalar() {
                scalar = Some(ev);
            } else if pure.is_none() && ev.is_nonzero_pure() {
                pure = Some(ev);
            }
            if scalar.is_some() && pure.is_some() && !opts.full_scan {
                break 'scan;
            }
        }
    }
    let verdict = verdict_from_witnesses(scalar.is_some(), pure.is_some());
    let mut warnings = Vec::new();
    if !opts.assume_property_p {
        match verdict {
            Verdict::Pure => warnings.push(
                "image contains nonzero pure values; equality with V is certified only under Property P".to_string(),
            ),
            Verdict::Full => warnings
                .push("image spans beyond F; equality with O is certified only under Property P".to_string()),
            _ => {}
        }
    }
    let evidence = scalar.into_iter().chain(pure).collect();
    Ok(Classification { class: ImageClass { verdict, evidence }, tuples_scanned: scanned, warnings })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Consistency {
    pub samples_checked: usize,
    /// Dimension of the affine span of the observed values.
    pub span_dimension: usize,
}

/// Checks a verdict against values of `p` at seeded random rational points.
pub fn sample_consistency(
    alg: &Algebra<Rational>,
    p: &Polynomial,
    class: &ImageClass,
    samples: usize,
    seed: u64,
) -> Result<Consistency> {
    let n = p.num_vars();
    let draws: Vec<(Vec<Octonion<Rational>>, Octonion<Rational>)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, STREAM_CONSISTENCY, i as u64);
            let point: Vec<Octonion<Rational>> = (0..n).map(|_| random_rational_octonion(&mut rng)).collect();
            let value = p.evaluate_unchecked(alg, &point, ProductKind::Octonion);
            (point, value)
        })
        .collect();
    let mut span = RowSpace::new();
    let origin = draws.first().map(|(_, v)| v.clone());
    for (i, (point, value)) in draws.iter().enumerate() {
        let contained = match class.verdict {
            Verdict::Zero => value.is_exact_zero(),
            Verdict::Scalars => value.pure_part().is_exact_zero(),
            Verdict::Pure => value.coords[0].is_exact_zero(),
            _ => true,
        };
        if !contained {
            let args: Vec<String> = point.iter().map(ToString::to_string).collect();
            return Err(Error::ConsistencyViolation {
                verdict: class.verdict.to_string(),
                detail: format!("sample {i}: p({}) = {value}", args.join(", ")),
            });
        }
        if span.rank() < 8 {
            if let Some(o) = &origin {
                span.insert(&value.sub(o).coords);
            }
        }
    }
    Ok(Consistency { samples_checked: samples, span_dimension: span.rank() })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Realization {
    pub assignment: Vec<Octonion<f64>>,
    pub value: Octonion<f64>,
    /// `‖p(assignment) − q‖` (Euclidean length)
    pub residual: f64,
    /// Slot at which the staged substitution first produced a non-scalar value.
    pub transition_slot: usize,
    pub attempts: usize,
}

/// Finds octonions with `p(o₁, …, oₙ) = q` for a polynomial whose image is all of O.
///
/// Starting from a basic tuple with scalar value, slots are replaced by random
/// octonions one at a time until the value leaves F at some slot `i`. Removing
/// the scalar part there isolates a pure value `v`; for `q = b + u` an
/// automorphism taking `v` to a multiple of `u` then places `b + u` in the image.
pub fn realize_target(
    alg: &Algebra<f64>,
    p: &Polynomial,
    class: &ImageClass,
    q: &Octonion<f64>,
    seed: u64,
) -> Result<Realization> {
    let witness = match class.verdict {
        Verdict::Full => class.evidence.iter().find(|e| e.is_nonzero_scalar()),
        _ => None,
    };
    let Some(witness) = witness else {
        return Err(Error::NotFullImage(class.verdict.to_string()));
    };
    if !alg.is_standard() {
        return Err(Error::RequiresStandardParams);
    }
    let basis: Vec<Octonion<f64>> = witness.tuple.iter().map(|&i| Octonion::basis(i)).collect();
    let eval = |xs: &[Octonion<f64>]| p.evaluate(alg, xs, ProductKind::Octonion);
    let (b, u) = q.decompose();
    let accept = alg.tolerance() * q.euclidean_len().max(1.0);

    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = rng_for(seed, STREAM_REALIZE, attempt as u64);
        let mut o = basis.clone();
        let mut transition = None;
        for i in 0..o.len() {
            let beta = eval(&o)?.coords[0];
            let hat = random_real_octonion(&mut rng);
            let mut trial = o.clone();
            trial[i] = hat.clone();
            let value = eval(&trial)?;
            if value.pure_part().euclidean_len() > GENERIC_EPS {
                transition = Some((i, beta, hat, value));
                break;
            }
            o = trial;
        }
        let Some((i, beta, hat, value)) = transition else { continue };
        if beta.abs() <= GENERIC_EPS {
            continue;
        }
        // o[i] is still the basis element from the witness tuple
        let tilde = hat.sub(&o[i].scale(&(value.coords[0] / beta)));
        let scalar_slot = o[i].scale(&(b / beta));
        let assignment = if u.is_zero_within(alg.tolerance()) {
            let mut a = o.clone();
            a[i] = scalar_slot;
            a
        } else {
            let mut isolated = o.clone();
            isolated[i] = tilde.clone();
            let mut v = eval(&isolated)?;
            v.coords[0] = 0.0;
            let m = match orbit::map_pure(alg, &v, &u, derive_seed(seed, STREAM_REALIZE, attempt as u64)) {
                Ok(m) => m,
                Err(Error::ZeroInput) => continue,
                Err(e) => return Err(e),
            };
            let mut a: Vec<Octonion<f64>> = o.iter().map(|x| m.phi.apply(x)).collect();
            a[i] = m.phi.apply(&scalar_slot.add(&tilde.scale(&m.c)));
            a
        };
        let value = eval(&assignment)?;
        let residual = value.sub(q).euclidean_len();
        if residual <= accept {
            return Ok(Realization { assignment, value, residual, transition_slot: i, attempts: attempt + 1 });
        }
    }
    Err(Error::DegenerateDraw(MAX_ATTEMPTS))
}
