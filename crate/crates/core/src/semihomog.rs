//! Semihomogeneous polynomials through the ratio `f = ‖v‖/a²`, where `a + v`
//! is the value of `p`.
//!
//! `f` is constant on automorphism orbits and invariant under the weighted
//! scaling `xᵢ ↦ t^{wᵢ}xᵢ`. If it takes two values the image is Zariski dense;
//! `f ≡ 0` means the image is F and `f ≡ ∞` means it is V. A constant finite
//! nonzero `f` cannot occur over a division algebra and is reported as `Anomalous`.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{Algebra, Octonion};
use crate::classifier::{ImageClass, Verdict};
use crate::error::{Error, Result};
use crate::identity::{certify, Domain, GridCertificate, Target, Vanishing};
use crate::polynomial::{degree_profile, Polynomial, ProductKind};
use crate::sampling::{derive_seed, random_rational_octonion, rng_for, STREAM_RATIO, STREAM_SEMIHOMOG};
use crate::scalar::{Rational, Scalar};

/// Sample batches drawn before accepting a mostly undefined batch.
pub const MAX_BATCHES: usize = 4;

/// A value of `f`: in F, `∞` (a = 0, ‖v‖ ≠ 0), or undefined (0/0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ratio {
    Finite(Rational),
    Infinite,
    Undefined,
}

impl Ratio {
    pub fn is_defined(&self) -> bool {
        !matches!(self, Ratio::Undefined)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ratio::Finite(r) => write!(f, "{r}"),
            Ratio::Infinite => f.write_str("inf"),
            Ratio::Undefined => f.write_str("undefined"),
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioSample {
    pub point: Vec<Octonion<Rational>>,
    pub a: Rational,
    pub v_norm: Rational,
    pub f: Ratio,
}

fn require_semihomogeneous(p: &Polynomial) -> Result<()> {
    if degree_profile(p).is_semihomogeneous() {
        Ok(())
    } else {
        Err(Error::NotSemihomogeneous)
    }
}

fn ratio_at(alg: &Algebra<Rational>, p: &Polynomial, point: Vec<Octonion<Rational>>) -> RatioSample {
    let (a, v) = p.evaluate_unchecked(alg, &point, ProductKind::Octonion).decompose();
    let v_norm = alg.norm(&v);
    let f = match (a.is_exact_zero(), v_norm.is_exact_zero()) {
        (true, true) => Ratio::Undefined,
        (true, false) => Ratio::Infinite,
        (false, _) => Ratio::Finite(v_norm.clone() / a.mul_ref(&a)),
    };
    RatioSample { point, a, v_norm, f }
}

pub fn ratio_function(alg: &Algebra<Rational>, p: &Polynomial, point: &[Octonion<Rational>]) -> Result<RatioSample> {
    require_semihomogeneous(p)?;
    if point.len() != p.num_vars() {
        return Err(Error::ArityMismatch { expected: p.num_vars(), got: point.len() });
    }
    Ok(ratio_at(alg, p, point.to_vec()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SemihomogClassification {
    #[serde(flatten)]
    pub class: ImageClass,
    /// Sample points backing the verdict: two with distinct `f` for `Dense`,
    /// the constant-valued ones for `Anomalous`, one representative otherwise.
    pub ratio_witnesses: Vec<RatioSample>,
    /// The constant value of `f` when one was observed.
    pub constant: Option<Ratio>,
    pub certificate: Option<GridCertificate>,
    pub samples_checked: usize,
    pub undefined: usize,
    pub warnings: Vec<String>,
}

fn sample_batch(alg: &Algebra<Rational>, p: &Polynomial, samples: usize, seed: u64) -> Vec<RatioSample> {
    let m = p.num_vars();
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, STREAM_SEMIHOMOG, i as u64);
            ratio_at(alg, p, (0..m).map(|_| random_rational_octonion(&mut rng)).collect())
        })
        .collect()
}

/// Classifies the image of a semihomogeneous polynomial as `Zero`, `Scalars`, `Pure` or `Dense`.
pub fn classify_semihomogeneous(
    alg: &Algebra<Rational>,
    p: &Polynomial,
    samples: usize,
    seed: u64,
) -> Result<SemihomogClassification> {
    require_semihomogeneous(p)?;
    let mut warnings = Vec::new();
    let mut drawn = Vec::new();
    for batch in 0..MAX_BATCHES {
        let batch_seed = if batch == 0 { seed } else { derive_seed(seed, STREAM_SEMIHOMOG, batch as u64) };
        drawn = sample_batch(alg, p, samples, batch_seed);
        let undefined = drawn.iter().filter(|s| !s.f.is_defined()).count();
        if samples == 0 || undefined * 10 <= samples * 9 || undefined == samples {
            break;
        }
        warnings.push(format!("batch {batch}: {undefined} of {samples} samples undefined (0/0); redrawn"));
    }
    let undefined = drawn.iter().filter(|s| !s.f.is_defined()).count();
    let mut defined: Vec<RatioSample> = drawn.into_iter().filter(|s| s.f.is_defined()).collect();
    let report = |verdict, ratio_witnesses, constant, certificate, warnings| SemihomogClassification {
        class: ImageClass { verdict, evidence: Vec::new() },
        ratio_witnesses,
        constant,
        certificate,
        samples_checked: samples,
        undefined,
        warnings,
    };

    if defined.is_empty() {
        match certify(alg, p, ProductKind::Octonion, Domain::Octonions, Target::All) {
            Vanishing::Certified(c) => return Ok(report(Verdict::Zero, vec![], None, Some(c), warnings)),
            Vanishing::Witness { assignment, .. } => {
                let s = ratio_at(alg, p, assignment);
                if !s.f.is_defined() {
                    warnings.push("only undefined (0/0) ratio values were observed".to_string());
                    return Ok(report(Verdict::Anomalous, vec![s], None, None, warnings));
                }
                defined.push(s);
            }
        }
    }

    let first = defined[0].clone();
    if let Some(other) = defined.iter().find(|s| s.f != first.f) {
        return Ok(report(Verdict::Dense, vec![first, other.clone()], None, None, warnings));
    }
    // f looked constant on every sample; certify or refute the constancy exactly.
    let target = match &first.f {
        Ratio::Finite(r) if r.is_exact_zero() => Some(Target::PurePart),
        Ratio::Infinite => Some(Target::ScalarPart),
        _ => None,
    };
    let Some(target) = target else {
        let constant = Some(first.f.clone());
        return Ok(report(Verdict::Anomalous, defined, constant, None, warnings));
    };
    match certify(alg, p, ProductKind::Octonion, Domain::Octonions, target) {
        Vanishing::Certified(c) => {
            let verdict = if target == Target::PurePart { Verdict::Scalars } else { Verdict::Pure };
            Ok(report(verdict, vec![first.clone()], Some(first.f), Some(c), warnings))
        }
        Vanishing::Witness { assignment, .. } => {
            let other = ratio_at(alg, p, assignment);
            Ok(report(Verdict::Dense, vec![first, other], None, None, warnings))
        }
    }
}

/// `λ₁/λ₂ + λ₂/λ₁ = (4a² − 2N)/N` for a value `a + v` of norm `N`.
pub fn ratio_stat_of_value(alg: &Algebra<Rational>, value: &Octonion<Rational>) -> Result<Rational> {
    let n = alg.norm(value);
    if n.is_exact_zero() {
        return Err(Error::ZeroEigenvalue);
    }
    let a = &value.coords[0];
    let four_a2 = Rational::integer(4).mul_ref(a).mul_ref(a);
    Ok(four_a2.sub_ref(&n.add_ref(&n)) / n)
}

/// The eigenvalue ratio statistic of `p` at `point`.
pub fn eigenvalue_ratio_stat(alg: &Algebra<Rational>, p: &Polynomial, point: &[Octonion<Rational>]) -> Result<Rational> {
    let value = p.evaluate(alg, point, ProductKind::Octonion)?;
    ratio_stat_of_value(alg, &value)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramBin {
    pub label: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcludedHit {
    pub value: Rational,
    pub hits: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcludedReport {
    pub samples_checked: usize,
    pub hits: Vec<ExcludedHit>,
    /// Samples with a zero eigenvalue, where the statistic is undefined.
    pub zero_norm: usize,
    pub histogram: Vec<HistogramBin>,
}

/// Bins for the statistic: below −2, exactly −2, eight bins of width ½
/// covering (−2, 2), exactly 2, above 2. Over a division algebra the statistic
/// is `2cos 2θ`, so the outer bins stay empty.
const BIN_LABELS: [&str; 12] = [
    "< -2", "= -2", "(-2, -3/2)", "[-3/2, -1)", "[-1, -1/2)", "[-1/2, 0)", "[0, 1/2)", "[1/2, 1)", "[1, 3/2)",
    "[3/2, 2)", "= 2", "> 2",
];

fn bin_of(x: &Rational) -> usize {
    let two = Rational::integer(2);
    if x < &-two.clone() {
        0
    } else if x == &-two.clone() {
        1
    } else if x < &two {
        // 2 + ⌊2(x + 2)⌋ ∈ 2..=9
        let k = (x.add_ref(&two).mul_ref(&two)).as_big().floor().to_integer();
        2 + usize::try_from(k).expect("in range")
    } else if x == &two {
        10
    } else {
        11
    }
}

/// Counts how often sampled values of `p` have a ratio statistic in `excluded`.
pub fn excluded_ratio_check(
    alg: &Algebra<Rational>,
    p: &Polynomial,
    excluded: &[Rational],
    samples: usize,
    seed: u64,
) -> Result<ExcludedReport> {
    require_semihomogeneous(p)?;
    let m = p.num_vars();
    let stats: Vec<Option<Rational>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, STREAM_RATIO, i as u64);
            let point: Vec<Octonion<Rational>> = (0..m).map(|_| random_rational_octonion(&mut rng)).collect();
            ratio_stat_of_value(alg, &p.evaluate_unchecked(alg, &point, ProductKind::Octonion)).ok()
        })
        .collect();
    let hits = excluded
        .iter()
        .map(|e| ExcludedHit { value: e.clone(), hits: stats.iter().filter(|s| s.as_ref() == Some(e)).count() })
        .collect();
    let mut counts = [0usize; BIN_LABELS.len()];
    for s in stats.iter().flatten() {
        counts[bin_of(s)] += 1;
    }
    let histogram =
        BIN_LABELS.iter().zip(counts).map(|(label, count)| HistogramBin { label: label.to_string(), count }).collect();
    let zero_norm = stats.iter().filter(|s| s.is_none()).count();
    Ok(ExcludedReport { samples_checked: samples, hits, zero_norm, histogram })
}
