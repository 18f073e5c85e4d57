use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::linalg::nullspace;
use crate::scalar::{Rational, Scalar};

use super::Polynomial;

/// Weights `w` with `Σ wᵢ·degᵢ = degree` for every term, `degree ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Weighting {
    pub weights: Vec<i64>,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeProfile {
    pub degree_vectors: Vec<Vec<usize>>,
    pub is_multilinear: bool,
    pub weighted: Option<Weighting>,
}

impl DegreeProfile {
    pub fn is_semihomogeneous(&self) -> bool {
        self.weighted.is_some()
    }
}

pub fn degree_profile(p: &Polynomial) -> DegreeProfile {
    let m = p.num_vars();
    let degree_vectors: Vec<Vec<usize>> = p.terms().map(|(_, w)| w.degree_vector(m)).collect();
    let is_multilinear = degree_vectors.iter().all(|d| d.iter().all(|&k| k == 1));
    let weighted = solve_weights(&degree_vectors, m);
    DegreeProfile { degree_vectors, is_multilinear, weighted }
}

fn solve_weights(vectors: &[Vec<usize>], m: usize) -> Option<Weighting> {
    // Homogeneous (including the zero polynomial): unit weights.
    let totals: Vec<usize> = vectors.iter().map(|d| d.iter().sum()).collect();
    if totals.windows(2).all(|w| w[0] == w[1]) {
        let degree = totals.first().copied().unwrap_or(1).max(1) as i64;
        return Some(Weighting { weights: vec![1; m], degree });
    }
    // Unknowns (w_1..w_m, d); one equation Σ wᵢ degᵢ − d = 0 per distinct vector.
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for d in vectors {
        let mut row: Vec<Rational> = d.iter().map(|&k| Rational::integer(k as i64)).collect();
        row.push(Rational::integer(-1));
        if !rows.contains(&row) {
            rows.push(row);
        }
    }
    let basis = nullspace(&rows, m + 1);
    let v = basis.into_iter().find(|v| !v[m].is_exact_zero())?;
    let ints = to_primitive_integers(&v);
    let sign = if ints[m].is_negative() { -BigInt::one() } else { BigInt::one() };
    let ints: Vec<i64> = ints.iter().map(|x| (x * &sign).to_i64()).collect::<Option<_>>()?;
    Some(Weighting { weights: ints[..m].to_vec(), degree: ints[m] })
}

/// Scales a rational vector to coprime integers.
fn to_primitive_integers(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &gcd).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse;

    fn check(p: &Polynomial, w: &Weighting) {
        for d in degree_profile(p).degree_vectors {
            let s: i64 = d.iter().zip(&w.weights).map(|(&k, &wi)| k as i64 * wi).sum();
            assert_eq!(s, w.degree);
        }
        assert_ne!(w.degree, 0);
    }

    #[test]
    fn commutator_profile() {
        let prof = degree_profile(&parse("x1*x2 - x2*x1").unwrap());
        assert!(prof.is_multilinear);
        assert_eq!(prof.weighted, Some(Weighting { weights: vec![1, 1], degree: 2 }));
    }

    #[test]
    fn square_profile() {
        let prof = degree_profile(&parse("x1*x1").unwrap());
        assert!(!prof.is_multilinear);
        assert_eq!(prof.weighted, Some(Weighting { weights: vec![1], degree: 2 }));
    }

    #[test]
    fn mixed_square_is_homogeneous_after_all() {
        // vectors (2,0) and (1,1): 2w1 = d and w1 + w2 = d force w1 = w2
        let p = parse("x1*x1 + x1*x2").unwrap();
        let prof = degree_profile(&p);
        assert_eq!(prof.degree_vectors, vec![vec![2, 0], vec![1, 1]]);
        let w = prof.weighted.unwrap();
        assert_eq!(w, Weighting { weights: vec![1, 1], degree: 2 });
    }

    #[test]
    fn genuinely_weighted() {
        // (x1*x1)*x1 has vector (3,0); x2 has (0,1): weights (1,3), d = 3
        let p = parse("(x1*x1)*x1 + x2").unwrap();
        let w = degree_profile(&p).weighted.unwrap();
        assert_eq!(w, Weighting { weights: vec![1, 3], degree: 3 });
        check(&p, &w);

        let p = parse("(x1*x1)*x2 + x2*x2 + x3").unwrap();
        let w = degree_profile(&p).weighted.unwrap();
        check(&p, &w);
    }

    #[test]
    fn not_semihomogeneous() {
        // (1) and (2) in one variable: w = d and 2w = d force d = 0
        assert_eq!(degree_profile(&parse("x1 + x1*x1").unwrap()).weighted, None);
        // (1,0), (0,1), (1,1): w1 = w2 = d and w1 + w2 = d force d = 0
        assert_eq!(degree_profile(&parse("x1 + x2 + x1*x2").unwrap()).weighted, None);
    }

    #[test]
    fn zero_polynomial_profile() {
        let prof = degree_profile(&Polynomial::zero(2));
        assert!(prof.is_multilinear);
        assert!(prof.is_semihomogeneous());
    }
}
