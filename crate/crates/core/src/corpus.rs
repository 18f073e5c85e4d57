//! Named and seeded random polynomials used by the self-check and tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::polynomial::{parse, Polynomial, Word};
use crate::scalar::Rational;

/// Multilinear polynomials with well-known images.
pub const NAMED_MULTILINEAR: [(&str, &str); 4] = [
    ("commutator", "x1*x2 - x2*x1"),
    ("anticommutator", "x1*x2 + x2*x1"),
    ("associator", "(x1*x2)*x3 - x1*(x2*x3)"),
    ("reversal difference", "(x1*x2)*x3 - x3*(x2*x1)"),
];

/// Multilinear with image exactly F: the full polarization of `[x,y]²`, which
/// is minus a norm. Nothing smaller exists; in at most three variables every
/// scalar-valued multilinear polynomial vanishes.
pub const SCALAR_IMAGE: &str = "(x1*x2 - x2*x1)*(x3*x4 - x4*x3) + (x3*x4 - x4*x3)*(x1*x2 - x2*x1)";

pub fn named_multilinear() -> Vec<(&'static str, Polynomial)> {
    NAMED_MULTILINEAR.iter().map(|&(name, text)| (name, parse(text).expect("valid literal"))).collect()
}

/// A uniformly random bracketing of `leaves` in the given order.
pub fn random_word<R: Rng>(rng: &mut R, leaves: &[usize]) -> Word {
    match leaves {
        [] => panic!("a word needs at least one leaf"),
        [k] => Word::var(*k),
        _ => {
            let split = rng.gen_range(1..leaves.len());
            Word::mul(random_word(rng, &leaves[..split]), random_word(rng, &leaves[split..]))
        }
    }
}

fn random_coefficient<R: Rng>(rng: &mut R) -> Rational {
    let n = *[-3, -2, -1, 1, 2, 3].choose(rng).expect("nonempty");
    Rational::new(n, rng.gen_range(1..=3))
}

/// A multilinear polynomial in `n ≥ 1` variables with up to `max_terms` terms.
pub fn random_multilinear<R: Rng>(rng: &mut R, n: usize, max_terms: usize) -> Polynomial {
    let terms = (0..rng.gen_range(1..=max_terms.max(1)))
        .map(|_| {
            let mut leaves: Vec<usize> = (1..=n).collect();
            leaves.shuffle(rng);
            (random_coefficient(rng), random_word(rng, &leaves))
        })
        .collect::<Vec<_>>();
    Polynomial::from_terms(n, terms).expect("variables in range")
}

/// A semihomogeneous polynomial of total degree at most `max_degree`, in one
/// to three variables with weights 1 or 2.
pub fn random_semihomogeneous<R: Rng>(rng: &mut R, max_degree: usize) -> Polynomial {
    loop {
        let m = rng.gen_range(1..=3);
        let weights: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=2)).collect();
        let d = rng.gen_range(1..=max_degree);
        let vectors = degree_vectors(&weights, d, max_degree);
        if vectors.is_empty() {
            continue;
        }
        let terms = (0..rng.gen_range(1..=3))
            .map(|_| {
                let k = vectors.choose(rng).expect("nonempty");
                let mut leaves: Vec<usize> =
                    k.iter().enumerate().flat_map(|(i, &ki)| std::iter::repeat_n(i + 1, ki)).collect();
                leaves.shuffle(rng);
                (random_coefficient(rng), random_word(rng, &leaves))
            })
            .collect::<Vec<_>>();
        return Polynomial::from_terms(m, terms).expect("variables in range");
    }
}

/// Nonzero `k` with `Σ wᵢkᵢ = d` and `Σ kᵢ ≤ max_total`.
fn degree_vectors(weights: &[usize], d: usize, max_total: usize) -> Vec<Vec<usize>> {
    fn go(weights: &[usize], d: usize, budget: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some((&w, rest)) = weights.split_first() else {
            if d == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        for k in 0..=budget.min(d / w) {
            prefix.push(k);
            go(rest, d - k * w, budget - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, d, max_total, &mut Vec::new(), &mut out);
    out.retain(|k| k.iter().any(|&x| x > 0));
    out
}
