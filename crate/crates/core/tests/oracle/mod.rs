//! Brute-force image oracle with its own multiplication table.
//!
//! Shares nothing with the library's product code: the table below was
//! written out by hand, and words are walked directly.

#![allow(dead_code)]

use octimage::{Polynomial, Rational, Verdict, Word};

/// `e_i e_j = sign · e_{|t|-1}` where `t = TABLE[i][j]`.
pub const TABLE: [[i8; 8]; 8] = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [2, -1, 4, -3, 6, -5, -8, 7],
    [3, -4, -1, 2, 7, 8, -5, -6],
    [4, 3, -2, -1, 8, -7, 6, -5],
    [5, -6, -7, -8, -1, 2, 3, 4],
    [6, 5, -8, 7, -2, -1, -4, 3],
    [7, 8, 5, -6, -3, 4, -1, -2],
    [8, -7, 6, 5, -4, -3, 2, -1],
];

pub fn basis_product(i: usize, j: usize) -> (i64, usize) {
    let t = TABLE[i][j];
    (t.signum() as i64, t.unsigned_abs() as usize - 1)
}

fn walk(w: &Word, tuple: &[usize]) -> (i64, usize) {
    match w {
        Word::Var(k) => (1, tuple[k - 1]),
        Word::Mul(l, r) => {
            let (sl, il) = walk(l, tuple);
            let (sr, ir) = walk(r, tuple);
            let (s, i) = basis_product(il, ir);
            (sl * sr * s, i)
        }
    }
}

/// Full coordinate vector of `p` at a tuple of basis elements.
pub fn basic_value(p: &Polynomial, tuple: &[usize]) -> [Rational; 8] {
    let mut out: [Rational; 8] = std::array::from_fn(|_| Rational::integer(0));
    for (c, w) in p.terms() {
        let (s, i) = walk(w, tuple);
        out[i] = out[i].clone() + c.clone() * Rational::integer(s);
    }
    out
}

pub fn all_tuples(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..8usize.pow(n as u32)).map(move |mut t| {
        let mut tuple = vec![0; n];
        for slot in (0..n).rev() {
            tuple[slot] = t % 8;
            t /= 8;
        }
        tuple
    })
}

/// Largest number of nonzero coordinates over all basic tuples.
pub fn max_support(p: &Polynomial) -> usize {
    let zero = Rational::integer(0);
    all_tuples(p.num_vars()).map(|t| basic_value(p, &t).iter().filter(|c| **c != zero).count()).max().unwrap_or(0)
}

/// Verdict from a full scan of all basic tuples.
pub fn verdict(p: &Polynomial) -> Verdict {
    let zero = Rational::integer(0);
    let (mut scalar, mut pure) = (false, false);
    for t in all_tuples(p.num_vars()) {
        let v = basic_value(p, &t);
        scalar |= v[0] != zero;
        pure |= v[1..].iter().any(|c| *c != zero);
    }
    match (scalar, pure) {
        (false, false) => Verdict::Zero,
        (true, false) => Verdict::Scalars,
        (false, true) => Verdict::Pure,
        (true, true) => Verdict::Full,
    }
}
