//! Search for multilinear polynomials whose image is exactly the scalars.
//!
//! A polynomial's values on basic tuples determine it as a function. Write a
//! candidate as `Σ c_w w` over all words `w` in `n` variables; its image lies
//! in F iff the pure coordinates of every basic value vanish, a linear system
//! `P c = 0`. A scalar-valued nonzero function exists iff the scalar rows `S`
//! are not in the row space of `P`.

mod oracle;

use octimage::classifier::{classify_multilinear, sample_consistency, ScanOptions};
use octimage::corpus::SCALAR_IMAGE;
use octimage::{parse, Algebra, Polynomial, Rational, Scalar, Verdict, Word};

/// All words using each of `vars` exactly once, in every order and bracketing.
fn words(vars: &[usize]) -> Vec<Word> {
    if let [k] = vars {
        return vec![Word::var(*k)];
    }
    let mut out = Vec::new();
    for mask in 1..(1u32 << vars.len()) - 1 {
        let (left, right): (Vec<usize>, Vec<usize>) =
            vars.iter().enumerate().fold((vec![], vec![]), |(mut l, mut r), (i, &v)| {
                if mask & (1 << i) != 0 { l.push(v) } else { r.push(v) }
                (l, r)
            });
        for l in words(&left) {
            for r in words(&right) {
                out.push(Word::mul(l.clone(), r.clone()));
            }
        }
    }
    out
}

fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    for row in rows {
        let mut v = row.clone();
        for (pc, b) in &basis {
            if !v[*pc].is_exact_zero() {
                let f = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x = x.sub_ref(&f.mul_ref(y));
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_exact_zero()) {
            let inv = v[pc].inv().unwrap();
            basis.push((pc, v.iter().map(|x| x.mul_ref(&inv)).collect()));
        }
    }
    basis.len()
}

/// Whether some polynomial in `n` variables has image inside F and is not zero.
fn scalar_valued_exists(n: usize) -> bool {
    let vars: Vec<usize> = (1..=n).collect();
    let ws = words(&vars);
    let singles: Vec<Polynomial> =
        ws.iter().map(|w| Polynomial::from_terms(n, [(Rational::integer(1), w.clone())]).unwrap()).collect();
    let (mut pure_rows, mut scalar_rows) = (Vec::new(), Vec::new());
    for t in oracle::all_tuples(n) {
        let values: Vec<[Rational; 8]> = singles.iter().map(|p| oracle::basic_value(p, &t)).collect();
        for k in 0..8 {
            let row: Vec<Rational> = values.iter().map(|v| v[k].clone()).collect();
            if row.iter().any(|x| !x.is_exact_zero()) {
                if k == 0 { scalar_rows.push(row) } else { pure_rows.push(row) }
            }
        }
    }
    let r = rank(&pure_rows);
    pure_rows.extend(scalar_rows);
    rank(&pure_rows) > r
}

#[test]
fn word_counts() {
    // n! orders times Catalan(n-1) bracketings
    assert_eq!(words(&[1]).len(), 1);
    assert_eq!(words(&[1, 2]).len(), 2);
    assert_eq!(words(&[1, 2, 3]).len(), 12);
}

#[test]
fn none_in_at_most_three_variables() {
    for n in 1..=3 {
        assert!(!scalar_valued_exists(n), "n = {n}");
    }
}

#[test]
fn polarized_commutator_square_has_scalar_image() {
    let p = parse(SCALAR_IMAGE).unwrap();
    let a = Algebra::standard_rational();
    let c = classify_multilinear(&a, &p, ScanOptions { full_scan: true, ..ScanOptions::default() }).unwrap();
    assert_eq!(c.class.verdict, Verdict::Scalars);
    assert_eq!(oracle::verdict(&p), Verdict::Scalars);
    let s = sample_consistency(&a, &p, &c.class, 100, 0).unwrap();
    assert_eq!(s.span_dimension, 1);
    let w = &c.class.evidence[0];
    assert_eq!(w.basis_index, 0);
    assert!(!w.coefficient.is_exact_zero());
}
