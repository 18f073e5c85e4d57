//! Nonassociative polynomials: words of the free magma and their linear combinations.
//!
//! Words are binary trees and are never rewritten by any algebra identity;
//! `(x1 x2) x3` and `x1 (x2 x3)` are different words.

mod parse;
mod weights;

use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Octonion};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

pub use parse::{parse, parse_with_vars, parse_with_warnings};
pub use weights::{degree_profile, DegreeProfile, Weighting};

/// A word of the free magma. Variables are 1-based.
///
/// JSON form: a leaf is an integer, a product is a two-element array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Word {
    Var(usize),
    Mul(Box<Word>, Box<Word>),
}

impl Word {
    pub fn var(k: usize) -> Self {
        Word::Var(k)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(left: Word, right: Word) -> Self {
        Word::Mul(Box::new(left), Box::new(right))
    }

    /// Total degree (leaf count).
    pub fn degree(&self) -> usize {
        match self {
            Word::Var(_) => 1,
            Word::Mul(l, r) => l.degree() + r.degree(),
        }
    }

    pub fn max_var(&self) -> usize {
        match self {
            Word::Var(k) => *k,
            Word::Mul(l, r) => l.max_var().max(r.max_var()),
        }
    }

    pub fn min_var(&self) -> usize {
        match self {
            Word::Var(k) => *k,
            Word::Mul(l, r) => l.min_var().min(r.min_var()),
        }
    }

    /// `(deg_1, …, deg_m)`
    pub fn degree_vector(&self, num_vars: usize) -> Vec<usize> {
        let mut out = vec![0; num_vars];
        self.count_into(&mut out);
        out
    }

    fn count_into(&self, out: &mut [usize]) {
        match self {
            Word::Var(k) => out[k - 1] += 1,
            Word::Mul(l, r) => {
                l.count_into(out);
                r.count_into(out);
            }
        }
    }

    pub fn rename(&self, f: &impl Fn(usize) -> usize) -> Word {
        match self {
            Word::Var(k) => Word::Var(f(*k)),
            Word::Mul(l, r) => Word::mul(l.rename(f), r.rename(f)),
        }
    }

    /// Evaluates bottom-up with an arbitrary binary product.
    pub fn evaluate_with<T: Clone>(&self, values: &[T], product: &impl Fn(&T, &T) -> T) -> T {
        match self {
            Word::Var(k) => values[k - 1].clone(),
            Word::Mul(l, r) => product(&l.evaluate_with(values, product), &r.evaluate_with(values, product)),
        }
    }

    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Var(k) => write!(f, "x{k}"),
            Word::Mul(..) => write!(f, "({self})"),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Var(k) => write!(f, "x{k}"),
            Word::Mul(l, r) => {
                l.fmt_factor(f)?;
                write!(f, "*")?;
                r.fmt_factor(f)
            }
        }
    }
}

/// Which binary operation words are evaluated with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    /// The octonion product.
    Octonion,
    /// `v ∘ w = vw − wv` on pure octonions.
    Malcev,
}

impl ProductKind {
    pub fn apply<S: Scalar>(self, alg: &Algebra<S>, a: &Octonion<S>, b: &Octonion<S>) -> Octonion<S> {
        match self {
            ProductKind::Octonion => alg.multiply(a, b),
            ProductKind::Malcev => alg.commutator(a, b),
        }
    }
}

/// A canonical linear combination of distinct words with nonzero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    num_vars: usize,
    terms: IndexMap<Word, Rational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial { num_vars, terms: IndexMap::new() }
    }

    /// Combines duplicate words and drops zero coefficients, keeping the
    /// order in which words first appear.
    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Rational, Word)>) -> Result<Self> {
        let mut p = Polynomial::zero(num_vars);
        for (c, w) in terms {
            if w.min_var() == 0 || w.max_var() > num_vars {
                let index = if w.min_var() == 0 { 0 } else { w.max_var() };
                return Err(Error::VariableIndexOutOfRange { index, max: num_vars });
            }
            p.add_term(c, w);
        }
        Ok(p)
    }

    fn add_term(&mut self, c: Rational, w: Word) {
        if c.is_exact_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                v.add_assign_ref(&c);
                if v.is_exact_zero() {
                    self.terms.shift_remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Word)> {
        self.terms.iter().map(|(w, c)| (c, w))
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Rational> {
        self.terms.get(w)
    }

    /// Largest word degree (0 for the zero polynomial).
    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(Word::degree).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.num_vars = self.num_vars.max(other.num_vars);
        for (c, w) in other.terms() {
            out.add_term(c.clone(), w.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        if s.is_exact_zero() {
            return Polynomial::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.mul_ref(s))).collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&Rational::integer(-1))
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    /// Renames variables through `f` (1-based in and out).
    pub fn rename_vars(&self, num_vars: usize, f: impl Fn(usize) -> usize) -> Result<Polynomial> {
        Polynomial::from_terms(num_vars, self.terms().map(|(c, w)| (c.clone(), w.rename(&f))))
    }

    /// Splits into parts whose words share one degree vector.
    pub fn multidegree_components(&self) -> Vec<(Vec<usize>, Polynomial)> {
        let mut groups: IndexMap<Vec<usize>, Polynomial> = IndexMap::new();
        for (c, w) in self.terms() {
            groups
                .entry(w.degree_vector(self.num_vars))
                .or_insert_with(|| Polynomial::zero(self.num_vars))
                .add_term(c.clone(), w.clone());
        }
        groups.into_iter().collect()
    }

    /// Evaluates at `assignment` using `product` for every word node.
    pub fn evaluate<S: Scalar>(
        &self,
        alg: &Algebra<S>,
        assignment: &[Octonion<S>],
        product: ProductKind,
    ) -> Result<Octonion<S>> {
        if assignment.len() != self.num_vars {
            return Err(Error::ArityMismatch { expected: self.num_vars, got: assignment.len() });
        }
        if product == ProductKind::Malcev {
            if let Some(i) = assignment.iter().position(|x| !alg.is_pure(x)) {
                return Err(Error::NonPureInputForMalcev(i + 1));
            }
        }
        Ok(self.evaluate_unchecked(alg, assignment, product))
    }

    pub(crate) fn evaluate_unchecked<S: Scalar>(
        &self,
        alg: &Algebra<S>,
        assignment: &[Octonion<S>],
        product: ProductKind,
    ) -> Octonion<S> {
        let mul = |a: &Octonion<S>, b: &Octonion<S>| product.apply(alg, a, b);
        let mut acc = Octonion::zero();
        for (c, w) in self.terms() {
            let v = w.evaluate_with(assignment, &mul);
            acc = acc.add(&v.scale(&S::from_rational(c)));
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, w)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i == 0, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if mag != Rational::one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: Rational,
    word: Word,
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    num_vars: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialRepr {
            num_vars: self.num_vars,
            terms: self.terms().map(|(c, w)| TermRepr { coeff: c.clone(), word: w.clone() }).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolynomialRepr::deserialize(deserializer)?;
        Polynomial::from_terms(repr.num_vars, repr.terms.into_iter().map(|t| (t.coeff, t.word)))
            .map_err(serde::de::Error::custom)
    }
}
