//! Octonion algebras built by three Cayley–Dickson doublings.
//!
//! An element of `(A, α)` is a pair `(a1, a2)` of elements of `A` with product
//!
//! ```text
//! (a1, a2)(b1, b2) = (a1 b1 + α b2* a2,  b2 a1 + a2 b1*)
//! ```
//!
//! and involution `(a1, a2)* = (a1*, -a2)`. Coordinates are laid out so that the
//! first half of the coordinate vector is `a1` and the second half is `a2`,
//! recursively. This fixes the basis: `e1` comes from the first doubling,
//! `e2` and `e3 = e1 e2` from the second, and `e4..e7 = e0..e3 · e4` from the
//! third. With this layout `e_i e_j` is always a multiple of `e_{i xor j}`.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraParams<S> {
    pub alpha1: S,
    pub alpha2: S,
    pub alpha3: S,
}

impl<S: Scalar> AlgebraParams<S> {
    pub fn new(alpha1: S, alpha2: S, alpha3: S) -> Result<Self> {
        for (i, a) in [&alpha1, &alpha2, &alpha3].into_iter().enumerate() {
            if a.is_exact_zero() {
                return Err(Error::InvalidParams(format!("alpha{} must be nonzero", i + 1)));
            }
        }
        Ok(AlgebraParams { alpha1, alpha2, alpha3 })
    }

    /// The division octonions: every αᵢ = −1.
    pub fn standard() -> Self {
        let m = -S::one();
        AlgebraParams { alpha1: m.clone(), alpha2: m.clone(), alpha3: m }
    }

    pub fn is_standard(&self) -> bool {
        let m = -S::one();
        self.alpha1 == m && self.alpha2 == m && self.alpha3 == m
    }

    fn levels(&self) -> [S; 3] {
        [self.alpha1.clone(), self.alpha2.clone(), self.alpha3.clone()]
    }
}

impl AlgebraParams<Rational> {
    /// Parses `a1,a2,a3`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidParams(format!("expected three comma-separated values, got {text:?}")));
        }
        let vals = parts.iter().map(|p| p.parse::<Rational>()).collect::<Result<Vec<_>>>()?;
        let [a, b, c]: [Rational; 3] = vals.try_into().expect("length checked");
        AlgebraParams::new(a, b, c)
    }

    pub fn convert<T: Scalar>(&self) -> AlgebraParams<T> {
        AlgebraParams {
            alpha1: T::from_rational(&self.alpha1),
            alpha2: T::from_rational(&self.alpha2),
            alpha3: T::from_rational(&self.alpha3),
        }
    }
}

impl<S: Scalar> fmt::Display for AlgebraParams<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.alpha1, self.alpha2, self.alpha3)
    }
}

/// An element `Σ βᵢ eᵢ`; coordinate 0 is the scalar part, 1..7 the pure part.
#[derive(Debug, Clone, PartialEq)]
pub struct Octonion<S> {
    pub coords: [S; 8],
}

impl<S: Scalar> Octonion<S> {
    pub fn from_coords(coords: [S; 8]) -> Self {
        Octonion { coords }
    }

    pub fn zero() -> Self {
        Octonion { coords: std::array::from_fn(|_| S::zero()) }
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn basis(i: usize) -> Self {
        assert!(i < 8, "basis index {i} out of range");
        let mut o = Self::zero();
        o.coords[i] = S::one();
        o
    }

    pub fn scalar(s: S) -> Self {
        let mut o = Self::zero();
        o.coords[0] = s;
        o
    }

    pub fn from_i64s(v: [i64; 8]) -> Self {
        Octonion { coords: v.map(S::from_i64) }
    }

    pub fn from_rational(o: &Octonion<Rational>) -> Self {
        Octonion { coords: std::array::from_fn(|i| S::from_rational(&o.coords[i])) }
    }

    pub fn scalar_part(&self) -> &S {
        &self.coords[0]
    }

    /// The pure part as an octonion (coordinate 0 cleared).
    pub fn pure_part(&self) -> Self {
        let mut v = self.clone();
        v.coords[0] = S::zero();
        v
    }

    /// `x = a·e0 + v` with `v` pure.
    pub fn decompose(&self) -> (S, Self) {
        (self.coords[0].clone(), self.pure_part())
    }

    pub fn add(&self, other: &Self) -> Self {
        Octonion { coords: std::array::from_fn(|i| self.coords[i].add_ref(&other.coords[i])) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Octonion { coords: std::array::from_fn(|i| self.coords[i].sub_ref(&other.coords[i])) }
    }

    pub fn neg(&self) -> Self {
        Octonion { coords: std::array::from_fn(|i| self.coords[i].neg_ref()) }
    }

    pub fn scale(&self, s: &S) -> Self {
        Octonion { coords: std::array::from_fn(|i| self.coords[i].mul_ref(s)) }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coords.iter().all(S::is_exact_zero)
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.coords.iter().all(|c| c.is_zero_within(tol))
    }

    pub fn is_pure_within(&self, tol: f64) -> bool {
        self.coords[0].is_zero_within(tol)
    }

    pub fn is_scalar_within(&self, tol: f64) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero_within(tol))
    }

    /// Number of exactly nonzero coordinates.
    pub fn support_size(&self) -> usize {
        self.coords.iter().filter(|c| !c.is_exact_zero()).count()
    }

    /// Euclidean length of the coordinate vector, used for residuals.
    pub fn euclidean_len(&self) -> f64 {
        self.coords.iter().map(|c| c.to_f64().powi(2)).sum::<f64>().sqrt()
    }

    /// Coordinate inner product `Σ βᵢ γᵢ`.
    pub fn dot(&self, other: &Self) -> S {
        let mut acc = S::zero();
        for (a, b) in self.coords.iter().zip(&other.coords) {
            acc.add_assign_ref(&a.mul_ref(b));
        }
        acc
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Octonion<T> {
        Octonion { coords: std::array::from_fn(|i| f(&self.coords[i])) }
    }

    pub fn to_f64(&self) -> Octonion<f64> {
        self.map(S::to_f64)
    }
}

impl<S: Scalar> fmt::Display for Octonion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = if negative { c.neg_ref() } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag == S::one() {
                write!(f, "e{i}")?;
            } else {
                write!(f, "{mag}*e{i}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// JSON form: an array of 8 scalar strings.
impl<S: Scalar> Serialize for Octonion<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let mut seq = serializer.serialize_seq(Some(8))?;
        for c in &self.coords {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

/// Parses `b0 + b1*e1 + ... + b7*e7`. Terms may appear in any order and repeat
/// (they are summed); coefficients are exact literals.
impl FromStr for Octonion<Rational> {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |m: String| Error::InvalidOctonion(format!("{m} in {text:?}"));
        let mut out = Octonion::<Rational>::zero();
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty input".into()));
        }
        // Split into signed terms, not splitting on signs that belong to an exponent.
        let bytes = compact.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            let c = bytes[i];
            if (c == b'+' || c == b'-') && !matches!(bytes[i - 1], b'e' | b'E' | b'*' | b'/') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            let (coeff_text, index) = match body.rfind('e') {
                Some(pos)
                    if pos + 1 < body.len()
                        && body[pos + 1..].chars().all(|c| c.is_ascii_digit())
                        && (pos == 0 || body.as_bytes()[pos - 1] == b'*') =>
                {
                    let idx: usize = body[pos + 1..].parse().map_err(|_| bad(format!("bad basis in {term:?}")))?;
                    let coeff = if pos == 0 { "1" } else { &body[..pos - 1] };
                    (coeff, idx)
                }
                _ => (body, 0),
            };
            if index > 7 {
                return Err(bad(format!("basis index e{index} out of range")));
            }
            let coeff: Rational = coeff_text.parse().map_err(|_| bad(format!("bad coefficient {coeff_text:?}")))?;
            let coeff = if sign < 0 { -coeff } else { coeff };
            out.coords[index].add_assign_ref(&coeff);
        }
        Ok(out)
    }
}

/// One cell of the multiplication table: `eᵢ eⱼ = coeff · e_index`.
#[derive(Debug, Clone, PartialEq)]
pub struct TableEntry<S> {
    pub coeff: S,
    pub index: usize,
}

#[derive(Debug, Clone)]
pub struct StructureTable<S> {
    entries: Vec<TableEntry<S>>,
}

impl<S: Scalar> StructureTable<S> {
    /// Expands every basis product with the recursive doubling formula.
    pub fn from_params(params: &AlgebraParams<S>) -> Self {
        let levels = params.levels();
        let mut entries = Vec::with_capacity(64);
        for i in 0..8 {
            for j in 0..8 {
                let prod = doubling_product(&Octonion::basis(i).coords, &Octonion::basis(j).coords, &levels);
                let nonzero: Vec<usize> = (0..8).filter(|&k| !prod[k].is_exact_zero()).collect();
                assert_eq!(nonzero.len(), 1, "basis product e{i}e{j} is not a basis multiple");
                let k = nonzero[0];
                entries.push(TableEntry { coeff: prod[k].clone(), index: k });
            }
        }
        StructureTable { entries }
    }

    pub fn get(&self, i: usize, j: usize) -> &TableEntry<S> {
        &self.entries[i * 8 + j]
    }
}

/// Product on coordinate slices of length 2^k via the doubling formula,
/// `levels[k-1]` being the parameter of the k-th doubling.
pub fn doubling_product<S: Scalar>(a: &[S], b: &[S], levels: &[S]) -> Vec<S> {
    let n = a.len();
    if n == 1 {
        return vec![a[0].mul_ref(&b[0])];
    }
    let h = n / 2;
    let alpha = &levels[n.trailing_zeros() as usize - 1];
    let (a1, a2) = a.split_at(h);
    let (b1, b2) = b.split_at(h);
    let b1c = doubling_conjugate(b1);
    let b2c = doubling_conjugate(b2);

    let first = add_vec(&doubling_product(a1, b1, levels), &scale_vec(&doubling_product(&b2c, a2, levels), alpha));
    let second = add_vec(&doubling_product(b2, a1, levels), &doubling_product(a2, &b1c, levels));
    let mut out = first;
    out.extend(second);
    out
}

fn doubling_conjugate<S: Scalar>(a: &[S]) -> Vec<S> {
    if a.len() == 1 {
        return vec![a[0].clone()];
    }
    let h = a.len() / 2;
    let mut out = doubling_conjugate(&a[..h]);
    out.extend(a[h..].iter().map(S::neg_ref));
    out
}

fn add_vec<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.add_ref(y)).collect()
}

fn scale_vec<S: Scalar>(a: &[S], s: &S) -> Vec<S> {
    a.iter().map(|x| x.mul_ref(s)).collect()
}

/// Eigenvalues `λ = real ± √discriminant`, stored without extracting the root.
/// For `x = a + v` the discriminant is `−‖v‖`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eigenvalues<S: Scalar> {
    #[serde(serialize_with = "display_ser")]
    pub real: S,
    #[serde(serialize_with = "display_ser")]
    pub discriminant: S,
}

fn display_ser<S: Scalar, Ser: Serializer>(v: &S, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
    s.serialize_str(&v.to_string())
}

impl<S: Scalar> Eigenvalues<S> {
    /// `λ₁ + λ₂`
    pub fn sum(&self) -> S {
        self.real.add_ref(&self.real)
    }

    /// `λ₁ λ₂`
    pub fn product(&self) -> S {
        self.real.mul_ref(&self.real).sub_ref(&self.discriminant)
    }

    /// Both eigenvalues as `(re, im)` pairs in floating point.
    pub fn to_complex(&self) -> [(f64, f64); 2] {
        let a = self.real.to_f64();
        let d = self.discriminant.to_f64();
        if d >= 0.0 {
            let r = d.sqrt();
            [(a + r, 0.0), (a - r, 0.0)]
        } else {
            let r = (-d).sqrt();
            [(a, r), (a, -r)]
        }
    }
}

/// An octonion algebra over `S`: parameters, multiplication table and the
/// zero tolerance used for approximate fields.
#[derive(Debug, Clone)]
pub struct Algebra<S: Scalar> {
    params: AlgebraParams<S>,
    table: StructureTable<S>,
    basis_norms: [S; 8],
    tolerance: f64,
}

impl Algebra<Rational> {
    pub fn standard_rational() -> Self {
        Algebra::new(AlgebraParams::standard(), 0.0)
    }
}

impl Algebra<f64> {
    pub fn standard_real(tolerance: f64) -> Self {
        Algebra::new(AlgebraParams::standard(), tolerance)
    }
}

impl<S: Scalar> Algebra<S> {
    /// `tolerance` is ignored for exact fields.
    pub fn new(params: AlgebraParams<S>, tolerance: f64) -> Self {
        let table = StructureTable::from_params(&params);
        let levels = params.levels();
        let basis_norms = std::array::from_fn(|i| {
            let e = Octonion::<S>::basis(i);
            let conj = doubling_conjugate(&e.coords);
            doubling_product(&conj, &e.coords, &levels)[0].clone()
        });
        let tolerance = if S::EXACT { 0.0 } else { tolerance };
        Algebra { params, table, basis_norms, tolerance }
    }

    pub fn params(&self) -> &AlgebraParams<S> {
        &self.params
    }

    pub fn table(&self) -> &StructureTable<S> {
        &self.table
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn is_standard(&self) -> bool {
        self.params.is_standard()
    }

    pub fn is_zero(&self, s: &S) -> bool {
        s.is_zero_within(self.tolerance)
    }

    pub fn is_zero_octonion(&self, x: &Octonion<S>) -> bool {
        x.is_zero_within(self.tolerance)
    }

    pub fn is_pure(&self, x: &Octonion<S>) -> bool {
        x.is_pure_within(self.tolerance)
    }

    /// Table-driven product.
    pub fn multiply(&self, a: &Octonion<S>, b: &Octonion<S>) -> Octonion<S> {
        let mut out = Octonion::<S>::zero();
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_exact_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                if bj.is_exact_zero() {
                    continue;
                }
                let entry = self.table.get(i, j);
                let term = ai.mul_ref(bj).mul_ref(&entry.coeff);
                out.coords[entry.index].add_assign_ref(&term);
            }
        }
        out
    }

    /// Product computed by three nested applications of the doubling formula.
    /// Independent of the structure table; used to cross-check it.
    pub fn multiply_by_doubling(&self, a: &Octonion<S>, b: &Octonion<S>) -> Octonion<S> {
        let v = doubling_product(&a.coords, &b.coords, &self.params.levels());
        Octonion { coords: v.try_into().expect("eight coordinates") }
    }

    pub fn conjugate(&self, a: &Octonion<S>) -> Octonion<S> {
        let mut out = a.neg();
        out.coords[0] = a.coords[0].clone();
        out
    }

    /// `tr(a) = ½(a + a*)`, i.e. coordinate 0.
    pub fn trace(&self, a: &Octonion<S>) -> S {
        a.coords[0].clone()
    }

    /// `‖a‖ = a* a`. Equals `Σ βᵢ²` for the standard parameters.
    pub fn norm(&self, a: &Octonion<S>) -> S {
        let mut acc = S::zero();
        for (c, n) in a.coords.iter().zip(&self.basis_norms) {
            if !c.is_exact_zero() {
                acc.add_assign_ref(&c.mul_ref(c).mul_ref(n));
            }
        }
        acc
    }

    /// `⟨a, b⟩ = ab* + ba*`, a scalar.
    pub fn bilinear(&self, a: &Octonion<S>, b: &Octonion<S>) -> S {
        let s = self.multiply(a, &self.conjugate(b)).add(&self.multiply(b, &self.conjugate(a)));
        s.coords[0].clone()
    }

    pub fn decompose(&self, x: &Octonion<S>) -> (S, Octonion<S>) {
        x.decompose()
    }

    pub fn eigenvalues(&self, x: &Octonion<S>) -> Eigenvalues<S> {
        let (a, v) = x.decompose();
        Eigenvalues { real: a, discriminant: self.norm(&v).neg_ref() }
    }

    /// `x² − 2·tr(x)·x + ‖x‖`; zero for every octonion.
    pub fn char_poly_residual(&self, x: &Octonion<S>) -> Octonion<S> {
        let a = self.trace(x);
        let two_a = a.add_ref(&a);
        let mut r = self.multiply(x, x).sub(&x.scale(&two_a));
        r.coords[0].add_assign_ref(&self.norm(x));
        r
    }

    /// `[a, b, c] = (ab)c − a(bc)`
    pub fn associator(&self, a: &Octonion<S>, b: &Octonion<S>, c: &Octonion<S>) -> Octonion<S> {
        self.multiply(&self.multiply(a, b), c).sub(&self.multiply(a, &self.multiply(b, c)))
    }

    pub fn commutator(&self, a: &Octonion<S>, b: &Octonion<S>) -> Octonion<S> {
        self.multiply(a, b).sub(&self.multiply(b, a))
    }
}
