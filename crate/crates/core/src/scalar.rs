//! Field scalars.
//!
//! Two fields are provided: [`Rational`], exact arbitrary-precision rationals
//! used for identity checking and classification, and `f64`, used where square
//! roots or continuity arguments are needed (automorphism construction,
//! intermediate-value searches). Both have characteristic 0.
//!
//! Mixing the two in one computation is rejected by the type system: every
//! algebra object is generic over exactly one [`Scalar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Selects which field a computation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum FieldMode {
    #[default]
    Rational,
    Real { tolerance: f64 },
}

impl FieldMode {
    pub fn real(tolerance: f64) -> Result<Self> {
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(Error::InvalidTolerance(tolerance));
        }
        Ok(FieldMode::Real { tolerance })
    }

    pub fn default_real() -> Self {
        FieldMode::Real { tolerance: DEFAULT_TOLERANCE }
    }

    /// Zero for exact mode.
    pub fn tolerance(&self) -> f64 {
        match self {
            FieldMode::Rational => 0.0,
            FieldMode::Real { tolerance } => *tolerance,
        }
    }

    pub fn is_zero<S: Scalar>(&self, s: &S) -> bool {
        s.is_zero_within(self.tolerance())
    }
}

/// Arithmetic the octonion layer needs from its base field.
///
/// Hot loops use the by-reference methods; the operator bounds exist for
/// readability in the rest of the code.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// True for exact fields; false for floating point.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }

    /// Exact comparison with zero.
    fn is_exact_zero(&self) -> bool;

    /// `|s| <= tol` for reals; exact zero test for rationals (`tol` ignored).
    fn is_zero_within(&self, tol: f64) -> bool;

    fn inv(&self) -> Option<Self>;

    /// Nonnegative square root. Exact for rationals, which must be perfect squares.
    fn sqrt(&self) -> Result<Self>;

    fn to_f64(&self) -> f64;

    fn is_negative(&self) -> bool;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(r: &Rational) -> Self {
        r.to_f64()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_zero_within(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
    fn inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
    fn sqrt(&self) -> Result<Self> {
        if *self < 0.0 {
            return Err(Error::NegativeInput);
        }
        Ok(f64::sqrt(*self))
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn pow(&self, exp: i32) -> Self {
        Rational(num::traits::Pow::pow(&self.0, exp))
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Rational::integer(v)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn add_ref(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }
    fn neg_ref(&self) -> Self {
        Rational(-&self.0)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.0 += &other.0;
    }
    fn is_exact_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_zero_within(&self, _tol: f64) -> bool {
        self.0.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }
    fn sqrt(&self) -> Result<Self> {
        if self.0.is_negative() {
            return Err(Error::NegativeInput);
        }
        match (exact_isqrt(self.0.numer()), exact_isqrt(self.0.denom())) {
            (Some(n), Some(d)) => Ok(Rational(BigRational::new(n, d))),
            _ => Err(Error::NotAPerfectSquare(self.to_string())),
        }
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl std::ops::Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        Rational(self.0 / rhs.0)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::integer(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `p/q`, integers, decimals and scientific notation into an exact value.
/// Decimal literals are converted exactly (`0.1` is `1/10`).
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::SyntaxError { pos: 0, message: format!("{msg}: {s:?}") };
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad("bad numerator"))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad("bad denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            return Ok(Rational(BigRational::new(n, d)));
        }
        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(i) => {
                let e: i32 = s[i + 1..].parse().map_err(|_| bad("bad exponent"))?;
                (&s[..i], e)
            }
            None => (s, 0),
        };
        let (negative, digits) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad("empty number"));
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad("not a number"));
        }
        let all: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| bad("not a number"))?;
        let scale = exponent - frac_part.len() as i32;
        let ten = BigInt::from(10);
        let mut value = if scale >= 0 {
            BigRational::from_integer(all * num::pow(ten, scale as usize))
        } else {
            BigRational::new(all, num::pow(ten, (-scale) as usize))
        };
        if negative {
            value = -value;
        }
        Ok(Rational(value))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a real literal (decimal or scientific), independent of locale.
pub fn parse_real(s: &str) -> Result<f64> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let q: Rational = format!("{}/{}", n.trim(), d.trim()).parse()?;
        return Ok(q.to_f64());
    }
    t.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::SyntaxError { pos: 0, message: format!("bad real literal {t:?}") })
}
