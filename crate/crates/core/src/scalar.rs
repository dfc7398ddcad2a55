//! Scalar traits for the generic polynomial and rational-function types.
//!
//! [`Scalar`] is anything that behaves like a signed number (`f64`, [`Rat`]).
//! Arithmetic, evaluation and composition only need `Scalar`. Anything that
//! relies on exact cancellation (gcd, Sturm chains, reduced rational
//! functions) needs [`ExactField`], which only the exact rationals implement.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, NumAssignRef, NumRef, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational, the coefficient field everywhere.
pub type Rat = BigRational;

pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + NumRef + NumAssignRef + Signed + FromPrimitive + Send + Sync
{
    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every i64 is representable")
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + PartialEq + PartialOrd + NumRef + NumAssignRef + Signed + FromPrimitive + Send + Sync
{
}

/// A scalar field with exact division and a total order.
pub trait ExactField: Scalar + Ord + Eq {
    /// Positive `c` such that every `x / c` is an integer and the integers
    /// share no common factor. Returns one for an all-zero slice.
    fn content(values: &[Self]) -> Self;

    /// The values as integers, when they all are. Enables gcd-free fast paths.
    fn as_integers(_values: &[Self]) -> Option<Vec<BigInt>> {
        None
    }

    fn from_bigint(n: BigInt) -> Self;

    /// Sign of `Σ coeffs[i] x^i`.
    fn sign_at(coeffs: &[Self], x: &Self) -> Ordering {
        let v = coeffs.iter().rev().fold(Self::zero(), |acc, c| acc * x + c);
        v.cmp(&Self::zero())
    }
}

impl ExactField for BigRational {
    fn content(values: &[Self]) -> Self {
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for v in values.iter().filter(|v| !v.is_zero()) {
            den_lcm = den_lcm.lcm(v.denom());
            num_gcd = num_gcd.gcd(v.numer());
        }
        if num_gcd.is_zero() {
            return Self::one();
        }
        BigRational::new(num_gcd, den_lcm)
    }

    fn as_integers(values: &[Self]) -> Option<Vec<BigInt>> {
        values.iter().map(|v| v.is_integer().then(|| v.numer().clone())).collect()
    }

    fn from_bigint(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }

    /// Integer coefficients are evaluated as `Σ c_i p^i q^(d-i)` for `x = p/q`,
    /// which has the sign of the value and needs no gcd normalization.
    fn sign_at(coeffs: &[Self], x: &Self) -> Ordering {
        if !coeffs.iter().all(|c| c.is_integer()) {
            let v = coeffs.iter().rev().fold(Self::zero(), |acc, c| acc * x + c);
            return v.cmp(&Self::zero());
        }
        let (p, q) = (x.numer(), x.denom());
        let mut iter = coeffs.iter().rev();
        let Some(lead) = iter.next() else {
            return Ordering::Equal;
        };
        let mut acc = lead.numer().clone();
        let mut qpow = q.clone();
        for c in iter {
            acc = acc * p + c.numer() * &qpow;
            qpow *= q;
        }
        acc.cmp(&BigInt::zero())
    }
}

/// `numer / denom` as an exact rational. Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn bigint_to_rat(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// Parses `p`, `-p` or `p/q` with integer `p`, `q` (q nonzero).
pub fn parse_rat(text: &str) -> Result<Rat> {
    let bad = || Error::InvalidParameter(format!("malformed rational `{text}`"));
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rat::new(n, d))
}

/// Approximate conversion for display only.
pub fn rat_to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
