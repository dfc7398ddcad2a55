//! Dense univariate polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{ExactField, Scalar};

/// Dense polynomial with coefficients in ascending degree order.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x - root`
    pub fn linear_root(root: T) -> Self {
        Self::new(vec![-root, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * T::from_int(i as i64))
            .collect();
        Self::new(coeffs)
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|x| x.clone() * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `p(alpha * x + beta)`.
    pub fn compose_affine(&self, alpha: &T, beta: &T) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::InvalidParameter(
                "affine substitution needs a nonzero slope".into(),
            ));
        }
        let inner = Self::new(vec![beta.clone(), alpha.clone()]);
        Ok(self.compose(&inner))
    }

    /// `p(q(x))` by Horner's scheme.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![T::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd].clone() / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= q.clone() * d;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient; `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = T::one() / lc;
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Multiplicity of `root` as a zero.
    pub fn root_multiplicity(&self, root: &T) -> usize {
        if self.is_zero() {
            return 0;
        }
        let lin = Self::linear_root(root.clone());
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.exact_div(&lin) {
            p = q;
            k += 1;
        }
        k
    }

    /// Human-readable form in the given variable, descending powers.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one();
            match i {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !unit {
                        out.push_str(&format!("{mag}*"));
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }
}

impl<T: ExactField> Polynomial<T> {
    /// Positive scalar multiple with integral, coprime coefficients.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = T::content(&self.coeffs);
        Self::new(self.coeffs.iter().map(|x| x.clone() / &c).collect())
    }

    /// Remainder of `self` by `divisor` up to a positive factor, made primitive.
    ///
    /// Uses pseudo-division with `|lc(divisor)|` so the result has the same
    /// sign pattern as the true Euclidean remainder.
    pub fn positive_pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let divisor = divisor.primitive_part();
        let num = self.primitive_part();
        if let (Some(a), Some(b)) = (T::as_integers(&num.coeffs), T::as_integers(&divisor.coeffs)) {
            let r = integer_pseudo_rem(a, &b);
            return Self::new(r.into_iter().map(T::from_bigint).collect());
        }
        let lead = divisor.coeffs[dd].clone();
        let lead_abs = lead.abs();
        let lead_sign = lead.signum();
        let mut rem = num.coeffs;
        while rem.len() > dd {
            let top = rem.len() - 1;
            let k = top - dd;
            let r_lead = rem[top].clone();
            for x in rem.iter_mut() {
                *x *= &lead_abs;
            }
            let factor = r_lead * &lead_sign;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= factor.clone() * d;
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Self::new(rem).primitive_part()
    }

    /// `Some(k)` when `self = c z^k`.
    fn as_monomial(&self) -> Option<usize> {
        let d = self.degree()?;
        self.coeffs[..d].iter().all(|c| c.is_zero()).then_some(d)
    }

    fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial("gcd"));
        }
        // gcd with c z^k is a power of z
        for (m, p) in [(self, other), (other, self)] {
            if let Some(k) = m.as_monomial() {
                let j = if p.is_zero() { k } else { k.min(p.low_order()) };
                return Ok(Self::monomial(T::one(), j));
            }
        }
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.positive_pseudo_rem(&b);
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `p / gcd(p, p')`, monic: the same roots, all simple.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("square-free part"));
        }
        if self.is_constant() {
            return Ok(Self::one());
        }
        let g = self.gcd(&self.derivative())?;
        let q = self
            .exact_div(&g)
            .expect("gcd divides its argument exactly");
        Ok(q.monic())
    }
}

/// Pseudo-remainder over the integers, sign-preserving, made primitive.
fn integer_pseudo_rem(mut rem: Vec<BigInt>, divisor: &[BigInt]) -> Vec<BigInt> {
    let dd = divisor.len() - 1;
    let lead = &divisor[dd];
    let lead_abs = lead.abs();
    let negative = lead.is_negative();
    let trim = |v: &mut Vec<BigInt>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    };
    trim(&mut rem);
    while rem.len() > dd {
        let top = rem.len() - 1;
        let k = top - dd;
        let factor = if negative { -rem[top].clone() } else { rem[top].clone() };
        for x in rem.iter_mut() {
            *x *= &lead_abs;
        }
        for (j, d) in divisor.iter().enumerate() {
            rem[k + j] -= &factor * d;
        }
        trim(&mut rem);
    }
    let content = rem.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for x in rem.iter_mut() {
            *x /= &content;
        }
    }
    rem
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("z"))
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: Self) -> Polynomial<T> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Polynomial::new(coeffs)
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: Self) -> Polynomial<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a.clone() * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<T: Scalar> $tr for Polynomial<T> {
            type Output = Polynomial<T>;
            fn $m(self, rhs: Self) -> Polynomial<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<T: Scalar> Neg for Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        -&self
    }
}
