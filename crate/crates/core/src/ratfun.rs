//! Reduced rational functions and the derived objects `f'/f` and `f/f''`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::ExactField;

/// `num / den` with `gcd(num, den) = 1` and `den` monic. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction<T> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

impl<T: ExactField> RationalFunction<T> {
    /// Cancels common factors and makes the denominator monic.
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().cloned().expect("nonzero denominator");
        let inv = T::one() / &lc;
        Ok(Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn from_poly(p: Polynomial<T>) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: T) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Polynomial::x())
    }

    pub fn num(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &T) -> Option<T> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Order of the pole at `x` (zero if `x` is not a pole).
    pub fn pole_order(&self, x: &T) -> usize {
        self.den.root_multiplicity(x)
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroFunction("reciprocal"));
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let mag = u32::try_from(e.unsigned_abs())
            .map_err(|_| Error::InvalidParameter(format!("exponent {e} out of range")))?;
        let base = if e < 0 { self.recip()? } else { self.clone() };
        Ok(Self {
            num: base.num.pow(mag),
            den: base.den.pow(mag),
        })
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        Self::new(num, den).expect("square of a nonzero denominator")
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |f, _| f.derivative())
    }

    /// `f'/f`, reduced. Every pole is simple.
    pub fn log_derivative(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroFunction("logarithmic derivative"));
        }
        self.derivative().checked_div(self)
    }

    /// `S = f / f''` as an exact polynomial.
    ///
    /// Requires `f''/f` to be zero-free in the whole plane, which for a
    /// rational function means its reduced numerator is a nonzero constant.
    pub fn f_over_fpp(&self) -> Result<Polynomial<T>> {
        if self.is_zero() {
            return Err(Error::ZeroFunction("f/f''"));
        }
        let fpp = self.nth_derivative(2);
        if fpp.is_zero() {
            return Err(Error::SecondDerivativeVanishes);
        }
        let q = fpp.checked_div(self)?;
        if !q.num.is_constant() {
            return Err(Error::HypothesisViolated {
                numerator: q.num.to_string(),
            });
        }
        let c = q.num.coeff(0);
        Ok(q.den.scale(&(T::one() / c)))
    }

    /// Zeros minus poles in the finite plane, with multiplicity.
    pub fn compute_m(&self) -> Result<i64> {
        if self.is_constant() {
            return Err(Error::ConstantFunction);
        }
        let dn = self.num.degree().unwrap_or(0) as i64;
        let dd = self.den.degree().unwrap_or(0) as i64;
        Ok(dn - dd)
    }

    /// `f(alpha * x + beta)`.
    pub fn compose_affine(&self, alpha: &T, beta: &T) -> Result<Self> {
        let num = self.num.compose_affine(alpha, beta)?;
        let den = self.den.compose_affine(alpha, beta)?;
        Self::new(num, den)
    }
}

impl<T: ExactField> fmt::Display for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<T: ExactField> Add for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn add(self, rhs: Self) -> RationalFunction<T> {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl<T: ExactField> Sub for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn sub(self, rhs: Self) -> RationalFunction<T> {
        self + &(-rhs)
    }
}

impl<T: ExactField> Neg for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn neg(self) -> RationalFunction<T> {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<T: ExactField> Mul for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn mul(self, rhs: Self) -> RationalFunction<T> {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

/// Real Möbius map `x -> (a x + b) / (c x + d)` with `ad - bc != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: ExactField> Mobius<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let det = a.clone() * &d - b.clone() * &c;
        if det.is_zero() {
            return Err(Error::InvalidParameter("degenerate Möbius map (ad - bc = 0)".into()));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn eval(&self, x: &T) -> Option<T> {
        let den = self.c.clone() * x + &self.d;
        (!den.is_zero()).then(|| (self.a.clone() * x + &self.b) / den)
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &Self) -> Self {
        let m = |p: &T, q: &T, r: &T, s: &T| p.clone() * q + r.clone() * s;
        Self {
            a: m(&self.a, &inner.a, &self.b, &inner.c),
            b: m(&self.a, &inner.b, &self.b, &inner.d),
            c: m(&self.c, &inner.a, &self.d, &inner.c),
            d: m(&self.c, &inner.b, &self.d, &inner.d),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    /// `p((a x + b) / (c x + d))`, reduced.
    pub fn substitute_into(&self, p: &Polynomial<T>) -> RationalFunction<T> {
        let Some(n) = p.degree() else {
            return RationalFunction::zero();
        };
        let top = Polynomial::new(vec![self.b.clone(), self.a.clone()]);
        let bottom = Polynomial::new(vec![self.d.clone(), self.c.clone()]);
        // sum_j p_j top^j bottom^(n-j) over bottom^n
        let mut top_pows = vec![Polynomial::one()];
        let mut bottom_pows = vec![Polynomial::one()];
        for _ in 0..n {
            top_pows.push(&top_pows[top_pows.len() - 1] * &top);
            bottom_pows.push(&bottom_pows[bottom_pows.len() - 1] * &bottom);
        }
        let num = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Polynomial::zero(), |acc, (j, c)| {
                &acc + &(&top_pows[j] * &bottom_pows[n - j]).scale(c)
            });
        RationalFunction::new(num, bottom_pows[n].clone()).expect("nondegenerate map")
    }
}
