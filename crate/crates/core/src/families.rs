//! Exact constructors for the canonical solution families.
//!
//! | tag     | canonical form                               | ODE                                   |
//! |---------|----------------------------------------------|---------------------------------------|
//! | power   | `z^Q`, `Q ∉ {0, 1}`                          | `z² y'' = Q(Q-1) y`                   |
//! | f2      | `d^(n-2)/dz^(n-2) [z^(n-1) (z-1)^(n-1)]`     | `z(z-1) y'' = n(n-1) y`               |
//! | f3      | `(z-K) H_n((K+1)/(K-1) - 2K/((K-1)z))`       | `z²(z-1)(z-K) y'' = K n(n+1) y`       |
//! | f4      | `H_n(1 - 2/z)`                               | `z²(z-1) y'' = -n(n+1) y`             |
//! | bessel  | `Σ_{k≤N} z^(k+1) / (k!(k+1)!)`               | `z y'' = y` up to a single tail term  |
//!
//! with `H_n(w) = d^n/dw^n [(w-1)^(n-1) (w+1)^(n+1)]`. The sine, exponential
//! and tangent families are catalog entries only.

use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{bigint_to_rat, int, Rat};
use crate::{Mobius, Poly, RatFun};

static FACTORIALS: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();

/// `n!`, memoized for the life of the process.
pub fn factorial(n: usize) -> BigInt {
    let table = FACTORIALS.get_or_init(|| RwLock::new(vec![BigInt::one()]));
    {
        let t = table.read().expect("factorial table poisoned");
        if let Some(v) = t.get(n) {
            return v.clone();
        }
    }
    let mut t = table.write().expect("factorial table poisoned");
    while t.len() <= n {
        let k = t.len();
        let next = &t[k - 1] * BigInt::from(k);
        t.push(next);
    }
    t[n].clone()
}

fn sign_pow(exp: usize) -> BigInt {
    if exp.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Coefficients of `H_n` in the shifted variable `u = w + 1`:
/// `Σ_{k<n} b_k u^(k+1)` with
/// `b_k = (n-1)! (n+1+k)! (-2)^(n-1-k) / (k! (n-k-1)! (k+1)!)`.
pub fn hn_coeffs(n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::InvalidParameter("H_n needs n >= 1".into()));
    }
    let mut coeffs = vec![Rat::zero()];
    for k in 0..n {
        let top = factorial(n - 1) * factorial(n + 1 + k);
        let bottom = factorial(k) * factorial(n - k - 1) * factorial(k + 1);
        let two_pow = BigInt::from(2).pow((n - 1 - k) as u32) * sign_pow(n - 1 - k);
        coeffs.push(bigint_to_rat(top / bottom * two_pow));
    }
    Ok(Poly::new(coeffs))
}

/// `H_n(w)` by expanding `(w-1)^(n-1) (w+1)^(n+1)` and differentiating `n` times.
pub fn hn_by_differentiation(n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::InvalidParameter("H_n needs n >= 1".into()));
    }
    let g = &Poly::from_ints(&[-1, 1]).pow(n as u32 - 1) * &Poly::from_ints(&[1, 1]).pow(n as u32 + 1);
    Ok(g.nth_derivative(n))
}

/// `H_n(w)` in the variable `w`, from the closed form.
pub fn hn(n: usize) -> Result<Poly> {
    let h = hn_coeffs(n)?
        .compose_affine(&int(1), &int(1))
        .expect("unit slope");
    debug_assert_eq!(h, hn_by_differentiation(n)?, "H_{n}: closed form and derivative route disagree");
    Ok(h)
}

/// `F_2` from `a_k = (n-1)! (k+n-1)! (-1)^(n-1-k) / (k! (n-1-k)! (k+1)!)`.
pub fn f2_closed_form(n: usize) -> Result<Poly> {
    if n < 2 {
        return Err(Error::InvalidParameter("F_2 needs n >= 2".into()));
    }
    let mut coeffs = vec![Rat::zero()];
    for k in 0..n {
        let top = factorial(n - 1) * factorial(k + n - 1);
        let bottom = factorial(k) * factorial(n - 1 - k) * factorial(k + 1);
        coeffs.push(bigint_to_rat(top / bottom * sign_pow(n - 1 - k)));
    }
    Ok(Poly::new(coeffs))
}

/// `F_2` by differentiating `z^(n-1) (z-1)^(n-1)` exactly `n-2` times.
pub fn f2_by_differentiation(n: usize) -> Result<Poly> {
    if n < 2 {
        return Err(Error::InvalidParameter("F_2 needs n >= 2".into()));
    }
    let base = Poly::from_ints(&[0, -1, 1]).pow(n as u32 - 1);
    Ok(base.nth_derivative(n - 2))
}

pub fn build_f2(n: usize) -> Result<Poly> {
    let f = f2_closed_form(n)?;
    debug_assert_eq!(f, f2_by_differentiation(n)?, "F_2({n}): closed form and derivative route disagree");
    Ok(f)
}

/// Change of variable `w = (K+1)/(K-1) - 2K/((K-1) z)` as a Möbius map in `z`.
pub fn f3_substitution(k: &Rat) -> Result<Mobius> {
    check_k(k)?;
    let one = Rat::one();
    Mobius::new(k + &one, -(k * int(2)), k - &one, Rat::zero())
}

fn check_k(k: &Rat) -> Result<()> {
    if k.is_zero() || k.is_one() {
        return Err(Error::InvalidParameter(format!("K must avoid 0 and 1, got {k}")));
    }
    Ok(())
}

/// `F_3(z) = (z - K) H_n(w(z))`; reduced denominator is exactly `z^n`.
pub fn build_f3(n: usize, k: &Rat) -> Result<RatFun> {
    if n == 0 {
        return Err(Error::InvalidParameter("F_3 needs n >= 1".into()));
    }
    let h = f3_substitution(k)?.substitute_into(&hn(n)?);
    let lin = RatFun::from_poly(Poly::linear_root(k.clone()));
    Ok(&lin * &h)
}

/// `F_4(z) = H_n(1 - 2/z)`.
pub fn build_f4(n: usize) -> Result<RatFun> {
    if n == 0 {
        return Err(Error::InvalidParameter("F_4 needs n >= 1".into()));
    }
    let m = Mobius::new(int(1), int(-2), int(1), int(0))?;
    Ok(m.substitute_into(&hn(n)?))
}

/// Truncated series `T_N(z) = Σ_{k=0}^{N} z^(k+1) / (k! (k+1)!)`.
pub fn build_bessel_truncation(terms: usize) -> Result<Poly> {
    if terms == 0 {
        return Err(Error::InvalidParameter("Bessel truncation needs N >= 1".into()));
    }
    let mut coeffs = vec![Rat::zero()];
    for k in 0..=terms {
        coeffs.push(Rat::new(BigInt::one(), factorial(k) * factorial(k + 1)));
    }
    Ok(Poly::new(coeffs))
}

/// `z^Q` for `Q ∉ {0, 1}`.
pub fn build_power(q: i64) -> Result<RatFun> {
    if q == 0 || q == 1 {
        return Err(Error::InvalidParameter(format!("Q must avoid 0 and 1, got {q}")));
    }
    RatFun::x().powi(q)
}

/// Affine frame `g -> α₁ g(α₂ z + α₃)`, with `α₁ α₂ ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub scale: Rat,
    pub slope: Rat,
    pub shift: Rat,
}

impl Frame {
    pub fn new(scale: Rat, slope: Rat, shift: Rat) -> Result<Self> {
        if scale.is_zero() || slope.is_zero() {
            return Err(Error::InvalidParameter(
                "frame needs nonzero α₁ and α₂".into(),
            ));
        }
        Ok(Self { scale, slope, shift })
    }

    pub fn identity() -> Self {
        Self {
            scale: Rat::one(),
            slope: Rat::one(),
            shift: Rat::zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Maps a canonical-variable point `w` back to `z` with `α₂ z + α₃ = w`.
    pub fn pull_back(&self, w: &Rat) -> Rat {
        (w - &self.shift) / &self.slope
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.scale, self.slope, self.shift)
    }
}

/// `α₁ g(α₂ z + α₃)`: substitute first, scale second.
pub fn apply_frame(g: &RatFun, frame: &Frame) -> Result<RatFun> {
    if frame.scale.is_zero() || frame.slope.is_zero() {
        return Err(Error::InvalidParameter("frame needs nonzero α₁ and α₂".into()));
    }
    Ok(g.compose_affine(&frame.slope, &frame.shift)?.scale(&frame.scale))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    Sin,
    Exp,
    Tan,
    BesselTrunc,
    Power,
    F2,
    F3,
    F4,
}

impl FamilyTag {
    pub fn name(self) -> &'static str {
        match self {
            Self::Sin => "SIN",
            Self::Exp => "EXP",
            Self::Tan => "TAN",
            Self::BesselTrunc => "BESSEL_TRUNC",
            Self::Power => "POWER",
            Self::F2 => "F2",
            Self::F3 => "F3",
            Self::F4 => "F4",
        }
    }

    /// Roman-numeral label of the matching conclusion.
    pub fn conclusion(self) -> &'static str {
        match self {
            Self::Sin => "(i)",
            Self::Exp => "(ii)",
            Self::Tan => "(iii)",
            Self::BesselTrunc => "(iv)",
            Self::Power => "(v)",
            Self::F2 => "(vi)",
            Self::F3 => "(vii)",
            Self::F4 => "(viii)",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One canonical family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Power { q: i64 },
    F2 { n: usize },
    F3 { n: usize, k: Rat },
    F4 { n: usize },
    BesselTrunc { terms: usize },
    Sin,
    Exp,
    Tan,
}

impl Family {
    pub fn tag(&self) -> FamilyTag {
        match self {
            Self::Power { .. } => FamilyTag::Power,
            Self::F2 { .. } => FamilyTag::F2,
            Self::F3 { .. } => FamilyTag::F3,
            Self::F4 { .. } => FamilyTag::F4,
            Self::BesselTrunc { .. } => FamilyTag::BesselTrunc,
            Self::Sin => FamilyTag::Sin,
            Self::Exp => FamilyTag::Exp,
            Self::Tan => FamilyTag::Tan,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.into()));
        match self {
            Self::Power { q } if *q == 0 || *q == 1 => bad("POWER needs Q ∉ {0, 1}"),
            Self::F2 { n } if *n < 2 => bad("F2 needs n >= 2"),
            Self::F3 { n, .. } | Self::F4 { n } if *n == 0 => bad("F3/F4 need n >= 1"),
            Self::F3 { k, .. } => check_k(k),
            Self::BesselTrunc { terms: 0 } => bad("BESSEL_TRUNC needs at least one term"),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub frame: Frame,
}

impl FamilySpec {
    pub fn new(family: Family, frame: Frame) -> Result<Self> {
        family.validate()?;
        Ok(Self { family, frame })
    }

    pub fn canonical(family: Family) -> Result<Self> {
        Self::new(family, Frame::identity())
    }

    pub fn tag(&self) -> FamilyTag {
        self.family.tag()
    }

    /// The canonical member before the frame is applied.
    pub fn construct_canonical(&self) -> Result<RatFun> {
        match &self.family {
            Family::Power { q } => build_power(*q),
            Family::F2 { n } => build_f2(*n).map(RatFun::from_poly),
            Family::F3 { n, k } => build_f3(*n, k),
            Family::F4 { n } => build_f4(*n),
            Family::BesselTrunc { terms } => build_bessel_truncation(*terms).map(RatFun::from_poly),
            other => Err(Error::CatalogOnly {
                tag: other.tag().name(),
            }),
        }
    }

    pub fn construct(&self) -> Result<RatFun> {
        apply_frame(&self.construct_canonical()?, &self.frame)
    }
}

/// Exact absolute difference bound used by the K → ∞ limit checks.
pub fn max_coeff_gap(a: &Poly, b: &Poly) -> Rat {
    let len = a.coeffs().len().max(b.coeffs().len());
    (0..len)
        .map(|i| (a.coeff(i) - b.coeff(i)).abs())
        .max()
        .unwrap_or_else(Rat::zero)
}
