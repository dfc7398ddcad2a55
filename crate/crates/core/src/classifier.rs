//! Recovers the canonical family and affine frame of a rational function
//! whose `f''/f` is zero-free.
//!
//! Everything is read off `S = f/f''`, a polynomial of degree 2, 3 or 4:
//!
//! - degree 2, one double root `x₀`: `z^Q` translated to `x₀`, `Q = m`;
//! - degree 2, two simple roots: `F2`, roots sent to `{0, 1}`;
//! - degree 3, double root `x₀` and simple root `x₁`: `F4`, `x₀ → 0`, `x₁ → 1`;
//! - degree 4, double root `x₀` and simple roots `r₁, r₂`: `F3`, `x₀ → 0`,
//!   one simple root to `1` and `K` the image of the other.
//!
//! A candidate is only accepted after exact coefficientwise equality.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::families::{apply_frame, Family, FamilySpec, Frame};
use crate::scalar::{int, rat_sqrt, Rat};
use crate::{Poly, RatFun};

/// A verified match: `apply_frame(canonical, spec.frame) == input`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMatch {
    pub spec: FamilySpec,
    /// Zeros minus poles of the input.
    pub m: i64,
    /// `f / f''` of the input.
    pub s: Poly,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoMatchReason {
    /// `f''` vanishes identically.
    SecondDerivativeVanishes,
    /// `f''/f` has zeros; carries its reduced numerator.
    FppOverFHasZeros(Poly),
    /// A needed root of `S` is irrational.
    IrrationalRoots,
    /// `S` has non-real roots.
    NonRealRoots,
    /// Root multiplicities of `S` fit no family.
    UnsupportedShape,
    /// A candidate frame was found but exact equality failed.
    Mismatch,
}

impl fmt::Display for NoMatchReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SecondDerivativeVanishes => f.write_str("f'' vanishes identically"),
            Self::FppOverFHasZeros(p) => write!(f, "f''/f has zeros (numerator {p})"),
            Self::IrrationalRoots => f.write_str("NO_MATCH-IRRATIONAL: roots of f/f'' are irrational"),
            Self::NonRealRoots => f.write_str("roots of f/f'' are not real"),
            Self::UnsupportedShape => f.write_str("root structure of f/f'' fits no family"),
            Self::Mismatch => f.write_str("candidate family failed exact verification"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoMatch {
    pub reason: NoMatchReason,
    pub m: i64,
    pub s: Option<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Match(Box<FamilyMatch>),
    NoMatch(NoMatch),
}

impl Classification {
    pub fn matched(&self) -> Option<&FamilyMatch> {
        match self {
            Self::Match(m) => Some(m),
            Self::NoMatch(_) => None,
        }
    }
}

/// `K` if `|K| ≥ 1`, else `1/K`.
pub fn canonicalize_k(k: &Rat) -> Result<Rat> {
    if k.is_zero() || k.is_one() {
        return Err(Error::InvalidParameter(format!("K must avoid 0 and 1, got {k}")));
    }
    Ok(if k.abs() >= Rat::one() { k.clone() } else { k.recip() })
}

/// Finds `α₁` with `input = α₁ · canonical(α₂ z + α₃)`, verifying every coefficient.
pub fn recover_frame(input: &RatFun, canonical: &RatFun, slope: &Rat, shift: &Rat) -> Result<Option<Rat>> {
    if canonical.is_zero() {
        return Err(Error::ZeroFunction("frame recovery"));
    }
    let moved = canonical.compose_affine(slope, shift)?;
    if moved.den() != input.den() || moved.num().degree() != input.num().degree() {
        return Ok(None);
    }
    let (Some(a), Some(b)) = (input.num().leading(), moved.num().leading()) else {
        return Ok(None);
    };
    let scale = a / b;
    Ok((moved.num().scale(&scale) == *input.num()).then_some(scale))
}

/// Distinct real roots of a quadratic, ascending, if rational.
fn quadratic_roots(q: &Poly) -> std::result::Result<(Rat, Rat), NoMatchReason> {
    let (c, b, a) = (q.coeff(0), q.coeff(1), q.coeff(2));
    let disc = &b * &b - int(4) * &a * &c;
    if disc.is_negative() {
        return Err(NoMatchReason::NonRealRoots);
    }
    let root = rat_sqrt(&disc).ok_or(NoMatchReason::IrrationalRoots)?;
    let two_a = int(2) * &a;
    let r1 = (-&b - &root) / &two_a;
    let r2 = (-&b + &root) / &two_a;
    Ok(if r1 <= r2 { (r1, r2) } else { (r2, r1) })
}

/// The double root of `s`, when `gcd(s, s')` is linear.
fn double_root(s: &Poly) -> Option<Rat> {
    let g = s.gcd(&s.derivative()).ok()?;
    (g.degree() == Some(1)).then(|| -g.coeff(0))
}

fn frame_sending(from0: &Rat, from1: &Rat) -> (Rat, Rat) {
    let slope = (from1 - from0).recip();
    let shift = -(from0 * &slope);
    (slope, shift)
}

struct Candidate {
    family: Family,
    slope: Rat,
    shift: Rat,
}

pub fn classify(f: &RatFun) -> Result<Classification> {
    let m = f.compute_m()?;
    let s = match f.f_over_fpp() {
        Ok(s) => s,
        Err(Error::SecondDerivativeVanishes) => {
            return Ok(no_match(NoMatchReason::SecondDerivativeVanishes, m, None))
        }
        Err(Error::HypothesisViolated { .. }) => {
            let q = f.nth_derivative(2).checked_div(f)?;
            return Ok(no_match(NoMatchReason::FppOverFHasZeros(q.num().clone()), m, None));
        }
        Err(e) => return Err(e),
    };
    let candidates = match candidates_for(f, &s, m) {
        Ok(c) => c,
        Err(reason) => return Ok(no_match(reason, m, Some(s))),
    };
    let mut matches = Vec::new();
    for cand in candidates {
        if !constant_matches(&cand, &s) {
            continue;
        }
        let spec = FamilySpec::canonical(cand.family.clone())?;
        let canonical = spec.construct_canonical()?;
        if let Some(scale) = recover_frame(f, &canonical, &cand.slope, &cand.shift)? {
            let frame = Frame::new(scale, cand.slope, cand.shift)?;
            debug_assert_eq!(apply_frame(&canonical, &frame)?, *f);
            matches.push(FamilySpec::new(cand.family, frame)?);
        }
    }
    // prefer |K| >= 1, then a positive slope
    matches.sort_by_key(|spec| {
        let k_small = matches!(&spec.family, Family::F3 { k, .. } if k.abs() < Rat::one());
        (k_small, spec.frame.slope.is_negative())
    });
    Ok(match matches.into_iter().next() {
        Some(spec) => Classification::Match(Box::new(FamilyMatch {
            spec,
            m,
            s,
            exact: true,
        })),
        None => no_match(NoMatchReason::Mismatch, m, Some(s)),
    })
}

fn no_match(reason: NoMatchReason, m: i64, s: Option<Poly>) -> Classification {
    Classification::NoMatch(NoMatch { reason, m, s })
}

fn candidates_for(f: &RatFun, s: &Poly, m: i64) -> std::result::Result<Vec<Candidate>, NoMatchReason> {
    match s.degree() {
        Some(2) => {
            if let Some(x0) = double_root(s) {
                if m == 0 || m == 1 {
                    return Err(NoMatchReason::UnsupportedShape);
                }
                return Ok(vec![Candidate {
                    family: Family::Power { q: m },
                    slope: Rat::one(),
                    shift: -x0,
                }]);
            }
            let (a, b) = quadratic_roots(s)?;
            if !f.is_polynomial() {
                return Err(NoMatchReason::UnsupportedShape);
            }
            let n = f.num().degree().unwrap_or(0);
            if n < 2 {
                return Err(NoMatchReason::UnsupportedShape);
            }
            let (s1, t1) = frame_sending(&a, &b);
            let (s2, t2) = frame_sending(&b, &a);
            Ok(vec![
                Candidate { family: Family::F2 { n }, slope: s1, shift: t1 },
                Candidate { family: Family::F2 { n }, slope: s2, shift: t2 },
            ])
        }
        Some(3) => {
            let x0 = double_root(s).ok_or(NoMatchReason::UnsupportedShape)?;
            let rest = s
                .exact_div(&Poly::linear_root(x0.clone()).pow(2))
                .ok_or(NoMatchReason::UnsupportedShape)?;
            let x1 = -rest.coeff(0) / rest.coeff(1);
            if x1 == x0 {
                return Err(NoMatchReason::UnsupportedShape);
            }
            let n = f.pole_order(&x0);
            if n == 0 {
                return Err(NoMatchReason::UnsupportedShape);
            }
            let (slope, shift) = frame_sending(&x0, &x1);
            Ok(vec![Candidate { family: Family::F4 { n }, slope, shift }])
        }
        Some(4) => {
            let x0 = double_root(s).ok_or(NoMatchReason::UnsupportedShape)?;
            let rest = s
                .exact_div(&Poly::linear_root(x0.clone()).pow(2))
                .ok_or(NoMatchReason::UnsupportedShape)?;
            let (r1, r2) = quadratic_roots(&rest)?;
            if r1 == r2 || r1 == x0 || r2 == x0 {
                return Err(NoMatchReason::UnsupportedShape);
            }
            let n = f.pole_order(&x0);
            if n == 0 {
                return Err(NoMatchReason::UnsupportedShape);
            }
            let mut out = Vec::new();
            for (one, other) in [(&r1, &r2), (&r2, &r1)] {
                let (slope, shift) = frame_sending(&x0, one);
                let k = (other - &x0) / (one - &x0);
                out.push(Candidate { family: Family::F3 { n, k }, slope, shift });
            }
            Ok(out)
        }
        _ => Err(NoMatchReason::UnsupportedShape),
    }
}

/// Early rejection: the leading coefficient of `S` is fixed by the family
/// constant and the slope, since `S_input(z) = S_canonical(α₂ z + α₃) / α₂²`.
fn constant_matches(cand: &Candidate, s: &Poly) -> bool {
    let lc = s.leading().cloned().unwrap_or_else(Rat::zero);
    let n_of = |n: usize| n as i64;
    let expected = match &cand.family {
        Family::Power { q } => int(q * (q - 1)).recip(),
        Family::F2 { n } => int(n_of(*n) * (n_of(*n) - 1)).recip(),
        Family::F4 { n } => &cand.slope / int(-n_of(*n) * (n_of(*n) + 1)),
        Family::F3 { n, k } => {
            &cand.slope * &cand.slope / (k * int(n_of(*n) * (n_of(*n) + 1)))
        }
        _ => return false,
    };
    lc == expected
}

/// Convenience for reports: the tag parameters as small integers.
pub fn family_parameters(family: &Family) -> (Option<usize>, Option<i64>, Option<Rat>) {
    match family {
        Family::Power { q } => (None, Some(*q), None),
        Family::F2 { n } | Family::F4 { n } => (Some(*n), None, None),
        Family::F3 { n, k } => (Some(*n), None, Some(k.clone())),
        Family::BesselTrunc { terms } => (Some(*terms), None, None),
        _ => (None, None, None),
    }
}

/// `true` when `K` is a small integer (used by examples and reports).
pub fn k_as_i64(k: &Rat) -> Option<i64> {
    k.is_integer().then(|| k.to_integer().to_i64()).flatten()
}
