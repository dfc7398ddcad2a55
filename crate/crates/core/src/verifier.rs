//! Exact checks of the real-zero hypotheses, ODE identities and zero
//! locations, plus certified enclosures for the entire Bessel-type solution.

use std::cmp::Ordering;
use std::ops::Bound;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::families::{build_bessel_truncation, factorial, Family, FamilySpec, FamilyTag, Frame};
use crate::scalar::{int, Rat};
use crate::sturm::{certify_all_roots_real, SturmChain};
use crate::{Poly, RatFun, RootCertificate};

/// Whether `f''/f` is zero-free, with its reduced numerator as evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroFreeCheck {
    pub zero_free: bool,
    pub numerator: Poly,
}

/// Real-zero hypotheses for a rational `f`.
///
/// `overall` is the conjunction of the four real-rootedness certificates for
/// `f`, `f'` and the zero-free test on `f''/f`. The two `f''` certificates
/// are reported alongside but are not part of `overall`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub f_zeros_real: RootCertificate,
    pub f_poles_real: RootCertificate,
    pub fprime_zeros_real: RootCertificate,
    pub fprime_poles_real: RootCertificate,
    pub fpp_over_f_zerofree: ZeroFreeCheck,
    /// `None` when `f''` vanishes identically.
    pub fpp_zeros_real: Option<RootCertificate>,
    pub fpp_poles_real: Option<RootCertificate>,
    pub overall: bool,
}

impl HypothesisReport {
    /// `overall` plus real zeros and poles of `f''`.
    pub fn with_second_derivative(&self) -> bool {
        self.overall
            && self.fpp_zeros_real.as_ref().is_some_and(|c| c.all_real)
            && self.fpp_poles_real.as_ref().is_some_and(|c| c.all_real)
    }
}

fn certify_num_den(g: &RatFun) -> Result<(RootCertificate, RootCertificate)> {
    Ok((certify_all_roots_real(g.num())?, certify_all_roots_real(g.den())?))
}

pub fn check_hypotheses(f: &RatFun) -> Result<HypothesisReport> {
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let fp = f.derivative();
    let fpp = fp.derivative();
    let (f_zeros_real, f_poles_real) = certify_num_den(f)?;
    let (fprime_zeros_real, fprime_poles_real) = certify_num_den(&fp)?;

    let (fpp_over_f_zerofree, fpp_zeros_real, fpp_poles_real) = if fpp.is_zero() {
        let check = ZeroFreeCheck {
            zero_free: false,
            numerator: Poly::zero(),
        };
        (check, None, None)
    } else {
        let q = fpp.checked_div(f)?;
        let check = ZeroFreeCheck {
            zero_free: q.num().is_constant(),
            numerator: q.num().clone(),
        };
        let (z, p) = certify_num_den(&fpp)?;
        (check, Some(z), Some(p))
    };

    let overall = f_zeros_real.all_real
        && f_poles_real.all_real
        && fprime_zeros_real.all_real
        && fprime_poles_real.all_real
        && fpp_over_f_zerofree.zero_free;
    Ok(HypothesisReport {
        f_zeros_real,
        f_poles_real,
        fprime_zeros_real,
        fprime_poles_real,
        fpp_over_f_zerofree,
        fpp_zeros_real,
        fpp_poles_real,
        overall,
    })
}

/// `P(z) y'' = c y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeIdentity {
    pub coefficient: Poly,
    pub constant: Rat,
}

impl OdeIdentity {
    pub fn new(coefficient: Poly, constant: Rat) -> Result<Self> {
        if coefficient.is_zero() || constant.is_zero() {
            return Err(Error::InvalidParameter(
                "ODE needs a nonzero coefficient and constant".into(),
            ));
        }
        Ok(Self {
            coefficient,
            constant,
        })
    }

    /// `z(z-1) y'' = n(n-1) y`
    pub fn f2(n: usize) -> Result<Self> {
        let n = n as i64;
        Self::new(Poly::from_ints(&[0, -1, 1]), int(n * (n - 1)))
    }

    /// `z²(z-1)(z-K) y'' = K n(n+1) y`
    pub fn f3(n: usize, k: &Rat) -> Result<Self> {
        let n = n as i64;
        let p = &Poly::from_ints(&[0, 0, -1, 1]) * &Poly::linear_root(k.clone());
        Self::new(p, k * int(n * (n + 1)))
    }

    /// `z²(z-1) y'' = -n(n+1) y`
    pub fn f4(n: usize) -> Result<Self> {
        let n = n as i64;
        Self::new(Poly::from_ints(&[0, 0, -1, 1]), int(-n * (n + 1)))
    }

    /// `z² y'' = Q(Q-1) y`
    pub fn power(q: i64) -> Result<Self> {
        Self::new(Poly::from_ints(&[0, 0, 1]), int(q * (q - 1)))
    }

    /// `z y'' = y`
    pub fn bessel() -> Self {
        Self::new(Poly::x(), Rat::one()).expect("nonzero")
    }
}

/// `P f'' - c f`, reduced; zero iff `f` solves the equation exactly.
pub fn ode_residual(f: &RatFun, ode: &OdeIdentity) -> RatFun {
    let lhs = &RatFun::from_poly(ode.coefficient.clone()) * &f.nth_derivative(2);
    &lhs - &f.scale(&ode.constant)
}

/// `z T_N'' - T_N`, which equals `-z^(N+1) / (N! (N+1)!)`.
pub fn bessel_truncation_residual(terms: usize) -> Result<Poly> {
    let t = build_bessel_truncation(terms)?;
    Ok(&(&Poly::x() * &t.nth_derivative(2)) - &t)
}

/// One interval-containment claim about the zeros of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocationCheck {
    pub subject: String,
    pub region: String,
    /// Number of distinct roots the claim requires in the region, if fixed.
    pub expected: Option<usize>,
    pub found: usize,
    pub distinct_roots: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocationReport {
    pub tag: FamilyTag,
    pub checks: Vec<LocationCheck>,
    pub holds: bool,
}

fn describe(lo: &Bound<Rat>, hi: &Bound<Rat>) -> String {
    let left = match lo {
        Bound::Included(a) => format!("[{a}"),
        Bound::Excluded(a) => format!("({a}"),
        Bound::Unbounded => "(-inf".into(),
    };
    let right = match hi {
        Bound::Included(b) => format!("{b}]"),
        Bound::Excluded(b) => format!("{b})"),
        Bound::Unbounded => "+inf)".into(),
    };
    format!("{left}, {right}")
}

fn map_bound(b: &Bound<Rat>, frame: &Frame) -> Bound<Rat> {
    match b {
        Bound::Included(w) => Bound::Included(frame.pull_back(w)),
        Bound::Excluded(w) => Bound::Excluded(frame.pull_back(w)),
        Bound::Unbounded => Bound::Unbounded,
    }
}

/// Pulls a region of the canonical variable back through `α₂ z + α₃ = w`.
fn pull_back_region(lo: Bound<Rat>, hi: Bound<Rat>, frame: &Frame) -> (Bound<Rat>, Bound<Rat>) {
    let (a, b) = (map_bound(&lo, frame), map_bound(&hi, frame));
    if frame.slope.is_negative() {
        (b, a)
    } else {
        (a, b)
    }
}

/// Every distinct root of `p` lies in the region, and the count there is `expected`.
fn region_check(
    subject: &str,
    p: &Poly,
    lo: Bound<Rat>,
    hi: Bound<Rat>,
    expected: Option<usize>,
    frame: &Frame,
) -> Result<LocationCheck> {
    let (lo, hi) = pull_back_region(lo, hi, frame);
    let chain = SturmChain::new(p)?;
    let distinct_roots = chain.source().degree().unwrap_or(0);
    let found = chain.count_between(lo.as_ref(), hi.as_ref());
    let holds = found == distinct_roots && expected.is_none_or(|e| e == found);
    Ok(LocationCheck {
        subject: subject.into(),
        region: describe(&lo, &hi),
        expected,
        found,
        distinct_roots,
        holds,
    })
}

/// Certifies the zero-location claims attached to each family.
///
/// - F2: zeros of `g` and `g'` in `[0, 1]`, all simple.
/// - F3: zeros of the numerator real and simple; for `K > 1` there are
///   `n + 1` of them, all in `(0, ∞)`.
/// - F4: zeros of `g` and `g'` in `[1, ∞)`.
/// - BESSEL_TRUNC: every real zero of `T_N` lies in `(-∞, 0]`.
/// - POWER: zeros and poles only at `0`.
///
/// Regions are stated for the canonical variable and pulled back through the frame.
pub fn check_zero_locations(spec: &FamilySpec, g: &RatFun) -> Result<LocationReport> {
    let built = spec.construct()?;
    if built != *g {
        return Err(Error::FamilyMismatch(format!(
            "{} instance does not match its construction",
            spec.tag()
        )));
    }
    let frame = &spec.frame;
    let inc = |x: i64| Bound::Included(int(x));
    let exc = |x: i64| Bound::Excluded(int(x));
    let full_degree = |p: &Poly| Some(p.degree().unwrap_or(0));
    let gp = g.derivative();
    let checks = match &spec.family {
        Family::F2 { .. } => vec![
            region_check("zeros of g", g.num(), inc(0), inc(1), full_degree(g.num()), frame)?,
            region_check("zeros of g'", gp.num(), inc(0), inc(1), full_degree(gp.num()), frame)?,
        ],
        Family::F3 { n, k } => {
            let p = g.num();
            let mut v = vec![region_check(
                "zeros of P (real, simple)",
                p,
                Bound::Unbounded,
                Bound::Unbounded,
                full_degree(p),
                frame,
            )?];
            if *k > Rat::one() {
                v.push(region_check("zeros of P", p, exc(0), Bound::Unbounded, Some(n + 1), frame)?);
            }
            v
        }
        Family::F4 { .. } => vec![
            region_check("zeros of g", g.num(), inc(1), Bound::Unbounded, full_degree(g.num()), frame)?,
            region_check("zeros of g'", gp.num(), inc(1), Bound::Unbounded, full_degree(gp.num()), frame)?,
        ],
        Family::BesselTrunc { .. } => vec![region_check(
            "real zeros of T_N",
            g.num(),
            Bound::Unbounded,
            inc(0),
            None,
            frame,
        )
        .map(|mut c| {
            // only the real roots are claimed to be non-positive
            let real = SturmChain::new(g.num())
                .map(|ch| ch.count_between(Bound::Unbounded, Bound::Unbounded))
                .unwrap_or(0);
            c.holds = c.found == real;
            c
        })?],
        Family::Power { .. } => vec![
            region_check("zeros of g", g.num(), inc(0), inc(0), None, frame)?,
            region_check("poles of g", g.den(), inc(0), inc(0), None, frame)?,
        ],
        other => {
            return Err(Error::CatalogOnly {
                tag: other.tag().name(),
            })
        }
    };
    let holds = checks.iter().all(|c| c.holds);
    Ok(LocationReport {
        tag: spec.tag(),
        checks,
        holds,
    })
}

/// Closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rat,
    pub hi: Rat,
}

impl Enclosure {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        *x >= self.lo && *x <= self.hi
    }

    pub fn contains_interval(&self, other: &Enclosure) -> bool {
        other.lo >= self.lo && other.hi <= self.hi
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / int(2)
    }
}

/// Encloses `f₄(x) = Σ x^(k+1) / (k! (k+1)!)` with width at most `2·abs_tol`.
///
/// Once `N ≥ 2|x|` successive terms shrink by at least half, so the tail
/// after `T_N` is bounded by twice its first term.
pub fn f4_eval_certified(x: &Rat, abs_tol: &Rat) -> Result<Enclosure> {
    if !abs_tol.is_positive() {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    if x.is_zero() {
        return Ok(Enclosure {
            lo: Rat::zero(),
            hi: Rat::zero(),
        });
    }
    let min_terms = (x.abs() * int(2)).ceil();
    let mut sum = Rat::zero();
    let mut term = x.clone();
    let mut k: usize = 0;
    loop {
        sum += &term;
        let next = &term * x / Rat::from_integer(BigInt::from((k + 1) * (k + 2)));
        let tail = next.abs() * int(2);
        if int(k as i64) >= min_terms && tail < *abs_tol {
            return Ok(Enclosure {
                lo: &sum - &tail,
                hi: &sum + &tail,
            });
        }
        term = next;
        k += 1;
    }
}

/// Sign of `f₄(x)`, or `None` if no enclosure down to `10^-60` excludes zero.
pub fn f4_sign(x: &Rat) -> Option<Ordering> {
    let mut tol = Rat::new(BigInt::one(), BigInt::from(1_000_000));
    let step = tol.clone();
    for _ in 0..10 {
        let e = f4_eval_certified(x, &tol).ok()?;
        if e.lo.is_positive() {
            return Some(Ordering::Greater);
        }
        if e.hi.is_negative() {
            return Some(Ordering::Less);
        }
        if e.lo.is_zero() && e.hi.is_zero() {
            return Some(Ordering::Equal);
        }
        tol *= &step;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSearch {
    /// Enclosures ordered from the root nearest zero outward.
    pub roots: Vec<Enclosure>,
    /// False when fewer sign changes were found than requested.
    pub complete: bool,
    /// Final grid step.
    pub grid_step: Rat,
}

/// Brackets the first `count` roots of `f₄` in `[-search_bound, 0)` and
/// bisects each to width at most `10^-6`.
///
/// The grid starts at step `1/4` and halves down to `1/64` while too few
/// sign changes are seen. Consecutive negative roots are more than 8 apart,
/// so a finer grid only matters for roots hugging the search bound.
pub fn f4_negative_roots(search_bound: &Rat, count: usize) -> Result<RootSearch> {
    if !search_bound.is_positive() {
        return Err(Error::InvalidParameter("search bound must be positive".into()));
    }
    let min_step = Rat::new(BigInt::one(), BigInt::from(64));
    let mut step = Rat::new(BigInt::one(), BigInt::from(4));
    let brackets = loop {
        let brackets = sign_change_brackets(search_bound, &step);
        if brackets.len() >= count || step <= min_step {
            break brackets;
        }
        step /= int(2);
    };
    let target = Rat::new(BigInt::one(), BigInt::from(1_000_000));
    let roots: Vec<Enclosure> = brackets
        .into_iter()
        .take(count)
        .map(|(lo, hi)| bisect_f4(lo, hi, &target))
        .collect();
    Ok(RootSearch {
        complete: roots.len() >= count,
        roots,
        grid_step: step,
    })
}

/// Grid brackets `(lo, hi)` with a sign change, nearest zero first.
fn sign_change_brackets(bound: &Rat, step: &Rat) -> Vec<(Rat, Rat)> {
    let mut out = Vec::new();
    let mut x = -step.clone();
    let mut prev: Option<(Rat, Ordering)> = None;
    let lower = -bound.clone();
    while x >= lower {
        if let Some(s) = f4_sign(&x).filter(|s| *s != Ordering::Equal) {
            if let Some((px, ps)) = &prev {
                if *ps != s {
                    out.push((x.clone(), px.clone()));
                }
            }
            prev = Some((x.clone(), s));
        }
        x -= step;
    }
    out
}

fn bisect_f4(mut lo: Rat, mut hi: Rat, width: &Rat) -> Enclosure {
    let lo_sign = f4_sign(&lo);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / int(2);
        match f4_sign(&mid) {
            Some(Ordering::Equal) => {
                return Enclosure {
                    lo: mid.clone(),
                    hi: mid,
                }
            }
            s if s == lo_sign => lo = mid,
            Some(_) => hi = mid,
            None => break,
        }
    }
    Enclosure { lo, hi }
}

/// `-z^(N+1) / (N! (N+1)!)`, the exact truncation residual.
pub fn expected_bessel_residual(terms: usize) -> Poly {
    Poly::monomial(
        -Rat::new(BigInt::one(), factorial(terms) * factorial(terms + 1)),
        terms + 1,
    )
}
