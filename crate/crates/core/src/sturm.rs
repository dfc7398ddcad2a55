//! Sturm chains and certified real-root counting.
//!
//! Counts are of DISTINCT real roots. Every query first passes to the
//! square-free part, so a chain always ends in a nonzero constant.

use std::cmp::Ordering;
use std::ops::Bound;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::ExactField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain<T> {
    chain: Vec<Polynomial<T>>,
    bound: T,
}

impl<T: ExactField> SturmChain<T> {
    /// Chain of the square-free part of `p`.
    pub fn new(p: &Polynomial<T>) -> Result<Self> {
        let source = p.squarefree_part()?;
        let mut chain = vec![source.clone(), source.derivative()];
        while !chain[chain.len() - 1].is_zero() {
            let n = chain.len();
            let r = chain[n - 2].positive_pseudo_rem(&chain[n - 1]);
            chain.push(-r);
        }
        chain.pop();
        // positive rescaling keeps every sign; integer coefficients evaluate faster
        let chain: Vec<_> = chain.iter().map(Polynomial::primitive_part).collect();
        let bound = cauchy_bound(&chain[0]);
        Ok(Self { chain, bound })
    }

    pub fn source(&self) -> &Polynomial<T> {
        &self.chain[0]
    }

    pub fn polys(&self) -> &[Polynomial<T>] {
        &self.chain
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Sign variations at `x`, zeros skipped.
    pub fn variations_at(&self, x: &T) -> usize {
        count_variations(self.chain.iter().map(|p| T::sign_at(p.coeffs(), x)))
    }

    fn variations_at_bound(&self, b: &Bound<&T>, cauchy: &T, upper: bool) -> usize {
        match b {
            Bound::Included(x) | Bound::Excluded(x) => self.variations_at(x),
            Bound::Unbounded if upper => self.variations_at(cauchy),
            Bound::Unbounded => self.variations_at(&-cauchy.clone()),
        }
    }

    /// Distinct real roots of the source between the given bounds.
    ///
    /// Infinite ends are evaluated at the Cauchy bound of the source.
    pub fn count_between(&self, lo: Bound<&T>, hi: Bound<&T>) -> usize {
        let source = self.source();
        if source.is_constant() {
            return 0;
        }
        let v_lo = self.variations_at_bound(&lo, &self.bound, false);
        let v_hi = self.variations_at_bound(&hi, &self.bound, true);
        // V(a) - V(b) counts roots in (a, b]
        let mut count = v_lo as isize - v_hi as isize;
        if let Bound::Included(a) = lo {
            if T::sign_at(source.coeffs(), a) == Ordering::Equal {
                count += 1;
            }
        }
        if let Bound::Excluded(b) = hi {
            if T::sign_at(source.coeffs(), b) == Ordering::Equal {
                count -= 1;
            }
        }
        count.max(0) as usize
    }
}

fn count_variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        let pos = s == Ordering::Greater;
        if last.is_some_and(|l| l != pos) {
            changes += 1;
        }
        last = Some(pos);
    }
    changes
}

/// `1 + max |c_i| / |c_deg|`; every root lies strictly inside `(-B, B)`.
/// Zero for constants.
pub fn cauchy_bound<T: ExactField>(p: &Polynomial<T>) -> T {
    let Some(d) = p.degree().filter(|&d| d > 0) else {
        return T::zero();
    };
    let lc = p.coeffs()[d].abs();
    let max = p.coeffs()[..d]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(T::zero);
    T::one() + max / lc
}

/// Distinct real roots of `p` in `(a, b]`; `None` means the matching infinity.
pub fn count_real_roots<T: ExactField>(
    p: &Polynomial<T>,
    a: Option<&T>,
    b: Option<&T>,
) -> Result<usize> {
    if let (Some(a), Some(b)) = (a, b) {
        if a >= b {
            return Err(Error::InvalidParameter("empty interval: need a < b".into()));
        }
    }
    let lo = a.map_or(Bound::Unbounded, Bound::Excluded);
    let hi = b.map_or(Bound::Unbounded, Bound::Included);
    Ok(SturmChain::new(p)?.count_between(lo, hi))
}

/// Distinct real roots of `p` between arbitrary bounds.
pub fn count_roots_in<T: ExactField>(p: &Polynomial<T>, lo: Bound<&T>, hi: Bound<&T>) -> Result<usize> {
    Ok(SturmChain::new(p)?.count_between(lo, hi))
}

/// Outcome of a real-rootedness check, with the chain that decided it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCertificate<T> {
    pub all_real: bool,
    /// Degree of the square-free part.
    pub distinct_roots: usize,
    pub distinct_real_roots: usize,
    pub chain: SturmChain<T>,
}

/// Summary of a [`RootCertificate`] without the chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub all_real: bool,
    pub distinct_roots: usize,
    pub distinct_real_roots: usize,
    pub chain_length: usize,
}

impl<T: ExactField> RootCertificate<T> {
    pub fn summary(&self) -> CertificateSummary {
        CertificateSummary {
            all_real: self.all_real,
            distinct_roots: self.distinct_roots,
            distinct_real_roots: self.distinct_real_roots,
            chain_length: self.chain.len(),
        }
    }
}

/// True iff every complex root of `p` is real.
pub fn certify_all_roots_real<T: ExactField>(p: &Polynomial<T>) -> Result<RootCertificate<T>> {
    let chain = SturmChain::new(p)?;
    let distinct_roots = chain.source().degree().unwrap_or(0);
    let distinct_real_roots = chain.count_between(Bound::Unbounded, Bound::Unbounded);
    Ok(RootCertificate {
        all_real: distinct_real_roots == distinct_roots,
        distinct_roots,
        distinct_real_roots,
        chain,
    })
}

/// Half-open interval `(lo, hi]` holding exactly one distinct real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: ExactField> RootInterval<T> {
    pub fn width(&self) -> T {
        self.hi.clone() - &self.lo
    }

    pub fn contains(&self, x: &T) -> bool {
        *x > self.lo && *x <= self.hi
    }
}

/// Isolates every distinct real root of `p` into `(lo, hi]` intervals of
/// width at most `max_width`, in ascending order.
pub fn isolate_real_roots<T: ExactField>(p: &Polynomial<T>, max_width: &T) -> Result<Vec<RootInterval<T>>> {
    let chain = SturmChain::new(p)?;
    let b = cauchy_bound(chain.source());
    if b.is_zero() {
        return Ok(Vec::new());
    }
    isolate_with(&chain, -b.clone(), b, max_width)
}

/// Like [`isolate_real_roots`] but restricted to roots in `(a, b]`.
pub fn isolate_real_roots_in<T: ExactField>(
    p: &Polynomial<T>,
    a: &T,
    b: &T,
    max_width: &T,
) -> Result<Vec<RootInterval<T>>> {
    if a >= b {
        return Err(Error::InvalidParameter("empty interval: need a < b".into()));
    }
    let chain = SturmChain::new(p)?;
    isolate_with(&chain, a.clone(), b.clone(), max_width)
}

fn isolate_with<T: ExactField>(
    chain: &SturmChain<T>,
    lo: T,
    hi: T,
    max_width: &T,
) -> Result<Vec<RootInterval<T>>> {
    if !max_width.is_positive() {
        return Err(Error::InvalidParameter("isolation width must be positive".into()));
    }
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count_between(Bound::Excluded(&lo), Bound::Included(&hi));
        if n == 0 {
            continue;
        }
        if n == 1 && hi.clone() - &lo <= *max_width {
            out.push(RootInterval { lo, hi });
            continue;
        }
        let mid = (lo.clone() + &hi) / T::two();
        // upper half pushed first so the lower half is processed first
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    Ok(out)
}
