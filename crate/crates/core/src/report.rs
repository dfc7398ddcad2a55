//! Serializable verification and classification reports.
//!
//! Every rational is an exact `"p/q"` (or integer) string. The only floats
//! live in [`NumericRoots`], which is marked approximate and carries its
//! tolerance.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::classifier::{classify, Classification};
use crate::error::Result;
use crate::expr::{print_canonical, print_factored};
use crate::families::Family;
use crate::scalar::{rat_to_f64, Rat};
use crate::sturm::{isolate_real_roots, CertificateSummary};
use crate::verifier::{check_hypotheses, ode_residual, HypothesisReport, OdeIdentity};
use crate::{Poly, RatFun, RootInterval};

pub const FORMAT_VERSION: &str = "1.0";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroFreeSummary {
    pub zero_free: bool,
    pub numerator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisSummary {
    pub overall: bool,
    pub f_zeros_real: CertificateSummary,
    pub f_poles_real: CertificateSummary,
    pub fprime_zeros_real: CertificateSummary,
    pub fprime_poles_real: CertificateSummary,
    pub fpp_over_f_zerofree: ZeroFreeSummary,
    pub fpp_zeros_real: Option<CertificateSummary>,
    pub fpp_poles_real: Option<CertificateSummary>,
}

impl From<&HypothesisReport> for HypothesisSummary {
    fn from(r: &HypothesisReport) -> Self {
        Self {
            overall: r.overall,
            f_zeros_real: r.f_zeros_real.summary(),
            f_poles_real: r.f_poles_real.summary(),
            fprime_zeros_real: r.fprime_zeros_real.summary(),
            fprime_poles_real: r.fprime_poles_real.summary(),
            fpp_over_f_zerofree: ZeroFreeSummary {
                zero_free: r.fpp_over_f_zerofree.zero_free,
                numerator: r.fpp_over_f_zerofree.numerator.to_string(),
            },
            fpp_zeros_real: r.fpp_zeros_real.as_ref().map(|c| c.summary()),
            fpp_poles_real: r.fpp_poles_real.as_ref().map(|c| c.summary()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameSummary {
    pub scale: String,
    pub slope: String,
    pub shift: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum ClassificationSummary {
    #[serde(rename = "MATCH")]
    Match {
        family: String,
        conclusion: String,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        n: Option<usize>,
        #[serde(rename = "Q", skip_serializing_if = "Option::is_none", default)]
        q: Option<i64>,
        #[serde(rename = "K", skip_serializing_if = "Option::is_none", default)]
        k: Option<String>,
        frame: FrameSummary,
        /// `f / f''` of the input.
        s: String,
        /// The canonical member before the frame.
        canonical: String,
    },
    #[serde(rename = "NO_MATCH")]
    NoMatch {
        reason: String,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        s: Option<String>,
    },
}

impl ClassificationSummary {
    pub fn is_match(&self) -> bool {
        matches!(self, Self::Match { .. })
    }
}

/// Builds the summary; the canonical member is printed in expanded form.
pub fn summarize_classification(c: &Classification) -> Result<ClassificationSummary> {
    Ok(match c {
        Classification::Match(m) => {
            let (n, q, k) = match &m.spec.family {
                Family::Power { q } => (None, Some(*q), None),
                Family::F2 { n } | Family::F4 { n } => (Some(*n), None, None),
                Family::F3 { n, k } => (Some(*n), None, Some(k.to_string())),
                Family::BesselTrunc { terms } => (Some(*terms), None, None),
                _ => (None, None, None),
            };
            let tag = m.spec.tag();
            ClassificationSummary::Match {
                family: tag.name().into(),
                conclusion: tag.conclusion().into(),
                n,
                q,
                k,
                frame: FrameSummary {
                    scale: m.spec.frame.scale.to_string(),
                    slope: m.spec.frame.slope.to_string(),
                    shift: m.spec.frame.shift.to_string(),
                },
                s: m.s.to_string(),
                canonical: print_canonical(&m.spec.construct_canonical()?),
            }
        }
        Classification::NoMatch(nm) => ClassificationSummary::NoMatch {
            reason: nm.reason.to_string(),
            s: nm.s.as_ref().map(Poly::to_string),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OdeSummary {
    pub coefficient: String,
    pub constant: String,
    pub residual: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSummary {
    /// Exclusive lower end.
    pub lo: String,
    /// Inclusive upper end.
    pub hi: String,
}

impl From<&RootInterval> for IntervalSummary {
    fn from(r: &RootInterval) -> Self {
        Self {
            lo: r.lo.to_string(),
            hi: r.hi.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootCertificates {
    pub isolation_width: String,
    pub zeros: Vec<IntervalSummary>,
    pub poles: Vec<IntervalSummary>,
}

/// Float midpoints of the isolating intervals. Approximate by construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericRoots {
    pub approximate: bool,
    pub tolerance: String,
    pub zeros: Vec<f64>,
    pub poles: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub format_version: String,
    pub input: String,
    pub normalized: String,
    pub factored: String,
    pub m: i64,
    pub hypotheses: HypothesisSummary,
    pub classification: ClassificationSummary,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ode: Option<OdeSummary>,
    pub certificates: RootCertificates,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub numeric_roots: Option<NumericRoots>,
}

fn midpoints(v: &[RootInterval]) -> Vec<f64> {
    v.iter().map(|r| rat_to_f64(&((&r.lo + &r.hi) / crate::int(2)))).collect()
}

/// Runs the hypothesis checks, the classifier, optional ODE check and root isolation.
pub fn build_report(input: &str, f: &RatFun, ode: Option<&OdeIdentity>, width: &Rat, numeric: bool) -> Result<Report> {
    let hyp = check_hypotheses(f)?;
    let class = classify(f)?;
    let m = f.compute_m()?;
    let zeros = isolate_real_roots(f.num(), width)?;
    let poles = if f.den().is_constant() {
        Vec::new()
    } else {
        isolate_real_roots(f.den(), width)?
    };
    let ode = ode.map(|o| {
        let r = ode_residual(f, o);
        OdeSummary {
            coefficient: o.coefficient.to_string(),
            constant: o.constant.to_string(),
            holds: r.is_zero(),
            residual: print_canonical(&r),
        }
    });
    let numeric_roots = numeric.then(|| NumericRoots {
        approximate: true,
        tolerance: width.to_string(),
        zeros: midpoints(&zeros),
        poles: midpoints(&poles),
    });
    Ok(Report {
        format_version: FORMAT_VERSION.into(),
        input: input.into(),
        normalized: print_canonical(f),
        factored: print_factored(f),
        m,
        hypotheses: HypothesisSummary::from(&hyp),
        classification: summarize_classification(&class)?,
        ode,
        certificates: RootCertificates {
            isolation_width: width.to_string(),
            zeros: zeros.iter().map(IntervalSummary::from).collect(),
            poles: poles.iter().map(IntervalSummary::from).collect(),
        },
        numeric_roots,
    })
}

pub fn to_json(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("report serializes")
}

pub fn from_json(text: &str) -> serde_json::Result<Report> {
    serde_json::from_str(text)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cert_line(out: &mut String, label: &str, c: &CertificateSummary) {
    let _ = writeln!(
        out,
        "  {label:<22} {} ({} distinct, {} real)",
        yes(c.all_real),
        c.distinct_roots,
        c.distinct_real_roots
    );
}

fn intervals(out: &mut String, label: &str, v: &[IntervalSummary]) {
    if v.is_empty() {
        let _ = writeln!(out, "  {label}: none");
        return;
    }
    let _ = writeln!(out, "  {label}:");
    for r in v {
        let _ = writeln!(out, "    ({}, {}]", r.lo, r.hi);
    }
}

pub fn to_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "input:      {}", r.input);
    let _ = writeln!(out, "normalized: {}", r.normalized);
    let _ = writeln!(out, "factored:   {}", r.factored);
    let _ = writeln!(out, "m:          {}", r.m);
    let h = &r.hypotheses;
    let _ = writeln!(out, "hypotheses: {}", if h.overall { "PASS" } else { "FAIL" });
    cert_line(&mut out, "zeros of f real", &h.f_zeros_real);
    cert_line(&mut out, "poles of f real", &h.f_poles_real);
    cert_line(&mut out, "zeros of f' real", &h.fprime_zeros_real);
    cert_line(&mut out, "poles of f' real", &h.fprime_poles_real);
    let _ = writeln!(
        out,
        "  {:<22} {} (numerator {})",
        "f''/f zero-free",
        yes(h.fpp_over_f_zerofree.zero_free),
        h.fpp_over_f_zerofree.numerator
    );
    match (&h.fpp_zeros_real, &h.fpp_poles_real) {
        (Some(z), Some(p)) => {
            cert_line(&mut out, "zeros of f'' real", z);
            cert_line(&mut out, "poles of f'' real", p);
        }
        _ => {
            let _ = writeln!(out, "  f'' vanishes identically");
        }
    }
    match &r.classification {
        ClassificationSummary::Match { family, conclusion, n, q, k, frame, s, canonical } => {
            let mut params = String::new();
            if let Some(n) = n {
                let _ = write!(params, " n={n}");
            }
            if let Some(q) = q {
                let _ = write!(params, " Q={q}");
            }
            if let Some(k) = k {
                let _ = write!(params, " K={k}");
            }
            let _ = writeln!(out, "family:     {family} {conclusion}{params}");
            let _ = writeln!(out, "  frame (a1, a2, a3) = ({}, {}, {})", frame.scale, frame.slope, frame.shift);
            let _ = writeln!(out, "  canonical  {canonical}");
            let _ = writeln!(out, "  f/f''      {s}");
        }
        ClassificationSummary::NoMatch { reason, s } => {
            let _ = writeln!(out, "family:     NO_MATCH ({reason})");
            if let Some(s) = s {
                let _ = writeln!(out, "  f/f''      {s}");
            }
        }
    }
    if let Some(o) = &r.ode {
        let _ = writeln!(
            out,
            "ode:        ({})*y'' = {}*y: {} (residual {})",
            o.coefficient,
            o.constant,
            if o.holds { "holds" } else { "fails" },
            o.residual
        );
    }
    let _ = writeln!(out, "root intervals (width <= {}):", r.certificates.isolation_width);
    intervals(&mut out, "zeros", &r.certificates.zeros);
    intervals(&mut out, "poles", &r.certificates.poles);
    if let Some(nr) = &r.numeric_roots {
        let _ = writeln!(out, "approximate roots (tolerance {}):", nr.tolerance);
        let _ = writeln!(out, "  zeros: {:?}", nr.zeros);
        let _ = writeln!(out, "  poles: {:?}", nr.poles);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_ratfun;
    use crate::scalar::{int, rat};

    #[test]
    fn json_round_trip() {
        let f = parse_ratfun("8*(z-1)*(z-2)/z").unwrap();
        let ode = OdeIdentity::f3(1, &int(2)).unwrap();
        let r = build_report("8*(z-1)*(z-2)/z", &f, Some(&ode), &rat(1, 64), true).unwrap();
        let text = to_json(&r);
        assert_eq!(from_json(&text).unwrap(), r);
        assert!(r.hypotheses.overall);
        assert!(r.ode.as_ref().unwrap().holds);
        match &r.classification {
            ClassificationSummary::Match { family, n, k, .. } => {
                assert_eq!((family.as_str(), *n, k.as_deref()), ("F3", Some(1), Some("2")));
            }
            other => panic!("{other:?}"),
        }
        assert!(text.contains("\"status\": \"MATCH\""));
    }

    #[test]
    fn no_match_round_trip() {
        let f = parse_ratfun("2*z - 2/z").unwrap();
        let r = build_report("2*z - 2/z", &f, None, &rat(1, 8), false).unwrap();
        assert!(!r.hypotheses.overall);
        assert_eq!(from_json(&to_json(&r)).unwrap(), r);
        let f = parse_ratfun("z^2 + 1").unwrap();
        let r = build_report("z^2 + 1", &f, None, &rat(1, 8), false).unwrap();
        assert!(!r.classification.is_match());
        assert_eq!(from_json(&to_json(&r)).unwrap(), r);
        assert!(to_text(&r).contains("NO_MATCH"));
    }

    #[test]
    fn exact_strings_outside_numeric_section() {
        let f = parse_ratfun("24*(z-1)*(z-2)/z^2").unwrap();
        let r = build_report("p2", &f, None, &rat(1, 1000), false).unwrap();
        let v: serde_json::Value = serde_json::from_str(&to_json(&r)).unwrap();
        fn no_floats(v: &serde_json::Value) -> bool {
            match v {
                serde_json::Value::Number(n) => n.is_i64() || n.is_u64(),
                serde_json::Value::Array(a) => a.iter().all(no_floats),
                serde_json::Value::Object(o) => o.values().all(no_floats),
                _ => true,
            }
        }
        assert!(no_floats(&v));
    }
}
