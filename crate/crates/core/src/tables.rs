//! The nine worked examples: `g₁–g₃` (F3, K = 2), `h₁–h₄` (F3, K = -1)
//! and `p₁–p₃` (F4).

use std::fmt::Write as _;

use crate::error::Result;
use crate::expr::{parse_ratfun, print_canonical, print_factored};
use crate::families::{Family, FamilySpec};
use crate::scalar::int;
use crate::RatFun;

#[derive(Clone, Debug)]
pub struct WorkedExample {
    pub name: &'static str,
    pub spec: FamilySpec,
    /// The displayed closed form, transcribed into the expression language.
    pub displayed: &'static str,
}

impl WorkedExample {
    pub fn construct(&self) -> Result<RatFun> {
        self.spec.construct()
    }

    pub fn displayed_value(&self) -> Result<RatFun> {
        parse_ratfun(self.displayed)
    }
}

pub fn worked_examples() -> Vec<WorkedExample> {
    let f3 = |n, k| FamilySpec::canonical(Family::F3 { n, k: int(k) }).expect("valid");
    let f4 = |n| FamilySpec::canonical(Family::F4 { n }).expect("valid");
    vec![
        WorkedExample { name: "g1", spec: f3(1, 2), displayed: "8*(z-1)*(z-2)/z" },
        WorkedExample { name: "g2", spec: f3(2, 2), displayed: "144*(z-1)*(z-4/3)*(z-2)/z^2" },
        WorkedExample { name: "g3", spec: f3(3, 2), displayed: "384*(z-1)*(z-2)*(11*z^2-30*z+20)/z^3" },
        WorkedExample { name: "h1", spec: f3(1, -1), displayed: "2*(z^2-1)/z" },
        WorkedExample { name: "h2", spec: f3(2, -1), displayed: "-12*(z^2-1)/z^2" },
        WorkedExample { name: "h3", spec: f3(3, -1), displayed: "-24*(z^2-1)*(z^2-5)/z^3" },
        WorkedExample { name: "h4", spec: f3(4, -1), displayed: "720*(z^2-1)*(z^2-7/3)/z^4" },
        WorkedExample { name: "p1", spec: f4(1), displayed: "4*(z-1)/z" },
        WorkedExample { name: "p2", spec: f4(2), displayed: "24*(z-1)*(z-2)/z^2" },
        WorkedExample { name: "p3", spec: f4(3), displayed: "192*(z-1)*(z^2-5*z+5)/z^3" },
    ]
}

/// Text of the `tables` command.
pub fn render_tables() -> Result<String> {
    let mut out = String::new();
    let mut section = String::new();
    for ex in worked_examples() {
        let heading = match &ex.spec.family {
            Family::F3 { k, .. } => format!("F3 with K = {k}: (z - K)*H_n((K+1)/(K-1) - 2*K/((K-1)*z))"),
            _ => "F4: H_n(1 - 2/z)".to_string(),
        };
        if heading != section {
            if !section.is_empty() {
                out.push('\n');
            }
            let _ = writeln!(out, "# {heading}");
            section = heading;
        }
        let f = ex.construct()?;
        let n = match ex.spec.family {
            Family::F3 { n, .. } | Family::F4 { n } => n,
            _ => 0,
        };
        let _ = writeln!(out, "{} (n={n}) = {}", ex.name, print_canonical(&f));
        let _ = writeln!(out, "   factored = {}", print_factored(&f));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructions_match_displays() {
        for ex in worked_examples() {
            assert_eq!(ex.construct().unwrap(), ex.displayed_value().unwrap(), "{}", ex.name);
        }
    }
}
