//! Command-line front end. [`run`] returns the exit status and the text that
//! would be printed, so tests can drive it without a subprocess.
//!
//! Exit status: 0 on success, 1 when a hypothesis, ODE or classification
//! check fails (the report is still printed), 2 on usage or parse errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use realrooted::expr::{parse_ratfun, print_canonical, print_factored};
use realrooted::families::{Family, FamilySpec, Frame};
use realrooted::report::{build_report, to_json, to_text, Report};
use realrooted::sturm::{isolate_real_roots, isolate_real_roots_in};
use realrooted::tables::render_tables;
use realrooted::verifier::{f4_negative_roots, OdeIdentity};
use realrooted::{parse_rat, scalar::rat_to_f64, Error, Rat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "realrooted", version, about = "Exact real-rootedness certificates for rational ODE solutions")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Power,
    F2,
    F3,
    F4,
    Bessel,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    #[default]
    Text,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Form {
    #[default]
    Factored,
    Canonical,
}

fn rational(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn frame_arg(s: &str) -> Result<Frame, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated rationals a1,a2,a3".into());
    }
    let v: Vec<Rat> = parts.iter().map(|p| rational(p)).collect::<Result<_, _>>()?;
    Frame::new(v[0].clone(), v[1].clone(), v[2].clone()).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a family member and print it exactly.
    Construct {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "K", value_parser = rational, allow_hyphen_values = true)]
        k: Option<Rat>,
        #[arg(long = "Q", allow_hyphen_values = true)]
        q: Option<i64>,
        #[arg(long)]
        terms: Option<usize>,
        /// a1,a2,a3 for a1*g(a2*z + a3)
        #[arg(long, value_parser = frame_arg, allow_hyphen_values = true)]
        frame: Option<Frame>,
        #[arg(long, value_enum, default_value_t)]
        form: Form,
    },
    /// Check the real-zero hypotheses and, optionally, an ODE P*y'' = c*y.
    Verify {
        #[arg(required_unless_present = "batch", conflicts_with = "batch", allow_hyphen_values = true)]
        expr: Option<String>,
        /// File with one expression per line; '#' starts a comment line.
        #[arg(long)]
        batch: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// P-EXPR and c
        #[arg(long, num_args = 2, value_names = ["P", "C"], allow_hyphen_values = true)]
        ode: Option<Vec<String>>,
        /// Width of the exact root intervals in the report.
        #[arg(long, value_parser = rational, default_value = "1/1024")]
        width: Rat,
        /// Add float midpoints of the root intervals.
        #[arg(long)]
        numeric: bool,
    },
    /// Match against the canonical families and recover the frame.
    Classify {
        #[arg(required_unless_present = "batch", conflicts_with = "batch", allow_hyphen_values = true)]
        expr: Option<String>,
        #[arg(long)]
        batch: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, value_parser = rational, default_value = "1/1024")]
        width: Rat,
    },
    /// Isolate the distinct real roots of the numerator in (a, b].
    Roots {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"], value_parser = rational, allow_hyphen_values = true)]
        interval: Option<Vec<Rat>>,
        #[arg(long, value_parser = rational, default_value = "1/1000000")]
        width: Rat,
    },
    /// Print the worked examples g1-g3, h1-h4, p1-p3.
    Tables,
    /// Certified enclosures of the first negative roots of f4.
    F4roots {
        #[arg(long, default_value_t = 2)]
        count: usize,
        #[arg(long, value_parser = rational, default_value = "20")]
        bound: Rat,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            (code, e.render().to_string())
        }
    }
}

fn usage(e: impl std::fmt::Display) -> (i32, String) {
    (EXIT_USAGE, format!("error: {e}\n"))
}

pub fn execute(cli: Cli) -> (i32, String) {
    match cli.command {
        Command::Construct { family, n, k, q, terms, frame, form } => construct(family, n, k, q, terms, frame, form),
        Command::Verify { expr, batch, format, ode, width, numeric } => {
            let ode = match ode.map(|v| parse_ode(&v[0], &v[1])).transpose() {
                Ok(o) => o,
                Err(e) => return usage(e),
            };
            let job = Job { mode: Mode::Verify, ode, width, numeric, format };
            dispatch(&job, expr, batch)
        }
        Command::Classify { expr, batch, format, width } => {
            let job = Job { mode: Mode::Classify, ode: None, width, numeric: false, format };
            dispatch(&job, expr, batch)
        }
        Command::Roots { expr, interval, width } => roots(&expr, interval, &width),
        Command::Tables => match render_tables() {
            Ok(t) => (EXIT_OK, t),
            Err(e) => (EXIT_FAILED, format!("error: {e}\n")),
        },
        Command::F4roots { count, bound } => f4roots(count, &bound),
    }
}

fn construct(
    family: FamilyArg,
    n: Option<usize>,
    k: Option<Rat>,
    q: Option<i64>,
    terms: Option<usize>,
    frame: Option<Frame>,
    form: Form,
) -> (i32, String) {
    let need_n = || n.ok_or("--n is required for this family");
    let fam = match family {
        FamilyArg::Power => q.ok_or("--Q is required for power").map(|q| Family::Power { q }),
        FamilyArg::F2 => need_n().map(|n| Family::F2 { n }),
        FamilyArg::F4 => need_n().map(|n| Family::F4 { n }),
        FamilyArg::F3 => need_n().and_then(|n| {
            k.clone().ok_or("--K is required for f3").map(|k| Family::F3 { n, k })
        }),
        FamilyArg::Bessel => terms.ok_or("--terms is required for bessel").map(|terms| Family::BesselTrunc { terms }),
    };
    let fam = match fam {
        Ok(f) => f,
        Err(e) => return usage(e),
    };
    let built = FamilySpec::new(fam, frame.unwrap_or_else(Frame::identity)).and_then(|s| s.construct());
    match built {
        Ok(f) => {
            let text = match form {
                Form::Factored => print_factored(&f),
                Form::Canonical => print_canonical(&f),
            };
            (EXIT_OK, format!("{text}\n"))
        }
        Err(e) => usage(e),
    }
}

fn parse_ode(p: &str, c: &str) -> Result<OdeIdentity, Error> {
    let coefficient = parse_ratfun(p)?;
    if !coefficient.is_polynomial() {
        return Err(Error::InvalidParameter(format!("ODE coefficient `{p}` is not a polynomial")));
    }
    OdeIdentity::new(coefficient.num().clone(), parse_rat(c)?)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Verify,
    Classify,
}

struct Job {
    mode: Mode,
    ode: Option<OdeIdentity>,
    width: Rat,
    numeric: bool,
    format: Format,
}

enum Outcome {
    Report(Box<Report>),
    Error(String, String),
}

impl Job {
    fn evaluate(&self, input: &str) -> Outcome {
        let built = parse_ratfun(input).and_then(|f| build_report(input, &f, self.ode.as_ref(), &self.width, self.numeric));
        match built {
            Ok(r) => Outcome::Report(Box::new(r)),
            Err(e) => Outcome::Error(input.to_string(), e.to_string()),
        }
    }

    fn status(&self, o: &Outcome) -> i32 {
        match o {
            Outcome::Error(..) => EXIT_USAGE,
            Outcome::Report(r) => {
                let ok = match self.mode {
                    Mode::Verify => r.hypotheses.overall && r.ode.as_ref().is_none_or(|o| o.holds),
                    Mode::Classify => r.classification.is_match(),
                };
                if ok {
                    EXIT_OK
                } else {
                    EXIT_FAILED
                }
            }
        }
    }

    fn json_value(&self, o: &Outcome) -> serde_json::Value {
        match o {
            Outcome::Report(r) => serde_json::from_str(&to_json(r)).expect("valid json"),
            Outcome::Error(input, msg) => serde_json::json!({ "input": input, "error": msg }),
        }
    }

    fn text(&self, o: &Outcome) -> String {
        match o {
            Outcome::Report(r) => to_text(r),
            Outcome::Error(input, msg) => format!("input:      {input}\nerror:      {msg}\n"),
        }
    }
}

fn dispatch(job: &Job, expr: Option<String>, batch: Option<PathBuf>) -> (i32, String) {
    if let Some(path) = batch {
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
        };
        return run_batch(job, &text);
    }
    let input = expr.expect("clap requires EXPR without --batch");
    let outcome = job.evaluate(&input);
    let status = job.status(&outcome);
    let out = match (job.format, &outcome) {
        (_, Outcome::Error(_, msg)) => format!("error: {msg}\n"),
        (Format::Json, o) => format!("{}\n", serde_json::to_string_pretty(&job.json_value(o)).expect("json")),
        (Format::Text, o) => job.text(o),
    };
    (status, out)
}

/// Non-empty, non-comment lines of a batch file.
pub fn batch_lines(text: &str) -> Vec<&str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn run_batch(job: &Job, text: &str) -> (i32, String) {
    let lines = batch_lines(text);
    let outcomes: Vec<Outcome> = lines.par_iter().map(|l| job.evaluate(l)).collect();
    let status = outcomes.iter().map(|o| job.status(o)).max().unwrap_or(EXIT_OK);
    let out = match job.format {
        Format::Json => {
            let all: Vec<serde_json::Value> = outcomes.iter().map(|o| job.json_value(o)).collect();
            format!("{}\n", serde_json::to_string_pretty(&all).expect("json"))
        }
        Format::Text => outcomes.iter().map(|o| job.text(o)).collect::<Vec<_>>().join("\n"),
    };
    (status, out)
}

fn roots(expr: &str, interval: Option<Vec<Rat>>, width: &Rat) -> (i32, String) {
    let f = match parse_ratfun(expr) {
        Ok(f) => f,
        Err(e) => return usage(e),
    };
    if f.is_zero() {
        return usage("the zero function has no isolated roots");
    }
    let found = match &interval {
        Some(v) => isolate_real_roots_in(f.num(), &v[0], &v[1], width),
        None => isolate_real_roots(f.num(), width),
    };
    match found {
        Ok(found) => {
            let mut out = String::new();
            let _ = writeln!(out, "numerator: {}", f.num());
            let _ = writeln!(out, "{} distinct real root(s)", found.len());
            for r in &found {
                let mid = (&r.lo + &r.hi) / realrooted::int(2);
                let _ = writeln!(out, "({}, {}]  ~ {}", r.lo, r.hi, rat_to_f64(&mid));
            }
            (EXIT_OK, out)
        }
        Err(e) => usage(e),
    }
}

fn f4roots(count: usize, bound: &Rat) -> (i32, String) {
    match f4_negative_roots(bound, count) {
        Ok(search) => {
            let mut out = String::new();
            for (i, r) in search.roots.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "root {}: [{}, {}]  width <= {}  ~ {}",
                    i + 1,
                    r.lo,
                    r.hi,
                    rat_to_f64(&r.width()),
                    rat_to_f64(&r.midpoint())
                );
            }
            if !search.complete {
                let _ = writeln!(out, "only {} of {count} roots found in [-{bound}, 0)", search.roots.len());
                return (EXIT_FAILED, out);
            }
            (EXIT_OK, out)
        }
        Err(e) => usage(e),
    }
}
