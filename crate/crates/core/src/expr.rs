//! Expression language for rational functions in `z`.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := ('-' | '+') unary | power
//! power    := atom ('^' exponent)?
//! exponent := ['-'] INT ('^' exponent)? | '(' ['-'] INT ')' ('^' exponent)?
//! atom     := INT | 'z' | '(' expr ')'
//! ```
//!
//! Multiplication is always explicit. `-z^2` is `-(z^2)` and `z^2^3` is `z^8`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{ExactField, Rat};
use crate::{Poly, RatFun};

/// Largest accepted exponent magnitude.
pub const MAX_EXPONENT: i64 = 10_000;

/// Position of a node in the source: byte range plus 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(BigInt),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    fn prec(&self) -> u8 {
        match &self.kind {
            ExprKind::Add(..) | ExprKind::Sub(..) => 1,
            ExprKind::Mul(..) | ExprKind::Div(..) => 2,
            ExprKind::Neg(_) => 3,
            ExprKind::Pow(..) => 4,
            ExprKind::Int(_) | ExprKind::Var => 5,
        }
    }

    /// Same tree ignoring spans.
    pub fn same_shape(&self, other: &Expr) -> bool {
        use ExprKind::*;
        match (&self.kind, &other.kind) {
            (Int(a), Int(b)) => a == b,
            (Var, Var) => true,
            (Neg(a), Neg(b)) => a.same_shape(b),
            (Pow(a, e), Pow(b, f)) => e == f && a.same_shape(b),
            (Add(a, b), Add(c, d)) | (Sub(a, b), Sub(c, d)) | (Mul(a, b), Mul(c, d)) | (Div(a, b), Div(c, d)) => {
                a.same_shape(c) && b.same_shape(d)
            }
            _ => false,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min_prec: u8) -> fmt::Result {
    if e.prec() < min_prec {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Int(n) => write!(f, "{n}"),
            ExprKind::Var => f.write_str("z"),
            ExprKind::Neg(e) => {
                f.write_str("-")?;
                write_child(f, e, 3)
            }
            ExprKind::Add(a, b) => {
                write_child(f, a, 1)?;
                f.write_str(" + ")?;
                write_child(f, b, 2)
            }
            ExprKind::Sub(a, b) => {
                write_child(f, a, 1)?;
                f.write_str(" - ")?;
                write_child(f, b, 2)
            }
            ExprKind::Mul(a, b) => {
                write_child(f, a, 2)?;
                f.write_str("*")?;
                write_child(f, b, 3)
            }
            ExprKind::Div(a, b) => {
                write_child(f, a, 2)?;
                f.write_str("/")?;
                write_child(f, b, 3)
            }
            ExprKind::Pow(b, e) => {
                write_child(f, b, 5)?;
                if *e < 0 {
                    write!(f, "^({e})")
                } else {
                    write!(f, "^{e}")
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Var => f.write_str("`z`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn parse_error(span: Span, message: impl Into<String>) -> Error {
    Error::Parse {
        line: span.line,
        column: span.column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Span)>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        let span_at = |end: usize| Span {
            start,
            end,
            line,
            column: col,
        };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = start;
            let mut width = 0;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                width += 1;
                chars.next();
            }
            let n: BigInt = text[start..end].parse().expect("digits");
            out.push((Tok::Int(n), span_at(end)));
            col += width;
            continue;
        }
        let tok = match c {
            'z' => Tok::Var,
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(parse_error(span_at(start + c.len_utf8()), format!("unexpected character `{c}`"))),
        };
        chars.next();
        out.push((tok, span_at(start + c.len_utf8())));
        col += 1;
    }
    let end = Span {
        start: text.len(),
        end: text.len(),
        line,
        column: col,
    };
    out.push((Tok::End, end));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Span> {
        if *self.peek() == want {
            Ok(self.bump().1)
        } else {
            Err(parse_error(self.span(), format!("expected {want}, found {}", self.peek())))
        }
    }

    fn join(a: Span, b: Span) -> Span {
        Span {
            start: a.start,
            end: b.end,
            line: a.line,
            column: a.column,
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = self.peek().clone();
            if op != Tok::Plus && op != Tok::Minus {
                return Ok(lhs);
            }
            self.bump();
            let rhs = self.term()?;
            let span = Self::join(lhs.span, rhs.span);
            let (a, b) = (Box::new(lhs), Box::new(rhs));
            let kind = if op == Tok::Plus { ExprKind::Add(a, b) } else { ExprKind::Sub(a, b) };
            lhs = Expr { kind, span };
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = self.peek().clone();
            if op != Tok::Star && op != Tok::Slash {
                if matches!(op, Tok::Int(_) | Tok::Var | Tok::LParen) {
                    return Err(parse_error(
                        self.span(),
                        format!("expected an operator before {op} (multiplication needs `*`)"),
                    ));
                }
                return Ok(lhs);
            }
            self.bump();
            let rhs = self.unary()?;
            let span = Self::join(lhs.span, rhs.span);
            let (a, b) = (Box::new(lhs), Box::new(rhs));
            let kind = if op == Tok::Star { ExprKind::Mul(a, b) } else { ExprKind::Div(a, b) };
            lhs = Expr { kind, span };
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Tok::Minus => {
                let start = self.bump().1;
                let inner = self.unary()?;
                let span = Self::join(start, inner.span);
                Ok(Expr {
                    kind: ExprKind::Neg(Box::new(inner)),
                    span,
                })
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (e, end) = self.exponent()?;
        let span = Self::join(base.span, end);
        Ok(Expr {
            kind: ExprKind::Pow(Box::new(base), e),
            span,
        })
    }

    fn int_literal(&mut self) -> Result<(BigInt, Span)> {
        match self.bump() {
            (Tok::Int(n), s) => Ok((n, s)),
            (t, s) => Err(parse_error(s, format!("exponent must be an integer literal, found {t}"))),
        }
    }

    fn signed_int(&mut self) -> Result<(BigInt, Span)> {
        if *self.peek() == Tok::Minus {
            let s = self.bump().1;
            let (n, e) = self.int_literal()?;
            Ok((-n, Self::join(s, e)))
        } else {
            self.int_literal()
        }
    }

    fn exponent(&mut self) -> Result<(i64, Span)> {
        let start = self.span();
        let (n, mut end) = if *self.peek() == Tok::LParen {
            self.bump();
            let (n, _) = self.signed_int()?;
            let close = self.expect(Tok::RParen)?;
            (n, close)
        } else {
            self.signed_int()?
        };
        let too_big = |s: Span| parse_error(s, format!("exponent magnitude exceeds {MAX_EXPONENT}"));
        let mut value = n.to_i64().filter(|v| v.abs() <= MAX_EXPONENT).ok_or_else(|| too_big(start))?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let (rest, rest_end) = self.exponent()?;
            end = rest_end;
            let rest = u32::try_from(rest)
                .map_err(|_| parse_error(start, "stacked exponents must be non-negative"))?;
            value = value
                .checked_pow(rest)
                .filter(|v| v.abs() <= MAX_EXPONENT)
                .ok_or_else(|| too_big(start))?;
        }
        Ok((value, Self::join(start, end)))
    }

    fn atom(&mut self) -> Result<Expr> {
        let (tok, span) = self.bump();
        match tok {
            Tok::Int(n) => Ok(Expr {
                kind: ExprKind::Int(n),
                span,
            }),
            Tok::Var => Ok(Expr {
                kind: ExprKind::Var,
                span,
            }),
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.expect(Tok::RParen)?;
                Ok(Expr {
                    kind: inner.kind,
                    span: Self::join(span, close),
                })
            }
            Tok::End => Err(parse_error(span, "unexpected end of input")),
            t => Err(parse_error(span, format!("unexpected {t}"))),
        }
    }
}

pub fn parse_expression(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    if toks.len() == 1 {
        return Err(parse_error(toks[0].1, "empty input"));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(parse_error(p.span(), format!("unexpected {}", p.peek())));
    }
    Ok(e)
}

fn div_by_zero(e: &Expr) -> Error {
    Error::DivisionByZero {
        text: e.to_string(),
        line: e.span.line,
        column: e.span.column,
    }
}

/// Exact reduced value of the expression.
pub fn lower(e: &Expr) -> Result<RatFun> {
    Ok(match &e.kind {
        ExprKind::Int(n) => RatFun::constant(Rat::from_integer(n.clone())),
        ExprKind::Var => RatFun::x(),
        ExprKind::Neg(a) => -&lower(a)?,
        ExprKind::Add(a, b) => &lower(a)? + &lower(b)?,
        ExprKind::Sub(a, b) => &lower(a)? - &lower(b)?,
        ExprKind::Mul(a, b) => &lower(a)? * &lower(b)?,
        ExprKind::Div(a, b) => {
            let d = lower(b)?;
            if d.is_zero() {
                return Err(div_by_zero(b));
            }
            lower(a)?.checked_div(&d)?
        }
        ExprKind::Pow(a, k) => {
            let base = lower(a)?;
            if *k < 0 && base.is_zero() {
                return Err(div_by_zero(e));
            }
            base.powi(*k)?
        }
    })
}

/// Parses and lowers in one step.
pub fn parse_ratfun(text: &str) -> Result<RatFun> {
    lower(&parse_expression(text)?)
}

fn wrap(s: String, multi_term: bool) -> String {
    if multi_term {
        format!("({s})")
    } else {
        s
    }
}

fn term_count<T: ExactField>(p: &Polynomial<T>) -> usize {
    p.coeffs().iter().filter(|c| !c.is_zero()).count()
}

/// Canonical expanded form: `c*(P)/(D)` with `P`, `D` integral, primitive and
/// positive-leading, descending powers, and one rational scalar `c`.
pub fn print_canonical(f: &RatFun) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let p = f.num().primitive_part();
    let d = f.den().primitive_part();
    let p = if p.leading().is_some_and(|c| c.is_negative()) { -&p } else { p };
    let c = f.num().leading().cloned().unwrap_or_else(Rat::one) / p.leading().cloned().unwrap_or_else(Rat::one)
        * d.leading().cloned().unwrap_or_else(Rat::one);
    let has_den = !d.is_constant();
    let mut out = if p.is_constant() {
        c.to_string()
    } else {
        let multi = term_count(&p) > 1;
        let body = p.display_in("z");
        if c.is_one() {
            if has_den { wrap(body, multi) } else { body }
        } else if c == -Rat::one() {
            format!("-{}", wrap(body, multi || p.leading().is_some_and(|l| !l.is_one())))
        } else {
            format!("{c}*{}", wrap(body, multi))
        }
    };
    if has_den {
        out.push('/');
        let single_power = term_count(&d) == 1 && d.leading().is_some_and(|l| l.is_one());
        out.push_str(&wrap(d.display_in("z"), !single_power));
    }
    out
}

/// Rational roots of `p` with multiplicity, ascending, and the cofactor.
///
/// Candidate enumeration is skipped when the coefficients are too large to
/// factor by trial division; the whole polynomial is then the cofactor.
pub fn rational_roots(p: &Poly) -> (Vec<(Rat, usize)>, Poly) {
    let mut rest = p.clone();
    let mut roots = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return (roots, rest);
    }
    let zero_mult = rest.root_multiplicity(&Rat::zero());
    if zero_mult > 0 {
        roots.push((Rat::zero(), zero_mult));
        rest = rest.exact_div(&Poly::x().pow(zero_mult as u32)).expect("z^k divides");
    }
    if rest.degree().unwrap_or(0) > 0 {
        let prim = rest.primitive_part();
        let a0 = prim.coeff(0).numer().abs();
        let an = prim.leading().expect("nonzero").numer().abs();
        if let (Some(ps), Some(qs)) = (small_divisors(&a0), small_divisors(&an)) {
            let mut cands: Vec<Rat> = Vec::new();
            for pd in &ps {
                for qd in &qs {
                    let r = Rat::new(pd.clone(), qd.clone());
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
            cands.sort();
            cands.dedup();
            for r in cands {
                let k = rest.root_multiplicity(&r);
                if k > 0 {
                    rest = rest
                        .exact_div(&Poly::linear_root(r.clone()).pow(k as u32))
                        .expect("root divides");
                    roots.push((r, k));
                }
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    (roots, rest)
}

/// All positive divisors of `n` when `n` is at most `10^12`.
fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let v = n.to_u64().filter(|v| *v > 0 && *v <= 1_000_000_000_000)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            small.push(BigInt::from(d));
            if d * d != v {
                large.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

fn linear_factor(r: &Rat, k: usize) -> String {
    let base = if r.is_zero() {
        "z".to_string()
    } else if r.is_negative() {
        format!("(z+{})", -r)
    } else {
        format!("(z-{r})")
    };
    if k > 1 {
        format!("{base}^{k}")
    } else {
        base
    }
}

/// Factors of a nonzero polynomial as strings, plus its leading scalar.
fn factor_strings(p: &Poly) -> (Rat, Vec<String>) {
    let (roots, rest) = rational_roots(p);
    let mut parts: Vec<String> = roots.iter().map(|(r, k)| linear_factor(r, *k)).collect();
    let mut scale = rest.leading().cloned().unwrap_or_else(Rat::one);
    if !rest.is_constant() {
        let prim = rest.primitive_part();
        let prim = if prim.leading().is_some_and(|c| c.is_negative()) { -&prim } else { prim };
        scale = rest.leading().cloned().expect("nonzero") / prim.leading().cloned().expect("nonzero");
        parts.push(format!("({})", prim.display_in("z")));
    }
    (scale, parts)
}

/// Factored form: leading scalar, linear factors over the rational roots in
/// ascending order, then any remaining primitive factor, e.g. `24*(z-1)*(z-2)/z^2`.
pub fn print_factored(f: &RatFun) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let (ns, nf) = factor_strings(f.num());
    let (ds, df) = factor_strings(f.den());
    let c = ns / ds;
    let mut out = if nf.is_empty() {
        c.to_string()
    } else if c.is_one() {
        nf.join("*")
    } else if c == -Rat::one() {
        format!("-{}", nf.join("*"))
    } else {
        format!("{c}*{}", nf.join("*"))
    };
    if !df.is_empty() {
        out.push('/');
        let body = df.join("*");
        out.push_str(&if df.len() > 1 { format!("({body})") } else { body });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_ratfun("z^2 - z").unwrap(), rf(&[0, -1, 1], &[1]));
        assert_eq!(parse_ratfun("8*(z-1)*(z-2)/z").unwrap(), rf(&[16, -24, 8], &[0, 1]));
        assert_eq!(parse_ratfun("z^(-3)").unwrap(), rf(&[1], &[0, 0, 0, 1]));
        assert_eq!(parse_ratfun("(z^2-1)/(z-1)").unwrap(), rf(&[1, 1], &[1]));
        assert_eq!(parse_ratfun("2*z - 2/z").unwrap(), rf(&[-2, 0, 2], &[0, 1]));
        assert_eq!(parse_ratfun("2*z^2/z - 2/z").unwrap(), rf(&[-2, 0, 2], &[0, 1]));
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_ratfun("-z^2").unwrap(), rf(&[0, 0, -1], &[1]));
        assert_eq!(parse_ratfun("z^2^3").unwrap(), rf(&[0, 0, 0, 0, 0, 0, 0, 0, 1], &[1]));
        assert_eq!(parse_ratfun("1 - 2 - 3").unwrap(), RatFun::constant(int(-4)));
        assert_eq!(parse_ratfun("12/2/3").unwrap(), RatFun::constant(int(2)));
        assert_eq!(parse_ratfun("2*3^2").unwrap(), RatFun::constant(int(18)));
        assert_eq!(parse_ratfun("z^-1").unwrap(), rf(&[1], &[0, 1]));
        assert_eq!(parse_ratfun("--z").unwrap(), RatFun::x());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_expression(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_expression("   "), Err(Error::Parse { .. })));
        assert_eq!(
            parse_expression("2(z-1)"),
            Err(Error::Parse {
                line: 1,
                column: 2,
                message: "expected an operator before `(` (multiplication needs `*`)".into()
            })
        );
        assert!(matches!(parse_expression("z^z"), Err(Error::Parse { column: 3, .. })));
        assert!(matches!(parse_expression("z^1.5"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expression("z +\n  x"), Err(Error::Parse { line: 2, column: 3, .. })));
        assert!(matches!(parse_expression("(z"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expression("z^99999"), Err(Error::Parse { .. })));
        match parse_ratfun("z + 1/(z - z)") {
            Err(Error::DivisionByZero { text, line, column }) => {
                assert_eq!((text.as_str(), line, column), ("z - z", 1, 7));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_ratfun("1/0"), Err(Error::DivisionByZero { .. })));
        assert!(matches!(parse_ratfun("(z-z)^(-2)"), Err(Error::DivisionByZero { .. })));
    }

    #[test]
    fn printing() {
        let g2 = parse_ratfun("144*(z-1)*(z-4/3)*(z-2)/z^2").unwrap();
        assert_eq!(print_canonical(&g2), "48*(3*z^3 - 13*z^2 + 18*z - 8)/z^2");
        assert_eq!(print_factored(&g2), "144*(z-1)*(z-4/3)*(z-2)/z^2");
        let p2 = parse_ratfun("24*(z-1)*(z-2)/z^2").unwrap();
        assert_eq!(print_factored(&p2), "24*(z-1)*(z-2)/z^2");
        let g3 = parse_ratfun("384*(z-1)*(z-2)*(11*z^2-30*z+20)/z^3").unwrap();
        assert_eq!(print_factored(&g3), "384*(z-1)*(z-2)*(11*z^2 - 30*z + 20)/z^3");
        assert_eq!(print_canonical(&rf(&[1], &[0, 0, 1])), "1/z^2");
        assert_eq!(print_canonical(&rf(&[0, -1], &[1])), "-z");
        assert_eq!(print_canonical(&rf(&[0, -1, 1], &[1])), "z^2 - z");
        assert_eq!(print_canonical(&rf(&[1, 0, -1], &[1])), "-(z^2 - 1)");
        assert_eq!(print_canonical(&rf(&[1], &[1, 1])), "1/(z + 1)");
        assert_eq!(print_factored(&rf(&[-1, 0, 1], &[0, 0, 1])), "(z+1)*(z-1)/z^2");
        assert_eq!(print_factored(&rf(&[1], &[0, -1, 1])), "1/(z*(z-1))");
        assert_eq!(print_factored(&rf(&[0, 0, 3], &[1])), "3*z^2");
    }

    #[test]
    fn print_parse_fixed_point() {
        for text in ["8*(z-1)*(z-2)/z", "z^(-3)", "-3/2*z + 7", "(z^2+1)/(2*z - 3)", "-(z-1)^3/(5*z^2)"] {
            let f = parse_ratfun(text).unwrap();
            for printed in [print_canonical(&f), print_factored(&f)] {
                let again = parse_ratfun(&printed).unwrap();
                assert_eq!(again, f, "{printed}");
                assert_eq!(print_canonical(&again), print_canonical(&f));
            }
        }
    }

    #[test]
    fn ast_display_round_trips() {
        let e = parse_expression("-(z - 1)^2*z^(-1) + 3/(z + 1)").unwrap();
        let again = parse_expression(&e.to_string()).unwrap();
        assert!(e.same_shape(&again), "{e}");
    }
}
