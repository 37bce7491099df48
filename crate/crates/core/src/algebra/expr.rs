//! Textual expressions.
//!
//! The canonical grammar is a prefix form:
//!
//! ```text
//! expr := rational | symbol | "(+ " expr+ ")" | "(* " expr+ ")"
//!       | "(^ " expr int ")" | "(/ " expr expr ")"
//! ```
//!
//! `cbrt12` and `sqrt3` denote the field generators. Every polynomial and
//! rational function prints in this grammar with terms in descending order,
//! so printed forms are stable across runs. An infix reader is provided for
//! transcribing catalog data.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::ratfun::RationalFunction;
use super::scalar::{fmt_rational, AlgebraicScalar, Rational};
use super::var::Var;
use crate::Error;

pub const CBRT12: &str = "cbrt12";
pub const SQRT3: &str = "sqrt3";

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Sym(String),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, i64),
    Div(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Every symbol name, including the generator constants.
    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Sym(s) => {
                out.insert(s.clone());
            }
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().for_each(|x| x.collect_symbols(out)),
            Expr::Pow(b, _) => b.collect_symbols(out),
            Expr::Div(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
        }
    }

    pub fn to_rational_function(&self) -> Result<RationalFunction, Error> {
        Ok(match self {
            Expr::Num(q) => RationalFunction::constant(AlgebraicScalar::from_rational(q.clone())),
            Expr::Sym(s) if s == CBRT12 => RationalFunction::constant(AlgebraicScalar::cbrt12()),
            Expr::Sym(s) if s == SQRT3 => RationalFunction::constant(AlgebraicScalar::sqrt3()),
            Expr::Sym(s) => RationalFunction::var(Var::new(s)),
            Expr::Add(xs) => {
                let mut acc = RationalFunction::zero();
                for x in xs {
                    acc = &acc + &x.to_rational_function()?;
                }
                acc
            }
            Expr::Mul(xs) => {
                let mut acc = RationalFunction::one();
                for x in xs {
                    acc = &acc * &x.to_rational_function()?;
                }
                acc
            }
            Expr::Pow(b, e) => {
                let e = i32::try_from(*e).map_err(|_| Error::parse(0, 0, "exponent out of range"))?;
                b.to_rational_function()?.pow(e)?
            }
            Expr::Div(a, b) => a.to_rational_function()?.checked_div(&b.to_rational_function()?)?,
        })
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn line_col(&self, pos: usize) -> (usize, usize) {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rfind('\n').map(|i| pos - i).unwrap_or(pos + 1);
        (line, col)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (l, c) = self.line_col(self.pos);
        Error::parse(l, c, msg)
    }

    fn skip_ws(&mut self) {
        while let Some(ch) = self.peek() {
            if ch.is_whitespace() {
                self.pos += ch.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let ch = self.peek()?;
        self.pos += ch.len_utf8();
        Some(ch)
    }

    fn atom(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(ch) = self.peek() {
            if ch.is_whitespace() || ch == '(' || ch == ')' {
                break;
            }
            self.pos += ch.len_utf8();
        }
        &self.src[start..self.pos]
    }
}

fn parse_rational_atom(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

fn is_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the canonical prefix grammar.
pub fn parse(src: &str) -> Result<Expr, Error> {
    let mut cur = Cursor::new(src);
    let e = parse_sexpr(&mut cur)?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.err("trailing input"));
    }
    Ok(e)
}

fn parse_sexpr(cur: &mut Cursor<'_>) -> Result<Expr, Error> {
    cur.skip_ws();
    match cur.peek() {
        None => Err(cur.err("unexpected end of input")),
        Some(')') => Err(cur.err("unexpected ')'")),
        Some('(') => {
            cur.bump();
            cur.skip_ws();
            let op_pos = cur.pos;
            let op = cur.atom();
            let mut args = Vec::new();
            loop {
                cur.skip_ws();
                match cur.peek() {
                    None => return Err(cur.err("unclosed '('")),
                    Some(')') => {
                        cur.bump();
                        break;
                    }
                    _ => args.push(parse_sexpr(cur)?),
                }
            }
            let bad_arity = |cur: &Cursor<'_>, what: &str| {
                let (l, c) = cur.line_col(op_pos);
                Error::parse(l, c, format!("'{op}' expects {what}"))
            };
            match op {
                "+" | "*" => {
                    if args.is_empty() {
                        return Err(bad_arity(cur, "at least one argument"));
                    }
                    Ok(if op == "+" { Expr::Add(args) } else { Expr::Mul(args) })
                }
                "^" => {
                    if args.len() != 2 {
                        return Err(bad_arity(cur, "a base and an integer exponent"));
                    }
                    let e = match &args[1] {
                        Expr::Num(q) if q.is_integer() => i64::try_from(q.to_integer())
                            .map_err(|_| bad_arity(cur, "a small integer exponent"))?,
                        _ => return Err(bad_arity(cur, "an integer exponent")),
                    };
                    let base = args.swap_remove(0);
                    Ok(Expr::Pow(Box::new(base), e))
                }
                "/" => {
                    if args.len() != 2 {
                        return Err(bad_arity(cur, "two arguments"));
                    }
                    let b = args.pop().unwrap();
                    let a = args.pop().unwrap();
                    Ok(Expr::Div(Box::new(a), Box::new(b)))
                }
                other => {
                    let (l, c) = cur.line_col(op_pos);
                    Err(Error::parse(l, c, format!("unknown operator '{other}'")))
                }
            }
        }
        Some(_) => {
            let pos = cur.pos;
            let tok = cur.atom();
            if let Some(q) = parse_rational_atom(tok) {
                Ok(Expr::Num(q))
            } else if is_symbol(tok) {
                Ok(Expr::Sym(tok.to_string()))
            } else {
                let (l, c) = cur.line_col(pos);
                Err(Error::parse(l, c, format!("bad token '{tok}'")))
            }
        }
    }
}

/// Parses an infix expression such as `-(3/2)*y*q + x^2/(r^3-1)`.
pub fn parse_infix(src: &str) -> Result<Expr, Error> {
    let mut cur = Cursor::new(src);
    let e = infix_sum(&mut cur)?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.err("trailing input"));
    }
    Ok(e)
}

fn infix_sum(cur: &mut Cursor<'_>) -> Result<Expr, Error> {
    let mut terms = vec![infix_product(cur)?];
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some('+') => {
                cur.bump();
                terms.push(infix_product(cur)?);
            }
            Some('-') => {
                cur.bump();
                let t = infix_product(cur)?;
                terms.push(Expr::Mul(vec![Expr::Num(-Rational::one()), t]));
            }
            _ => break,
        }
    }
    Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Add(terms) })
}

fn infix_product(cur: &mut Cursor<'_>) -> Result<Expr, Error> {
    let mut acc = infix_unary(cur)?;
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some('*') => {
                cur.bump();
                let f = infix_unary(cur)?;
                acc = match acc {
                    Expr::Mul(mut xs) => {
                        xs.push(f);
                        Expr::Mul(xs)
                    }
                    other => Expr::Mul(vec![other, f]),
                };
            }
            Some('/') => {
                cur.bump();
                let f = infix_unary(cur)?;
                acc = Expr::Div(Box::new(acc), Box::new(f));
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn infix_unary(cur: &mut Cursor<'_>) -> Result<Expr, Error> {
    cur.skip_ws();
    if cur.peek() == Some('-') {
        cur.bump();
        let inner = infix_unary(cur)?;
        return Ok(Expr::Mul(vec![Expr::Num(-Rational::one()), inner]));
    }
    let base = infix_atom(cur)?;
    cur.skip_ws();
    if cur.peek() == Some('^') {
        cur.bump();
        cur.skip_ws();
        let neg = if cur.peek() == Some('-') {
            cur.bump();
            true
        } else {
            false
        };
        let start = cur.pos;
        while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            cur.bump();
        }
        let digits = &cur.src[start..cur.pos];
        let e: i64 = digits.parse().map_err(|_| cur.err("expected integer exponent"))?;
        return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
    }
    Ok(base)
}

fn infix_atom(cur: &mut Cursor<'_>) -> Result<Expr, Error> {
    cur.skip_ws();
    match cur.peek() {
        Some('(') => {
            cur.bump();
            let e = infix_sum(cur)?;
            cur.skip_ws();
            if cur.bump() != Some(')') {
                return Err(cur.err("expected ')'"));
            }
            Ok(e)
        }
        Some(c) if c.is_ascii_digit() => {
            let start = cur.pos;
            while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                cur.bump();
            }
            let n: BigInt = cur.src[start..cur.pos].parse().expect("digits");
            Ok(Expr::Num(Rational::from_integer(n)))
        }
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {
            let start = cur.pos;
            while cur.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                cur.bump();
            }
            Ok(Expr::Sym(cur.src[start..cur.pos].to_string()))
        }
        _ => Err(cur.err("expected operand")),
    }
}

/// Convenience: infix text straight to a rational function. Panics on bad
/// input; meant for built-in catalog data.
pub fn rf(src: &str) -> RationalFunction {
    parse_infix(src)
        .and_then(|e| e.to_rational_function())
        .unwrap_or_else(|e| panic!("bad built-in expression {src:?}: {e}"))
}

/// Canonical text to a rational function.
pub fn parse_rf(src: &str) -> Result<RationalFunction, Error> {
    parse(src)?.to_rational_function()
}

fn format_monomial_factors(m: &super::poly::Monomial) -> Vec<String> {
    m.pairs()
        .iter()
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("(^ {v} {e})") })
        .collect()
}

pub(crate) fn format_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (m, c) in p.terms().rev() {
        let factors = format_monomial_factors(m);
        let s = if factors.is_empty() {
            c.to_string()
        } else if c.is_one() {
            if factors.len() == 1 {
                factors[0].clone()
            } else {
                format!("(* {})", factors.join(" "))
            }
        } else {
            let cs = match c.as_rational() {
                Some(q) => fmt_rational(q),
                None => c.to_string(),
            };
            format!("(* {} {})", cs, factors.join(" "))
        };
        parts.push(s);
    }
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        format!("(+ {})", parts.join(" "))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) => f.write_str(&fmt_rational(q)),
            Expr::Sym(s) => f.write_str(s),
            Expr::Add(xs) | Expr::Mul(xs) => {
                let op = if matches!(self, Expr::Add(_)) { "+" } else { "*" };
                write!(f, "({op}")?;
                for x in xs {
                    write!(f, " {x}")?;
                }
                f.write_str(")")
            }
            Expr::Pow(b, e) => write!(f, "(^ {b} {e})"),
            Expr::Div(a, b) => write!(f, "(/ {a} {b})"),
        }
    }
}
