//! Textual grammar shared by the library and the command line.
//!
//! Scalars use `v`, `t`, integer `^` powers (negative allowed), `*`, `+`,
//! `-`, `/` and parentheses.  Algebra expressions add the generators `E1`,
//! `F2`, `K1`, `K1'` with inverses written `K1^-1`, and `star(a, b)` for the
//! degree-twisted product.  Rendering is deterministic: term order follows
//! the normal-form ordering (lowering word, then the two Cartan exponents,
//! then the raising word, words length-lexicographically).

use num::{BigInt, BigRational, One, Signed};

use crate::algebra::{Algebra, StarSign, TermKey, UElement};
use crate::scalars::RationalFunction;
use crate::{Error, Result};

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    V,
    T,
    Gen(GenKind, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Star(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    E,
    F,
    K,
    KPrime,
}

// ---------------------------------------------------------------------------
// Lexer.

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    V,
    T,
    Gen(GenKind, usize),
    Star,        // the identifier `star`
    Plus,
    Minus,
    Times,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Times));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            ',' => {
                toks.push((i, Tok::Comma));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().expect("digits");
                toks.push((start, Tok::Int(n)));
            }
            'v' => {
                toks.push((i, Tok::V));
                i += 1;
            }
            't' => {
                toks.push((i, Tok::T));
                i += 1;
            }
            'E' | 'F' | 'K' => {
                let start = i;
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("generator `{}` needs an index", c),
                    });
                }
                let idx: usize = s[digits_start..i].parse().map_err(|_| Error::Parse {
                    pos: digits_start,
                    msg: "bad generator index".into(),
                })?;
                if idx == 0 {
                    return Err(Error::Parse {
                        pos: digits_start,
                        msg: "generator indices start at 1".into(),
                    });
                }
                let mut kind = match c {
                    'E' => GenKind::E,
                    'F' => GenKind::F,
                    _ => GenKind::K,
                };
                if kind == GenKind::K && i < bytes.len() && bytes[i] == b'\'' {
                    kind = GenKind::KPrime;
                    i += 1;
                }
                toks.push((start, Tok::Gen(kind, idx)));
            }
            's' => {
                if s[i..].starts_with("star") {
                    toks.push((i, Tok::Star));
                    i += 4;
                } else {
                    return Err(Error::Parse { pos: i, msg: "unknown identifier".into() });
                }
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{}`", c),
                })
            }
        }
    }
    Ok(toks)
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn err_here(&self, msg: &str) -> Error {
        let pos = self
            .toks
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.len);
        Error::Parse { pos, msg: msg.into() }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.peek() == Some(t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err_here(what))
        }
    }

    fn expression(&mut self) -> Result<Expr> {
        let mut lhs = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Times) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let negative = if self.peek() == Some(&Tok::Minus) {
                self.pos += 1;
                true
            } else {
                false
            };
            let Some(Tok::Int(n)) = self.bump() else {
                return Err(self.err_here("expected an integer exponent"));
            };
            let mut e: i32 = i32::try_from(&n).map_err(|_| self.err_here("exponent too large"))?;
            if negative {
                e = -e;
            }
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::V) => Ok(Expr::V),
            Some(Tok::T) => Ok(Expr::T),
            Some(Tok::Gen(kind, idx)) => Ok(Expr::Gen(kind, idx)),
            Some(Tok::LParen) => {
                let e = self.expression()?;
                self.expect(&Tok::RParen, "expected `)`")?;
                Ok(e)
            }
            Some(Tok::Minus) => Ok(Expr::Neg(Box::new(self.atom()?))),
            Some(Tok::Star) => {
                self.expect(&Tok::LParen, "expected `(` after star")?;
                let a = self.expression()?;
                self.expect(&Tok::Comma, "expected `,` in star(a, b)")?;
                let b = self.expression()?;
                self.expect(&Tok::RParen, "expected `)`")?;
                Ok(Expr::Star(Box::new(a), Box::new(b)))
            }
            _ => {
                self.pos -= 1;
                Err(self.err_here("expected a value"))
            }
        }
    }
}

/// Parse an algebra expression.
pub fn parse_expression(s: &str) -> Result<Expr> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, len: s.len() };
    let e = p.expression()?;
    if p.pos != p.toks.len() {
        return Err(p.err_here("trailing input"));
    }
    Ok(e)
}

/// Parse a scalar; generator symbols are rejected.
pub fn parse_scalar(s: &str) -> Result<RationalFunction> {
    let e = parse_expression(s)?;
    eval_scalar(&e)
}

fn eval_scalar(e: &Expr) -> Result<RationalFunction> {
    match e {
        Expr::Int(n) => Ok(RationalFunction::from_coeff(BigRational::from(n.clone()))),
        Expr::V => Ok(RationalFunction::v()),
        Expr::T => Ok(RationalFunction::t()),
        Expr::Gen(..) | Expr::Star(..) => {
            Err(Error::Domain("expected a scalar, found a generator".into()))
        }
        Expr::Neg(a) => Ok(eval_scalar(a)?.neg_ref()),
        Expr::Add(a, b) => Ok(eval_scalar(a)?.add_ref(&eval_scalar(b)?)),
        Expr::Sub(a, b) => Ok(eval_scalar(a)?.sub_ref(&eval_scalar(b)?)),
        Expr::Mul(a, b) => Ok(eval_scalar(a)?.mul_ref(&eval_scalar(b)?)),
        Expr::Div(a, b) => eval_scalar(a)?.div_ref(&eval_scalar(b)?),
        Expr::Pow(a, n) => eval_scalar(a)?.pow(*n),
    }
}

/// Evaluate an expression in the algebra; `sign` selects the star-product
/// orientation.
pub fn eval(alg: &Algebra, e: &Expr, sign: StarSign) -> Result<UElement> {
    match e {
        Expr::Int(n) => Ok(alg.scalar(RationalFunction::from_coeff(BigRational::from(n.clone())))),
        Expr::V => Ok(alg.scalar(RationalFunction::v())),
        Expr::T => Ok(alg.scalar(RationalFunction::t())),
        Expr::Gen(kind, idx) => {
            let i = idx - 1;
            if i >= alg.rank() {
                return Err(Error::Domain(format!(
                    "generator index {} exceeds the rank {}",
                    idx,
                    alg.rank()
                )));
            }
            Ok(match kind {
                GenKind::E => alg.e(i),
                GenKind::F => alg.f(i),
                GenKind::K => alg.k(i),
                GenKind::KPrime => alg.kp(i),
            })
        }
        Expr::Neg(a) => Ok(eval(alg, a, sign)?.scale(&RationalFunction::from_int(-1))),
        Expr::Add(a, b) => Ok(eval(alg, a, sign)?.add(&eval(alg, b, sign)?)),
        Expr::Sub(a, b) => Ok(eval(alg, a, sign)?.sub(&eval(alg, b, sign)?)),
        Expr::Mul(a, b) => Ok(alg.multiply(&eval(alg, a, sign)?, &eval(alg, b, sign)?)),
        Expr::Div(a, b) => {
            let num = eval(alg, a, sign)?;
            let den = eval(alg, b, sign)?;
            let s = as_scalar(alg, &den)
                .ok_or_else(|| Error::Domain("division is only by scalars".into()))?;
            Ok(num.scale(&s.inv()?))
        }
        Expr::Pow(a, n) => {
            let base = eval(alg, a, sign)?;
            if *n >= 0 {
                let mut out = alg.one();
                for _ in 0..*n {
                    out = alg.multiply(&out, &base);
                }
                Ok(out)
            } else {
                // negative powers for scalars and single Cartan monomials
                if let Some(s) = as_scalar(alg, &base) {
                    return Ok(alg.scalar(s.pow(*n)?));
                }
                let mut terms = base.terms();
                let (key, c) = terms
                    .next()
                    .ok_or_else(|| Error::Domain("cannot invert zero".into()))?;
                if terms.next().is_some() || !key.is_cartan() {
                    return Err(Error::Domain(
                        "negative powers need a scalar or a Cartan monomial".into(),
                    ));
                }
                let m = (-*n) as usize;
                let mut out = alg.one();
                let inv = alg
                    .cartan_monomial(
                        &crate::cartan::RootVec(key.k_exp.iter().map(|x| -x).collect()),
                        &crate::cartan::RootVec(key.kp_exp.iter().map(|x| -x).collect()),
                    )
                    .scale(&c.inv()?);
                for _ in 0..m {
                    out = alg.multiply(&out, &inv);
                }
                Ok(out)
            }
        }
        Expr::Star(a, b) => Ok(alg.star_multiply(&eval(alg, a, sign)?, &eval(alg, b, sign)?, sign)),
    }
}

/// Extract a scalar from an element containing only the unit monomial.
pub fn as_scalar(alg: &Algebra, x: &UElement) -> Option<RationalFunction> {
    if x.is_zero() {
        return Some(RationalFunction::zero());
    }
    if x.num_terms() != 1 {
        return None;
    }
    let (key, c) = x.terms().next().unwrap();
    if *key == TermKey::unit(alg.rank()) {
        Some(c.clone())
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Rendering.

fn monomial_factors(key: &TermKey) -> Vec<String> {
    let mut parts = Vec::new();
    for &i in &key.f_word.0 {
        parts.push(format!("F{}", i + 1));
    }
    for (i, &n) in key.k_exp.iter().enumerate() {
        if n == 1 {
            parts.push(format!("K{}", i + 1));
        } else if n != 0 {
            parts.push(format!("K{}^{}", i + 1, n));
        }
    }
    for (i, &n) in key.kp_exp.iter().enumerate() {
        if n == 1 {
            parts.push(format!("K{}'", i + 1));
        } else if n != 0 {
            parts.push(format!("K{}'^{}", i + 1, n));
        }
    }
    for &i in &key.e_word.0 {
        parts.push(format!("E{}", i + 1));
    }
    parts
}

/// A coefficient renders "negatively" when its numerator's coefficients are
/// all negative; the sign is then pulled out in front of the term.
fn negated_if_negative(c: &RationalFunction) -> (bool, RationalFunction) {
    let neg = !c.is_zero()
        && c.numerator().terms().all(|(_, q)| q.is_negative());
    if neg {
        (true, c.neg_ref())
    } else {
        (false, c.clone())
    }
}

fn scalar_is_plain_one(c: &RationalFunction) -> bool {
    c.is_one()
}

/// Deterministic plain-text rendering of a normal-form element.
pub fn render_element(x: &UElement) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (key, c)) in x.terms().enumerate() {
        let (neg, mag) = negated_if_negative(c);
        if idx == 0 {
            if neg {
                out.push_str("-");
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let factors = monomial_factors(key);
        let coeff_str = if scalar_is_plain_one(&mag) && !factors.is_empty() {
            None
        } else if mag.denominator().is_one() && mag.numerator().num_terms() == 1 {
            Some(format!("{}", mag))
        } else {
            Some(format!("({})", mag))
        };
        match (coeff_str, factors.is_empty()) {
            (Some(cs), true) => out.push_str(&cs),
            (Some(cs), false) => {
                out.push_str(&cs);
                out.push('*');
                out.push_str(&factors.join("*"));
            }
            (None, _) => out.push_str(&factors.join("*")),
        }
    }
    out
}

/// LaTeX rendering of a normal-form element.
pub fn render_element_latex(x: &UElement) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (key, c)) in x.terms().enumerate() {
        let (neg, mag) = negated_if_negative(c);
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut parts: Vec<String> = Vec::new();
        if !scalar_is_plain_one(&mag) {
            parts.push(render_scalar_latex(&mag));
        }
        for &i in &key.f_word.0 {
            parts.push(format!("F_{{{}}}", i + 1));
        }
        for (i, &n) in key.k_exp.iter().enumerate() {
            if n == 1 {
                parts.push(format!("K_{{{}}}", i + 1));
            } else if n != 0 {
                parts.push(format!("K_{{{}}}^{{{}}}", i + 1, n));
            }
        }
        for (i, &n) in key.kp_exp.iter().enumerate() {
            if n == 1 {
                parts.push(format!("K'_{{{}}}", i + 1));
            } else if n != 0 {
                parts.push(format!("K'^{{{}}}_{{{}}}", n, i + 1));
            }
        }
        for &i in &key.e_word.0 {
            parts.push(format!("E_{{{}}}", i + 1));
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        out.push_str(&parts.join(" "));
    }
    out
}

/// LaTeX rendering of a scalar.
pub fn render_scalar_latex(c: &RationalFunction) -> String {
    fn poly(p: &crate::scalars::LaurentPoly) -> String {
        let mut out = String::new();
        let terms: Vec<_> = p.terms().collect();
        for (idx, ((a, b), q)) in terms.iter().rev().enumerate() {
            let neg = q.is_negative();
            let mag = q.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (*a == 0 && *b == 0) {
                if mag.denom().is_one() {
                    parts.push(format!("{}", mag.numer()));
                } else {
                    parts.push(format!("\\tfrac{{{}}}{{{}}}", mag.numer(), mag.denom()));
                }
            }
            if *a != 0 {
                parts.push(if *a == 1 { "v".into() } else { format!("v^{{{}}}", a) });
            }
            if *b != 0 {
                parts.push(if *b == 1 { "t".into() } else { format!("t^{{{}}}", b) });
            }
            out.push_str(&parts.join(" "));
        }
        if terms.is_empty() {
            out.push('0');
        }
        out
    }
    if c.denominator().is_one() {
        let inner = poly(c.numerator());
        if c.numerator().num_terms() > 1 {
            format!("\\left({}\\right)", inner)
        } else {
            inner
        }
    } else {
        format!("\\frac{{{}}}{{{}}}", poly(c.numerator()), poly(c.denominator()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;
    use std::sync::Arc;

    fn alg() -> Algebra {
        Algebra::new(Arc::new(CartanDatum::type_a(2))).unwrap()
    }

    #[test]
    fn parse_and_eval_generators() {
        let a = alg();
        let x = eval(&a, &parse_expression("E1*F1").unwrap(), StarSign::Flipped).unwrap();
        assert_eq!(x, a.multiply(&a.e(0), &a.f(0)));
        let y = eval(&a, &parse_expression("K1*K1^-1").unwrap(), StarSign::Flipped).unwrap();
        assert_eq!(y, a.one());
        let z = eval(&a, &parse_expression("K2'^-1").unwrap(), StarSign::Flipped).unwrap();
        assert_eq!(z, a.kp_inv(1));
    }

    #[test]
    fn parse_scalars() {
        let s = parse_scalar("(v - v^-1)^-1").unwrap();
        let expect = RationalFunction::v()
            .sub_ref(&RationalFunction::vt_pow(-1, 0))
            .inv()
            .unwrap();
        assert_eq!(s, expect);
        assert_eq!(parse_scalar("3/2").unwrap(), parse_scalar("6/4").unwrap());
        assert!(parse_scalar("E1").is_err());
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_expression("E1 + %") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("expected a parse error, got {:?}", other),
        }
        assert!(parse_expression("E0").is_err());
        assert!(parse_expression("Q1").is_err());
    }

    #[test]
    fn render_round_trip() {
        let a = alg();
        let samples = [
            "E1*F1",
            "K1*E2 - F1*K2'",
            "star(E1, F1)",
            "(v - v^-1)^-1*K1",
            "E1*E1*E2 - (t^-2 + 1)*E1",
        ];
        for s in samples {
            let x = eval(&a, &parse_expression(s).unwrap(), StarSign::Flipped).unwrap();
            let rendered = render_element(&x);
            let re = eval(&a, &parse_expression(&rendered).unwrap(), StarSign::Flipped).unwrap();
            assert_eq!(re, x, "round trip failed on `{}` -> `{}`", s, rendered);
        }
    }

    #[test]
    fn star_in_expressions() {
        let a = alg();
        let e = parse_expression("star(K1, E2)").unwrap();
        let flipped = eval(&a, &e, StarSign::Flipped).unwrap();
        assert_eq!(flipped, a.star_multiply(&a.k(0), &a.e(1), StarSign::Flipped));
        let printed = eval(&a, &e, StarSign::Printed).unwrap();
        assert_eq!(printed, a.star_multiply(&a.k(0), &a.e(1), StarSign::Printed));
        assert_ne!(flipped, printed);
    }
}
