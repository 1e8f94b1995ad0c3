//! Canonical text, structured JSON and LaTeX forms of polynomials and
//! rational expressions, plus a parser for the text form.

use super::mono::Mono;
use super::poly::{Coeff, Poly};
use super::rat::RatExpr;
use super::var::{Var, VarKind};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected input at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed JSON expression: {0}")]
    Json(String),
}

fn coeff_text(c: &Coeff) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn mono_text(m: &Mono) -> String {
    let mut parts = Vec::new();
    for &(v, e) in m.pairs() {
        if e == 1 {
            parts.push(v.name());
        } else {
            parts.push(format!("{}^{}", v.name(), e));
        }
    }
    parts.join("*")
}

pub fn poly_to_text(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if m.is_one() {
            out.push_str(&coeff_text(&a));
        } else if a.is_one() {
            out.push_str(&mono_text(m));
        } else {
            let _ = write!(out, "{}*{}", coeff_text(&a), mono_text(m));
        }
    }
    out
}

/// `num` alone for polynomials, otherwise `(num)/(den)` with the denominator expanded.
pub fn rat_to_text(r: &RatExpr) -> String {
    if r.is_polynomial() {
        return poly_to_text(r.numer());
    }
    format!("({})/({})", poly_to_text(r.numer()), poly_to_text(&r.den_poly()))
}

pub fn parse_rat(s: &str) -> Result<RatExpr, ParseError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let r = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(r)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatExpr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    terms.push(self.term()?.neg());
                }
                _ => break,
            }
        }
        Ok(RatExpr::sum(terms.iter()))
    }

    fn term(&mut self) -> Result<RatExpr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| ParseError::DivisionByZero)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatExpr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: i32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            let e = if neg { -e } else { e };
            return base.pow(e).map_err(|_| ParseError::DivisionByZero);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<RatExpr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(RatExpr::from_coeff(Coeff::from_integer(self.integer()?))),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Var::parse(name).map(RatExpr::var).ok_or_else(|| ParseError::UnknownVar(name.into()))
            }
            _ => Err(self.err("expected number, variable or `(`")),
        }
    }
}

fn poly_to_json(p: &Poly) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(m, c)| {
                let vars: Vec<Value> = m.pairs().iter().map(|&(v, e)| json!([v.name(), e])).collect();
                json!([coeff_text(c), vars])
            })
            .collect(),
    )
}

/// `{"num": [...], "den": [...]}` with terms `[coeff, [[var, exp], ...]]`.
pub fn rat_to_json(r: &RatExpr) -> Value {
    json!({ "num": poly_to_json(r.numer()), "den": poly_to_json(&r.den_poly()) })
}

fn parse_coeff(s: &str) -> Option<Coeff> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Coeff::new(n.trim().parse().ok()?, d))
        }
        None => Some(Coeff::from_integer(s.trim().parse().ok()?)),
    }
}

fn poly_from_json(v: &Value) -> Result<Poly, ParseError> {
    let bad = |m: &str| ParseError::Json(m.into());
    let terms = v.as_array().ok_or_else(|| bad("term list expected"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("term must be [coeff, vars]"))?;
        let c = pair[0].as_str().and_then(parse_coeff).ok_or_else(|| bad("coefficient"))?;
        let mut m = Vec::new();
        for ve in pair[1].as_array().ok_or_else(|| bad("variable list"))? {
            let ve = ve.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("[var, exp] expected"))?;
            let name = ve[0].as_str().ok_or_else(|| bad("variable name"))?;
            let var = Var::parse(name).ok_or_else(|| ParseError::UnknownVar(name.into()))?;
            let e = ve[1].as_i64().ok_or_else(|| bad("exponent"))?;
            m.push((var, e as i32));
        }
        out.push((Mono::from_pairs(m), c));
    }
    Ok(Poly::from_terms(out))
}

pub fn rat_from_json(v: &Value) -> Result<RatExpr, ParseError> {
    let num = poly_from_json(v.get("num").ok_or_else(|| ParseError::Json("missing num".into()))?)?;
    let den = poly_from_json(v.get("den").ok_or_else(|| ParseError::Json("missing den".into()))?)?;
    RatExpr::from_parts(num, &den).map_err(|_| ParseError::DivisionByZero)
}

/// LaTeX rendering options.
#[derive(Clone, Copy, Debug, Default)]
pub struct LatexStyle {
    /// Print `eps_i` through the alias `t_i = -eps_i`.
    pub t_alias: bool,
}

fn var_latex(v: Var, style: LatexStyle) -> String {
    if style.t_alias && v.kind() == VarKind::Eps {
        format!("t_{{{}}}", v.index())
    } else {
        v.latex()
    }
}

fn coeff_latex(c: &Coeff) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn mono_latex(m: &Mono, style: LatexStyle) -> String {
    let mut out = String::new();
    for &(v, e) in m.pairs() {
        // keep `\hbar` from running into the next letter
        if out.ends_with(|c: char| c.is_ascii_alphabetic()) {
            out.push(' ');
        }
        if e == 1 {
            out.push_str(&var_latex(v, style));
        } else {
            let _ = write!(out, "{}^{{{}}}", var_latex(v, style), e);
        }
    }
    out
}

fn alias(p: &Poly, style: LatexStyle) -> Poly {
    if !style.t_alias {
        return p.clone();
    }
    p.map_monomials(|m| {
        let odd: i32 = m.pairs().iter().filter(|(v, _)| v.kind() == VarKind::Eps).map(|p| p.1).sum();
        (m.clone(), if odd.rem_euclid(2) == 1 { -Coeff::one() } else { Coeff::one() })
    })
}

pub fn poly_latex(p: &Poly, style: LatexStyle) -> String {
    let p = alias(p, style);
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if m.is_one() {
            out.push_str(&coeff_latex(&a));
        } else if a.is_one() {
            out.push_str(&mono_latex(m, style));
        } else {
            out.push_str(&coeff_latex(&a));
            out.push_str(&mono_latex(m, style));
        }
    }
    out
}

/// Fraction with the denominator shown in factored form.
pub fn rat_latex(r: &RatExpr, style: LatexStyle) -> String {
    if r.is_polynomial() {
        return poly_latex(r.numer(), style);
    }
    let mut den = String::new();
    if !r.den_mono().is_one() {
        den.push_str(&mono_latex(r.den_mono(), style));
    }
    for (f, e) in r.den_factors() {
        let _ = write!(den, "({})", poly_latex(&f.poly, style));
        if *e > 1 {
            let _ = write!(den, "^{{{e}}}");
        }
    }
    format!("\\frac{{{}}}{{{}}}", poly_latex(r.numer(), style), den)
}
