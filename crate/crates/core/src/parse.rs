//! Reader for scalar expressions such as `1/2*x^2 - i*u^-1 + (1+2i)*z1*(1 - zb1)`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::chart::Chart;
use crate::coeff::{from_rational, i_unit, int, Coeff};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| Error::Parse(s.clone()))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Tok::Ident(chars[start..k].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            k += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{src}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    chart: &'a Chart,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                let f = self.power()?;
                acc = self.chart.mul(&acc, &f);
            } else if self.eat('/') {
                let d = match self.toks.get(self.pos) {
                    Some(Tok::Num(d)) => d.clone(),
                    _ => return Err(Error::Parse("only integer divisors are supported".into())),
                };
                self.pos += 1;
                if d.is_zero() {
                    return Err(Error::Parse("division by zero".into()));
                }
                acc = acc.scale(&from_rational(BigRational::new(BigInt::one(), d)));
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base.0);
        }
        let neg = self.eat('-');
        let e = match self.toks.get(self.pos) {
            Some(Tok::Num(e)) => e.to_string().parse::<i32>().map_err(|_| Error::Parse("exponent".into()))?,
            _ => return Err(Error::Parse("expected exponent".into())),
        };
        self.pos += 1;
        let e = if neg { -e } else { e };
        match base.1 {
            Some(idx) => {
                let mut m = vec![0; self.chart.nvars()];
                m[idx] = e;
                if e < 0 && !self.chart.kind(idx).is_laurent() {
                    return Err(Error::Parse(format!("negative power of `{}`", self.chart.var(idx).name)));
                }
                Ok(Scalar::monomial(int(1), m))
            }
            None => {
                if e < 0 {
                    return Err(Error::Parse("negative power of a compound expression".into()));
                }
                Ok(self.chart.pow(&base.0, e as u32))
            }
        }
    }

    /// Returns the atom and, for a bare variable, its index.
    fn atom(&mut self) -> Result<(Scalar, Option<usize>)> {
        let n = self.chart.nvars();
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                let c = from_rational(BigRational::from_integer(v));
                // `2i` style imaginary literal
                if let Some(Tok::Ident(s)) = self.peek() {
                    if s == "i" {
                        self.pos += 1;
                        return Ok((Scalar::constant(c * i_unit(), n), None));
                    }
                }
                Ok((Scalar::constant(c, n), None))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "i" {
                    return Ok((Scalar::constant(i_unit(), n), None));
                }
                let idx = self
                    .chart
                    .index(&name)
                    .ok_or_else(|| Error::UnknownVariable(name.clone(), self.chart.name().to_string()))?;
                Ok((Scalar::var(n, idx), Some(idx)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok((e, None))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_scalar(chart: &Chart, src: &str) -> Result<Scalar> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, chart };
    let s = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{src}`")));
    }
    Ok(chart.reduce(s))
}

/// Parses an exact coefficient like `-3/4`, `2i`, `(1/2+3i)`.
pub fn parse_coeff(src: &str) -> Result<Coeff> {
    let chart = Chart::point();
    let s = parse_scalar(&chart, src)?;
    s.as_constant().ok_or_else(|| Error::Parse(format!("not a constant: `{src}`")))
}
