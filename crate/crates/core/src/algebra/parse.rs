//! Parser for rational expressions: `+ - * / ^`, parentheses, integers,
//! decimals, `p/q` literals and identifiers.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::{MultiPoly, Scalar};
use super::ratfunc::RF;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Scalar),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit()
            || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
        {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(parse_decimal(&text)?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!(
                "unexpected character '{c}' in \"{s}\""
            )));
        }
    }
    Ok(out)
}

fn parse_decimal(text: &str) -> Result<Scalar> {
    let bad = || Error::Parse(format!("bad number \"{text}\""));
    match text.split_once('.') {
        None => Ok(BigRational::from_integer(
            text.parse::<BigInt>().map_err(|_| bad())?,
        )),
        Some((whole, fracpart)) => {
            if fracpart.contains('.') {
                return Err(bad());
            }
            let digits = format!("{whole}{fracpart}");
            let n: BigInt = digits.parse().map_err(|_| bad())?;
            let d = num_traits::pow(BigInt::from(10), fracpart.len());
            Ok(BigRational::new(n, d))
        }
    }
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in \"{}\"", self.src))
    }

    fn expr(&mut self) -> Result<RF> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RF> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RF> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RF> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let mut neg = false;
            if let Some(Tok::Op('-')) = self.peek() {
                neg = true;
                self.pos += 1;
            }
            let e = match self.peek().cloned() {
                Some(Tok::Num(n)) if n.is_integer() => {
                    self.pos += 1;
                    n.to_integer()
                }
                _ => return Err(self.err("expected integer exponent")),
            };
            let e: i32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RF> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RF::constant(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(RF::named(&name))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.err("missing ')'")),
                }
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

pub fn parse_rf(s: &str) -> Result<RF> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        src: s,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

pub fn parse_poly(s: &str) -> Result<MultiPoly> {
    let r = parse_rf(s)?;
    match r.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(Error::Parse(format!("\"{s}\" is not a polynomial"))),
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let r = parse_rf(s)?;
    r.constant_value()
        .ok_or_else(|| Error::Parse(format!("\"{s}\" is not a rational number")))
}

/// Comma separated list of rationals, as in `"1/2,1/2"`.
pub fn parse_scalar_list(s: &str) -> Result<Vec<Scalar>> {
    s.split(',').map(|p| parse_scalar(p.trim())).collect()
}
