//! Parser for the polynomial input grammar:
//!
//! ```text
//! poly     := [sign] term (sign term)*
//! term     := factor ([*] factor)*
//! factor   := rational | name [^ exponent]
//! rational := digits [/ digits]
//! ```
//!
//! Whitespace is ignored everywhere.

use num::{BigInt, One, Zero};

use super::{Ambient, Monomial, Poly, Rational};
use crate::error::{Error, Result};

/// Parses `text` as a polynomial over the named variables, which become
/// `x1..xn` of an `X(n)` ambient set in the given order.
pub fn parse_poly(text: &str, var_names: &[&str]) -> Result<Poly> {
    Parser::new(text, var_names, Ambient::X(var_names.len())).poly()
}

/// Parses `text` using the canonical variable names of `ambient`
/// (`x1..`, `y1..`).
pub fn parse_poly_in(text: &str, ambient: Ambient) -> Result<Poly> {
    let names = ambient.var_names();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Parser::new(text, &refs, ambient).poly()
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    names: &'a [&'a str],
    ambient: Ambient,
    len: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &str, names: &'a [&'a str], ambient: Ambient) -> Self {
        let chars: Vec<(usize, char)> = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Parser { chars, pos: 0, names, ambient, len: text.chars().count() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    /// 1-based column of the current token (or one past the end).
    fn column(&self) -> usize {
        self.chars.get(self.pos).map(|&(i, _)| i + 1).unwrap_or(self.len + 1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.column(), msg: msg.into() })
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut p = Poly::zero(self.ambient);
        if self.peek().is_none() {
            return self.err("expected a polynomial");
        }
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    Rational::one()
                }
                Some('-') => {
                    self.pos += 1;
                    -Rational::one()
                }
                Some(_) if first => Rational::one(),
                Some(c) => return self.err(format!("unexpected `{c}`")),
                None => break,
            };
            first = false;
            let (m, c) = self.term()?;
            p.add_term(m, sign * c);
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<(Monomial, Rational)> {
        let mut coeff = Rational::one();
        let mut mono = Monomial::one(self.ambient.nvars());
        let mut expect_factor = true;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.rational()?,
                Some(c) if c.is_alphabetic() || c == '_' => mono = mono.mul(&self.power()?),
                Some(c) if expect_factor => return self.err(format!("expected a factor, found `{c}`")),
                None if expect_factor => return self.err("expected a factor"),
                _ => break,
            }
            expect_factor = false;
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    expect_factor = true;
                }
                // implicit product such as `2x1`
                Some(c) if c.is_alphabetic() || c == '_' => {}
                _ => break,
            }
        }
        Ok((mono, coeff))
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        if s.is_empty() {
            self.pos = start;
            return self.err("expected digits");
        }
        Ok(s.parse().expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.digits()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.digits()?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn power(&mut self) -> Result<Monomial> {
        let col = self.column();
        let mut name = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_alphanumeric() || *c == '_') {
            name.push(c);
            self.pos += 1;
        }
        let Some(var) = self.names.iter().position(|n| *n == name) else {
            return Err(Error::UnknownVariable { name, pos: col });
        };
        let mut exp = 1u32;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.digits()?;
            exp = match u32::try_from(e) {
                Ok(e) if e > 0 => e,
                _ => return self.err("exponent must be a positive integer"),
            };
        }
        let mut exps = vec![0; self.ambient.nvars()];
        exps[var] = exp;
        Ok(Monomial::new(exps))
    }
}
