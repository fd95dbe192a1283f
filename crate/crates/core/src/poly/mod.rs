//! Exact sparse multivariate polynomials over the rationals.

mod monomial;
mod parse;
mod system;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use monomial::{Ambient, Monomial};
pub use parse::{parse_poly, parse_poly_in};
pub use system::{jacobian, multidegree, parse_system, Multidegree, PolySystem};

/// Exact rational number; always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Sparse polynomial: a map from monomials to non-zero rational
/// coefficients, over a fixed [`Ambient`] variable set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ambient: Ambient,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(ambient: Ambient) -> Self {
        Poly { ambient, terms: BTreeMap::new() }
    }

    pub fn constant(ambient: Ambient, c: Rational) -> Self {
        Poly::term(ambient, Monomial::one(ambient.nvars()), c)
    }

    pub fn one(ambient: Ambient) -> Self {
        Poly::constant(ambient, Rational::one())
    }

    /// The variable with index `var` (0-based within the ambient set).
    pub fn var(ambient: Ambient, var: usize) -> Self {
        Poly::term(ambient, Monomial::var(ambient.nvars(), var), Rational::one())
    }

    pub fn term(ambient: Ambient, mono: Monomial, c: Rational) -> Self {
        assert_eq!(mono.nvars(), ambient.nvars(), "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Poly { ambient, terms }
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms(ambient: Ambient, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(ambient);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.nvars(), self.nvars(), "monomial arity");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Partial degree in variable `var`; 0 for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[var]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ambient);
        }
        Poly {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.ambient);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor`. Fails if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        self.check_same(divisor);
        let (lm, lc) = divisor.leading().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.ambient);
        while let Some((m, c)) = rem.leading() {
            let Some(qm) = m.div(lm) else {
                return Err(Error::InexactDivision(format!("({self}) / ({divisor})")));
            };
            let qc = c / lc;
            rem = &rem - &divisor.mul_monomial(&qm).scale(&qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.ambient);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), c * rat(e as i64));
        }
        out
    }

    /// Moves every variable `i` of `self` to slot `map(i)` of `target`.
    pub fn remap(&self, target: Ambient, map: impl Fn(usize) -> usize) -> Poly {
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.nvars()];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[map(i)] += e;
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        out
    }

    /// Reinterprets the polynomial over another set with the same number of
    /// variables (e.g. turning an `x`-polynomial into a `y`-polynomial).
    pub fn with_ambient(mut self, ambient: Ambient) -> Poly {
        assert_eq!(ambient.nvars(), self.nvars());
        self.ambient = ambient;
        self
    }

    /// Evaluation at a complex point; coefficients are rounded to `f64` here.
    pub fn eval(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), got: point.len() });
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut t = Complex64::new(rat_to_f64(c), 0.0);
                for (z, &e) in point.iter().zip(m.exponents()) {
                    if e > 0 {
                        t *= z.powu(e);
                    }
                }
                t
            })
            .sum())
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), got: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (z, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num::pow(z.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num::Integer;
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn check_same(&self, other: &Poly) {
        assert_eq!(self.ambient, other.ambient, "polynomials over different variable sets");
    }

    /// Degree of a univariate polynomial; `None` for zero.
    pub fn univariate_degree(&self) -> Option<u32> {
        debug_assert_eq!(self.nvars(), 1);
        self.total_degree()
    }
}

pub(crate) fn rat_to_f64(c: &Rational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 only fails on overflow of both parts.
        let n = c.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = c.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Exact long division of univariate polynomials: `g = q f + r` with
/// `deg r < deg f`.
pub fn univariate_divmod(g: &Poly, f: &Poly) -> Result<(Poly, Poly)> {
    if g.nvars() != 1 || f.nvars() != 1 {
        return Err(Error::InvalidArgument("univariate_divmod needs univariate polynomials".into()));
    }
    g.check_same(f);
    let (lm, lc) = f.leading().ok_or(Error::DivisionByZero)?;
    let d = lm.degree();
    let mut rem = g.clone();
    let mut quot = Poly::zero(g.ambient);
    while let Some((m, c)) = rem.leading() {
        if m.degree() < d {
            break;
        }
        let qm = Monomial::new(vec![m.degree() - d]);
        let qc = c / lc;
        rem = &rem - &f.mul_monomial(&qm).scale(&qc);
        quot.add_term(qm, qc);
    }
    Ok((quot, rem))
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.check_same(rhs);
        let mut out = Poly::zero(self.ambient);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// Prints terms in decreasing graded-lex order, in the input grammar
/// (`3/2*x1^2*x2 - x2 + 1`).
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                m.fmt_with(self.ambient, f)?;
            }
        }
        Ok(())
    }
}
