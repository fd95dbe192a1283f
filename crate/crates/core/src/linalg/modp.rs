//! Arithmetic in `Z/pZ` for word-sized primes.

use num::{BigInt, Integer, ToPrimitive};

use super::QMatrix;
use crate::error::{Error, Result};
use crate::poly::Rational;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a non-zero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn int_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

/// Image of a rational in `Z/pZ`; fails when `p` divides the denominator.
pub fn rational_mod(r: &Rational, p: u64) -> Result<u64> {
    let d = int_mod(r.denom(), p);
    if d == 0 {
        return Err(Error::BadDenominator(p));
    }
    Ok(mul_mod(int_mod(r.numer(), p), inv_mod(d, p), p))
}

/// Dense matrix over `Z/pZ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn from_rational(m: &QMatrix, p: u64) -> Result<Self> {
        let mut data = Vec::with_capacity(m.rows() * m.cols());
        for i in 0..m.rows() {
            for v in m.row(i) {
                data.push(rational_mod(v, p)?);
            }
        }
        Ok(ModMatrix { p, rows: m.rows(), cols: m.cols(), data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let acc: u128 = row
                    .iter()
                    .zip(v)
                    .fold(0u128, |acc, (&a, &b)| (acc + a as u128 * b as u128) % self.p as u128);
                acc as u64
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2003));
        assert!(is_prime(65537));
        assert!(is_prime(1_000_003));
        assert!(!is_prime(4));
        assert!(!is_prime(1));
        assert!(!is_prime(4001 * 3));
    }

    #[test]
    fn rational_images() {
        let half = Rational::new(1.into(), 2.into());
        let h = rational_mod(&half, 2003).unwrap();
        assert_eq!(mul_mod(h, 2, 2003), 1);
        let neg = Rational::from_integer((-1).into());
        assert_eq!(rational_mod(&neg, 7).unwrap(), 6);
        let bad = Rational::new(1.into(), 4006.into());
        assert!(matches!(rational_mod(&bad, 2003), Err(Error::BadDenominator(2003))));
    }
}
