//! Companion matrices from Bezout matrices, and checks that they satisfy
//! the system.
//!
//! Convention: `x_j * basis = basis * X_j` modulo the ideal, with `basis`
//! a row vector. Column `i` of `X_j` holds the coordinates of
//! `x_j * basis[i]`.

use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bezout::{bezoutian_of, BezoutSet};
use crate::error::{Error, Result};
use crate::linalg::modp::{is_prime, rational_mod, ModMatrix};
use crate::linalg::{solve_right, QMatrix};
use crate::poly::{univariate_divmod, Monomial, Poly, PolySystem, Rational};
use crate::reduction::{reduce, ReducedBezoutSet};

/// Primes tried in order when a denominator vanishes modulo the requested one.
pub const FALLBACK_PRIMES: [u64; 4] = [2003, 4001, 65537, 1_000_003];

/// Commuting multiplication matrices `X_1..X_n` written in `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionSet {
    pub n: usize,
    pub matrices: Vec<QMatrix>,
    pub basis: Vec<Poly>,
}

impl CompanionSet {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `X_i X_j == X_j X_i` for all pairs, exactly.
    pub fn commutes(&self) -> bool {
        let m = &self.matrices;
        (0..m.len()).all(|i| (i + 1..m.len()).all(|j| m[i].mul(&m[j]) == m[j].mul(&m[i])))
    }
}

fn univariate_check(f: &Poly) -> Result<u32> {
    if f.nvars() != 1 {
        return Err(Error::InvalidArgument(format!("expected a univariate polynomial, got {} variables", f.nvars())));
    }
    match f.univariate_degree() {
        Some(d) if d >= 1 => Ok(d),
        _ => Err(Error::InvalidArgument("polynomial must have degree at least 1".into())),
    }
}

/// The Frobenius companion matrix: ones below the diagonal and
/// `-a_i / a_d` in the last column.
pub fn companion_univariate(f: &Poly) -> Result<QMatrix> {
    let d = univariate_check(f)? as usize;
    let lead = f.coeff(&Monomial::new(vec![d as u32]));
    let mut m = QMatrix::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = Rational::from_integer(1.into());
    }
    for i in 0..d {
        let a = f.coeff(&Monomial::new(vec![i as u32]));
        m[(i, d - 1)] = -(a / &lead);
    }
    Ok(m)
}

/// Coordinates of `p mod f` on `1, x, ..., x^(d-1)`.
fn coords_mod(p: &Poly, f: &Poly, d: usize) -> Result<Vec<Rational>> {
    let (_, r) = univariate_divmod(p, f)?;
    Ok((0..d).map(|i| r.coeff(&Monomial::new(vec![i as u32]))).collect())
}

/// `g(X)` in the monomial basis `1, x, ..., x^(d-1)`, computed as
/// `B(g) B(1)^-1` after reducing the padded pair of Bezout matrices.
pub fn barnett_univariate(f: &Poly, g: &Poly) -> Result<QMatrix> {
    let d = univariate_check(f)? as usize;
    if g.ambient() != f.ambient() {
        return Err(Error::DimensionMismatch { expected: 1, got: g.nvars() });
    }
    let sys = PolySystem::new(vec![f.clone()])?;
    let d1 = bezoutian_of(&sys, &Poly::one(f.ambient()))?;
    let dg = bezoutian_of(&sys, g)?;
    let red = reduce(BezoutSet::from_bezoutians(1, &[d1, dg]));
    if red.dim != d {
        return Err(Error::DimensionMismatch { expected: d, got: red.dim });
    }
    let in_family = solve_right(&red.bez.matrices[0], &red.bez.matrices[1])?;
    // columns of s: the row family written on the monomial basis
    let mut s = QMatrix::zeros(d, d);
    for (i, p) in red.bez.row_family.iter().enumerate() {
        for (k, c) in coords_mod(p, f, d)?.into_iter().enumerate() {
            s[(k, i)] = c;
        }
    }
    if s == QMatrix::identity(d) {
        return Ok(in_family);
    }
    // M s = s X  =>  M = s X s^-1
    solve_right(&s, &s.mul(&in_family))
}

/// `X_j = B(x_j) B(1)^-1`, solved without forming the inverse.
pub fn companion_matrices(red: &ReducedBezoutSet) -> Result<CompanionSet> {
    if red.dim == 0 {
        return Err(Error::InvalidArgument("empty quotient: no companion matrices".into()));
    }
    let b = &red.bez.matrices;
    let matrices = b[1..].iter().map(|bj| solve_right(&b[0], bj)).collect::<Result<Vec<_>>>()?;
    Ok(CompanionSet { n: red.bez.n, matrices, basis: red.bez.row_family.clone() })
}

/// `g(X_1, ..., X_n)` with exact matrix products.
pub fn poly_at_matrices(g: &Poly, cs: &CompanionSet) -> Result<QMatrix> {
    if g.nvars() != cs.n {
        return Err(Error::DimensionMismatch { expected: cs.n, got: g.nvars() });
    }
    let dim = cs.dim();
    let mut powers: Vec<Vec<QMatrix>> = cs.matrices.iter().map(|_| vec![QMatrix::identity(dim)]).collect();
    let mut acc = QMatrix::zeros(dim, dim);
    for (m, c) in g.terms() {
        let mut t = QMatrix::identity(dim);
        for (j, &e) in m.exponents().iter().enumerate() {
            let e = e as usize;
            while powers[j].len() <= e {
                let next = powers[j].last().unwrap().mul(&cs.matrices[j]);
                powers[j].push(next);
            }
            if e > 0 {
                t = t.mul(&powers[j][e]);
            }
        }
        acc = acc.add(&t.scale(c));
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub prime: u64,
    pub seed: u64,
    /// `f_i(X) v == 0 (mod p)` for each equation.
    pub per_poly: Vec<bool>,
    pub passed: bool,
}

/// Probabilistic check of `f_i(X) = 0` using only matrix-vector products
/// over `Z/pZ` against one random vector.
pub fn verify_modp(f: &PolySystem, cs: &CompanionSet, prime: u64, seed: u64) -> Result<VerifyReport> {
    if !is_prime(prime) {
        return Err(Error::NotPrime(prime));
    }
    if f.n() != cs.n {
        return Err(Error::DimensionMismatch { expected: cs.n, got: f.n() });
    }
    let xs = cs.matrices.iter().map(|m| ModMatrix::from_rational(m, prime)).collect::<Result<Vec<_>>>()?;
    let dim = cs.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..prime)).collect();
    let mut per_poly = Vec::with_capacity(f.n());
    for fi in f.polys() {
        let mut acc = vec![0u64; dim];
        for (m, c) in fi.terms() {
            let c = rational_mod(c, prime)?;
            let mut w = v.clone();
            for (j, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    w = xs[j].mul_vec(&w);
                }
            }
            for (a, b) in acc.iter_mut().zip(&w) {
                *a = ((*a as u128 + c as u128 * *b as u128) % prime as u128) as u64;
            }
        }
        per_poly.push(acc.iter().all(|&a| a == 0));
    }
    let passed = per_poly.iter().all(|&b| b);
    Ok(VerifyReport { prime, seed, per_poly, passed })
}

/// [`verify_modp`] starting at `prime`, moving through [`FALLBACK_PRIMES`]
/// while some denominator is divisible by the current prime.
pub fn verify_modp_with_fallback(f: &PolySystem, cs: &CompanionSet, prime: u64, seed: u64) -> Result<VerifyReport> {
    let mut candidates = vec![prime];
    candidates.extend(FALLBACK_PRIMES.iter().copied().filter(|&p| p != prime));
    let mut last = None;
    for p in candidates {
        match verify_modp(f, cs, p, seed) {
            Err(Error::BadDenominator(bad)) => last = Some(Error::BadDenominator(bad)),
            other => return other,
        }
    }
    Err(last.expect("at least one prime tried"))
}

/// Largest absolute numerator or denominator over all companion entries,
/// in bits.
pub fn max_entry_bits(cs: &CompanionSet) -> u64 {
    cs.matrices
        .iter()
        .flat_map(|m| (0..m.rows()).flat_map(move |i| m.row(i).iter()))
        .filter(|v| !v.is_zero())
        .map(|v| v.numer().abs().bits().max(v.denom().bits()))
        .max()
        .unwrap_or(0)
}
