#![allow(dead_code)]

use std::path::PathBuf;

use bezoutian::bezout::{build_bezout_set, BuildOptions};
use bezoutian::companion::{companion_matrices, CompanionSet};
use bezoutian::poly::{parse_system, Ambient, Monomial, Poly, PolySystem, Rational};
use bezoutian::reduction::{reduce, ReducedBezoutSet};
use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> PolySystem {
    parse_system(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

/// All exponent vectors bounded componentwise by `d`.
pub fn box_monomials(d: &[u32]) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for &dj in d {
        out = out.into_iter().flat_map(|e: Vec<u32>| (0..=dj).map(move |k| [e.clone(), vec![k]].concat())).collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

fn random_poly(rng: &mut ChaCha8Rng, d: &[u32], dense: bool) -> Poly {
    let n = d.len();
    loop {
        let mut terms = Vec::new();
        for m in box_monomials(d) {
            if dense || rng.gen_bool(0.5) {
                terms.push((m, Rational::from_integer(BigInt::from(rng.gen_range(-5i64..=5)))));
            }
        }
        let p = Poly::from_terms(Ambient::X(n), terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Square system with partial degrees at most `max_deg` and integer
/// coefficients in `[-5, 5]`.
pub fn random_system(seed: u64, n: usize, max_deg: u32) -> PolySystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=max_deg)).collect();
    PolySystem::new((0..n).map(|_| random_poly(&mut rng, &d, false)).collect()).unwrap()
}

/// Every coefficient of the box `d` non-zero with probability close to one.
pub fn dense_system(seed: u64, d: &[u32]) -> PolySystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PolySystem::new((0..d.len()).map(|_| random_poly(&mut rng, d, true)).collect()).unwrap()
}

/// The random corpus shared by the oracle and verification checks.
pub fn corpus() -> Vec<PolySystem> {
    (0..54u64).map(|s| random_system(1000 + s, 1 + (s % 3) as usize, 2)).collect()
}

pub fn reduced(f: &PolySystem) -> ReducedBezoutSet {
    reduce(build_bezout_set(f, &BuildOptions::default()).unwrap())
}

pub fn companions(f: &PolySystem) -> Option<CompanionSet> {
    let red = reduced(f);
    (red.dim > 0).then(|| companion_matrices(&red).unwrap())
}
