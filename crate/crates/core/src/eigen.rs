//! Roots as joint eigenvalues of the companion matrices.

use std::collections::BTreeMap;

use nalgebra::linalg::Schur;
use nalgebra::DMatrix;
use num::complex::Complex64;
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::companion::CompanionSet;
use crate::error::{Error, Result};
use crate::linalg::{condition_number_1, lu_solve, CMatrix};
use crate::poly::{jacobian, PolySystem};

/// Jacobians with a larger 1-norm condition number get no residual.
pub const COND_LIMIT: f64 = 1e12;

/// `log10` recorded for a residual that is exactly zero.
pub const ZERO_RESIDUAL_LOG10: f64 = -16.0;

#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub coords: Vec<Complex64>,
    /// `log10 |Df^-1 f|_inf`; `None` when the Jacobian is numerically singular.
    pub residual_log10: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Root>,
    pub seed: u64,
    /// Weights of the combination `sum t_j X_j` that was diagonalized.
    pub combination: Vec<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Histogram {
    /// `floor(log10 residual)` -> number of roots.
    pub bins: BTreeMap<i32, usize>,
    pub skipped: usize,
}

fn to_dmatrix(m: &CMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

fn unit_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let t: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let norm = t.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return t.into_iter().map(|x| x / norm).collect();
        }
    }
}

fn min_gap(vals: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            gap = gap.min((vals[i] - vals[j]).norm());
        }
    }
    gap
}

struct Decomposition {
    q: DMatrix<Complex64>,
    t: DMatrix<Complex64>,
}

fn schur(m: &CMatrix) -> Result<Decomposition> {
    let n = m.rows();
    let a = to_dmatrix(m);
    let s = Schur::try_new(a.clone(), f64::EPSILON, 1000 * n.max(1)).ok_or_else(|| Error::NoConvergence {
        size: n,
        matrix: format!("{a}"),
    })?;
    let (q, t) = s.unpack();
    Ok(Decomposition { q, t })
}

/// Eigenvector of the triangular factor for diagonal entry `k`, mapped
/// back through `q`.
fn eigenvector(d: &Decomposition, k: usize, norm: f64) -> Vec<Complex64> {
    let t = &d.t;
    let lambda = t[(k, k)];
    let small = f64::EPSILON * norm.max(f64::MIN_POSITIVE);
    let mut y = vec![Complex64::zero(); t.nrows()];
    y[k] = Complex64::new(1.0, 0.0);
    for i in (0..k).rev() {
        let s: Complex64 = (i + 1..=k).map(|l| t[(i, l)] * y[l]).sum();
        let mut den = t[(i, i)] - lambda;
        if den.norm() < small {
            den = Complex64::new(small, 0.0);
        }
        y[i] = -s / den;
    }
    let v = &d.q * nalgebra::DVector::from_vec(y);
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    v.iter().map(|z| z / scale).collect()
}

/// Diagonalizes a random combination of the `X_j` and reads every
/// coordinate off its eigenvectors by Rayleigh quotients.
pub fn eigen_roots(cs: &CompanionSet, seed: u64) -> Result<RootSet> {
    let dim = cs.dim();
    if dim == 0 {
        return Ok(RootSet { roots: Vec::new(), seed, combination: Vec::new() });
    }
    let xs: Vec<CMatrix> = cs.matrices.iter().map(|m| m.to_complex()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights = unit_weights(&mut rng, cs.n);
    let mut t = CMatrix::linear_combination(&xs, &weights);
    let mut dec = schur(&t)?;
    let diag = |d: &Decomposition| (0..dim).map(|i| d.t[(i, i)]).collect::<Vec<_>>();
    if min_gap(&diag(&dec)) < 1e-10 * t.frobenius_norm() {
        let w2 = unit_weights(&mut rng, cs.n);
        let t2 = CMatrix::linear_combination(&xs, &w2);
        let dec2 = schur(&t2)?;
        if min_gap(&diag(&dec2)) > min_gap(&diag(&dec)) {
            (weights, t, dec) = (w2, t2, dec2);
        }
    }
    let norm = t.frobenius_norm();
    let roots = (0..dim)
        .map(|k| {
            let v = eigenvector(&dec, k, norm);
            let vv: Complex64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().into();
            let coords = xs
                .iter()
                .map(|x| {
                    let xv = x.mul_vec(&v);
                    v.iter().zip(&xv).map(|(a, b)| a.conj() * b).sum::<Complex64>() / vv
                })
                .collect();
            Root { coords, residual_log10: None }
        })
        .collect();
    Ok(RootSet { roots, seed, combination: weights })
}

/// `|e|_inf` for `Df(a) e = f(a)`, or `None` when `Df(a)` is too badly
/// conditioned.
pub fn newton_residual(f: &PolySystem, coords: &[Complex64]) -> Option<f64> {
    let n = f.n();
    let jac = jacobian(f);
    let fa: Vec<Complex64> = f.polys().iter().map(|p| p.eval(coords).expect("n coordinates")).collect();
    let df = CMatrix::from_fn(n, n, |i, j| jac[i][j].eval(coords).expect("n coordinates"));
    let cond = condition_number_1(&df);
    if cond.is_nan() || cond > COND_LIMIT {
        return None;
    }
    let e = lu_solve(&df, &fa)?;
    Some(e.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Fills `residual_log10` of every root.
pub fn attach_residuals(f: &PolySystem, rs: &mut RootSet) {
    for r in &mut rs.roots {
        r.residual_log10 = newton_residual(f, &r.coords).map(|e| if e == 0.0 { ZERO_RESIDUAL_LOG10 } else { e.log10() });
    }
}

pub fn residual_histogram(rs: &RootSet) -> Histogram {
    let mut h = Histogram::default();
    for r in &rs.roots {
        match r.residual_log10 {
            // the small offset keeps exact powers of ten in their own bin
            Some(l) => *h.bins.entry((l + 1e-9).floor() as i32).or_default() += 1,
            None => h.skipped += 1,
        }
    }
    h
}
