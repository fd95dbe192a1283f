//! Recovery of Bezout coefficients from grid values by a 2n-dimensional DFT.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num::complex::Complex64;
use num::{BigInt, FromPrimitive, Zero};
use rustfft::FftPlanner;

use super::grid::{EvalGrid, FourierGrid};
use crate::error::{Error, Result};
use crate::poly::{Ambient, Monomial, Poly, Rational};

/// Largest magnitude that still rounds reliably from an `f64`.
const EXACT_LIMIT: f64 = 9_007_199_254_740_992.0;

/// Integer coefficients `coeffs[a][b]` of `x^support_x[a] y^support_y[b]`.
/// Supports are sorted lexicographically on exponent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Interpolated {
    pub support_x: Vec<Monomial>,
    pub support_y: Vec<Monomial>,
    pub coeffs: Vec<Vec<BigInt>>,
    pub max_deviation: f64,
}

impl Interpolated {
    /// The coefficients as a polynomial over the joint `(x, y)` set.
    pub fn to_poly(&self, n: usize) -> Poly {
        let mut terms = Vec::new();
        for (a, mx) in self.support_x.iter().enumerate() {
            for (b, my) in self.support_y.iter().enumerate() {
                let c = &self.coeffs[a][b];
                if !c.is_zero() {
                    let mut e = mx.exponents().to_vec();
                    e.extend_from_slice(my.exponents());
                    terms.push((Monomial::new(e), Rational::from_integer(c.clone())));
                }
            }
        }
        Poly::from_terms(Ambient::XY(n), terms)
    }
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.lex_cmp(b)
}

/// Forward FFT along one axis of a row-major tensor.
fn fft_axis(data: &mut [Complex64], dims: &[usize], axis: usize, planner: &mut FftPlanner<f64>) {
    let len = dims[axis];
    if len == 1 {
        return;
    }
    let inner: usize = dims[axis + 1..].iter().product();
    let outer: usize = dims[..axis].iter().product();
    let fft = planner.plan_fft_forward(len);
    let mut buf = vec![Complex64::zero(); len];
    for o in 0..outer {
        for i in 0..inner {
            let base = o * len * inner + i;
            for (l, z) in buf.iter_mut().enumerate() {
                *z = data[base + l * inner];
            }
            fft.process(&mut buf);
            for (l, z) in buf.iter().enumerate() {
                data[base + l * inner] = *z;
            }
        }
    }
}

fn unflatten(mut idx: usize, dims: &[usize]) -> Vec<u32> {
    let mut out = vec![0u32; dims.len()];
    for j in (0..dims.len()).rev() {
        out[j] = (idx % dims[j]) as u32;
        idx /= dims[j];
    }
    out
}

/// Inverts `C = F_u B F_v^T` and rounds the result to integers.
///
/// On the `V_j` axes the points are `s_j w^l` with `w` a root of unity, so
/// the plain DFT returns `s_j^e b_e`; slot `e` is divided by `s_j^e`.
pub fn interpolate_bezout(c: &EvalGrid, grid: &FourierGrid, round_tol: f64) -> Result<Interpolated> {
    let n = grid.n();
    let (nu, nv) = (grid.num_u(), grid.num_v());
    if c.values.rows() != nu || c.values.cols() != nv {
        return Err(Error::DimensionMismatch { expected: nu * nv, got: c.values.rows() * c.values.cols() });
    }
    let dims: Vec<usize> = grid.x_sizes.iter().chain(&grid.y_sizes).copied().collect();
    let mut data = c.values.data().to_vec();
    let mut planner = FftPlanner::new();
    for axis in 0..2 * n {
        fft_axis(&mut data, &dims, axis, &mut planner);
    }
    let total = (nu * nv) as f64;

    let mut max_deviation = 0.0f64;
    let mut entries = Vec::new();
    for (flat, z) in data.iter().enumerate() {
        let e = unflatten(flat, &dims);
        let mut w = z / total;
        for j in 0..n {
            let b = e[n + j];
            if b > 0 {
                w /= grid.v_shift(j).powu(b);
            }
        }
        let r = w.re.round();
        let dev = (w.re - r).abs().max(w.im.abs());
        max_deviation = max_deviation.max(dev);
        if r.abs() > EXACT_LIMIT {
            return Err(Error::InterpolationUnreliable { deviation: f64::INFINITY });
        }
        if r != 0.0 {
            entries.push((Monomial::new(e[..n].to_vec()), Monomial::new(e[n..].to_vec()), r));
        }
    }
    if max_deviation > round_tol {
        return Err(Error::InterpolationUnreliable { deviation: max_deviation });
    }

    let xs: BTreeSet<&Monomial> = entries.iter().map(|t| &t.0).collect();
    let ys: BTreeSet<&Monomial> = entries.iter().map(|t| &t.1).collect();
    let mut support_x: Vec<Monomial> = xs.into_iter().cloned().collect();
    let mut support_y: Vec<Monomial> = ys.into_iter().cloned().collect();
    support_x.sort_by(lex);
    support_y.sort_by(lex);
    let mut coeffs = vec![vec![BigInt::zero(); support_y.len()]; support_x.len()];
    for (mx, my, r) in &entries {
        let a = support_x.binary_search_by(|m| lex(m, mx)).expect("x support");
        let b = support_y.binary_search_by(|m| lex(m, my)).expect("y support");
        coeffs[a][b] = BigInt::from_f64(*r).expect("finite coefficient");
    }
    Ok(Interpolated { support_x, support_y, coeffs, max_deviation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bezout::delta::bezoutian_symbolic;
    use crate::bezout::grid::{evaluate_determinant_grid, fourier_grid, gamma_for};
    use crate::linalg::CMatrix;
    use crate::par::Parallelism;
    use crate::poly::{multidegree, parse_poly_in, parse_system};

    #[test]
    fn univariate_delta_one() {
        let f = parse_system("x1^2 - 3*x1 + 2").unwrap();
        let grid = fourier_grid(&multidegree(&f), 1).unwrap();
        let c = evaluate_determinant_grid(&f, 0, &grid, Parallelism::Sequential).unwrap();
        let r = interpolate_bezout(&c, &grid, 1e-6).unwrap();
        assert_eq!(r.to_poly(1), parse_poly_in("x1 + y1 - 3", Ambient::XY(1)).unwrap());
        assert_eq!(r.support_x, vec![Monomial::new(vec![0]), Monomial::new(vec![1])]);
        assert!(r.max_deviation < 1e-9);
    }

    #[test]
    fn zero_grid() {
        let grid = fourier_grid(&crate::poly::Multidegree(vec![1, 1]), 0).unwrap();
        let c = EvalGrid { k: 0, values: CMatrix::zeros(grid.num_u(), grid.num_v()) };
        let r = interpolate_bezout(&c, &grid, 1e-6).unwrap();
        assert!(r.support_x.is_empty() && r.support_y.is_empty());
    }

    #[test]
    fn multivariate_matches_oracle() {
        let f = parse_system("x1^2 + x1*x2^2 - 1\nx1^2*x2 + x1").unwrap();
        let grid = fourier_grid(&multidegree(&f), 1).unwrap();
        for k in 0..=2 {
            let c = evaluate_determinant_grid(&f, k, &grid, Parallelism::Parallel).unwrap();
            let r = interpolate_bezout(&c, &grid, 1e-6).unwrap();
            assert_eq!(r.to_poly(2), bezoutian_symbolic(&f, &gamma_for(2, k)).unwrap());
        }
    }

    #[test]
    fn noisy_values_are_rejected() {
        let f = parse_system("x1^2 - 3*x1 + 2").unwrap();
        let grid = fourier_grid(&multidegree(&f), 1).unwrap();
        let mut c = evaluate_determinant_grid(&f, 0, &grid, Parallelism::Sequential).unwrap();
        c.values[(0, 0)] += Complex64::new(0.1, 0.0);
        assert!(matches!(interpolate_bezout(&c, &grid, 1e-6), Err(Error::InterpolationUnreliable { .. })));
    }
}
