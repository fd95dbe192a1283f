//! Fourier multi-point grids and numeric determinant evaluation on them.

use std::f64::consts::PI;

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{lu_det, CMatrix};
use crate::par::{self, Parallelism};
use crate::poly::{rat_to_f64, Monomial, Multidegree, Poly, PolySystem};

/// Minimum distance kept between the `U_j` and `V_j` axes.
pub const DISJOINT_TOL: f64 = 1e-9;

/// Per-variable exponent bounds of the Bezout polynomials:
/// `x_j <= j*d_j`, `y_j <= (n-j+1)*d_j` (variables numbered from 1).
pub fn degree_bounds(d: &Multidegree) -> (Vec<usize>, Vec<usize>) {
    let n = d.0.len();
    let x = d.0.iter().enumerate().map(|(j, &dj)| (j + 1) * dj as usize).collect();
    let y = d.0.iter().enumerate().map(|(j, &dj)| (n - j) * dj as usize).collect();
    (x, y)
}

/// `U = U_1 x ... x U_n` with `U_j` the `x_sizes[j]`-th roots of unity, and
/// `V` likewise with `V_j` the roots of `X^m - theta_j`,
/// `theta_j = exp(i pi / j)`.
#[derive(Clone, Debug)]
pub struct FourierGrid {
    pub x_sizes: Vec<usize>,
    pub y_sizes: Vec<usize>,
    pub margin: usize,
    u_axes: Vec<Vec<Complex64>>,
    v_axes: Vec<Vec<Complex64>>,
    /// `s_j = theta_j^(1/m)`, the rotation of `V_j` against the plain roots of unity.
    v_shift: Vec<Complex64>,
}

fn unit(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

fn roots_of_unity(m: usize) -> Vec<Complex64> {
    (0..m).map(|k| unit(2.0 * PI * k as f64 / m as f64)).collect()
}

fn min_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().flat_map(|u| b.iter().map(move |v| (u - v).norm())).fold(f64::INFINITY, f64::min)
}

impl FourierGrid {
    /// Builds the grid from explicit axis sizes. A `V_j` axis that lands on
    /// `U_j` is grown one point at a time until the two are disjoint.
    pub fn with_sizes(x_sizes: Vec<usize>, mut y_sizes: Vec<usize>, margin: usize) -> Result<Self> {
        assert_eq!(x_sizes.len(), y_sizes.len());
        let n = x_sizes.len();
        let mut u_axes = Vec::with_capacity(n);
        let mut v_axes = Vec::with_capacity(n);
        let mut v_shift = Vec::with_capacity(n);
        for j in 0..n {
            if x_sizes[j] == 0 || y_sizes[j] == 0 {
                return Err(Error::DegenerateGrid { axis: j + 1 });
            }
            let u = roots_of_unity(x_sizes[j]);
            let theta_angle = PI / (j + 1) as f64;
            loop {
                let m = y_sizes[j];
                let s = unit(theta_angle / m as f64);
                let v: Vec<Complex64> = roots_of_unity(m).into_iter().map(|z| z * s).collect();
                if min_distance(&u, &v) > DISJOINT_TOL {
                    v_axes.push(v);
                    v_shift.push(s);
                    break;
                }
                y_sizes[j] += 1;
            }
            u_axes.push(u);
        }
        let grid = FourierGrid { x_sizes, y_sizes, margin, u_axes, v_axes, v_shift };
        for j in 0..n {
            let dist = min_distance(&grid.u_axes[j], &grid.v_axes[j]);
            if dist <= DISJOINT_TOL {
                return Err(Error::GridCollision { axis: j + 1, distance: dist });
            }
        }
        Ok(grid)
    }

    pub fn n(&self) -> usize {
        self.x_sizes.len()
    }

    pub fn u_axis(&self, j: usize) -> &[Complex64] {
        &self.u_axes[j]
    }

    pub fn v_axis(&self, j: usize) -> &[Complex64] {
        &self.v_axes[j]
    }

    pub fn v_shift(&self, j: usize) -> Complex64 {
        self.v_shift[j]
    }

    pub fn num_u(&self) -> usize {
        self.x_sizes.iter().product()
    }

    pub fn num_v(&self) -> usize {
        self.y_sizes.iter().product()
    }

    /// Point number `idx` of `U`, the first coordinate varying slowest.
    pub fn u_point(&self, idx: usize) -> Vec<Complex64> {
        point(&self.u_axes, &self.x_sizes, idx)
    }

    pub fn v_point(&self, idx: usize) -> Vec<Complex64> {
        point(&self.v_axes, &self.y_sizes, idx)
    }
}

fn point(axes: &[Vec<Complex64>], sizes: &[usize], mut idx: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); sizes.len()];
    for j in (0..sizes.len()).rev() {
        out[j] = axes[j][idx % sizes[j]];
        idx /= sizes[j];
    }
    out
}

/// Grid sized by the degree bounds plus `margin`.
pub fn fourier_grid(d: &Multidegree, margin: usize) -> Result<FourierGrid> {
    let (xb, yb) = degree_bounds(d);
    FourierGrid::with_sizes(
        xb.into_iter().map(|b| b + margin).collect(),
        yb.into_iter().map(|b| b + margin).collect(),
        margin,
    )
}

/// `values[(u, v)] = det Delta(x_k)(u, v)` over the whole grid.
#[derive(Clone, Debug)]
pub struct EvalGrid {
    pub k: usize,
    pub values: CMatrix,
}

/// A system compiled for repeated complex evaluation.
pub(crate) struct NumericSystem {
    n: usize,
    polys: Vec<Vec<(Complex64, Vec<u32>)>>,
}

impl NumericSystem {
    pub(crate) fn new(f: &PolySystem) -> Self {
        let polys = f
            .polys()
            .iter()
            .map(|p| {
                p.terms()
                    .map(|(m, c)| (Complex64::new(rat_to_f64(c), 0.0), m.exponents().to_vec()))
                    .collect()
            })
            .collect();
        NumericSystem { n: f.n(), polys }
    }

    fn eval(&self, i: usize, pt: &[Complex64]) -> Complex64 {
        self.polys[i]
            .iter()
            .map(|(c, e)| e.iter().zip(pt).fold(*c, |acc, (&k, z)| if k == 0 { acc } else { acc * z.powu(k) }))
            .sum()
    }

    /// Numeric `Delta(x^gamma)(u, v)`; `None` if some `u_j` and `v_j` coincide.
    pub(crate) fn delta(&self, gamma: &[u32], u: &[Complex64], v: &[Complex64]) -> Option<CMatrix> {
        let n = self.n;
        if (0..n).any(|j| (u[j] - v[j]).norm() < 1e-12) {
            return None;
        }
        // mixed[m] takes its first m coordinates from v and the rest from u
        let mut mixed = u.to_vec();
        let mut vals = vec![vec![Complex64::new(0.0, 0.0); n + 1]; n];
        for m in 0..=n {
            if m > 0 {
                mixed[m - 1] = v[m - 1];
            }
            for (i, row) in vals.iter_mut().enumerate() {
                row[m] = self.eval(i, &mixed);
            }
        }
        Some(CMatrix::from_fn(n, n, |i, j| {
            let g = gamma[j];
            (v[j].powu(g) * vals[i][j] - u[j].powu(g) * vals[i][j + 1]) / (u[j] - v[j])
        }))
    }

    pub(crate) fn det_delta(&self, gamma: &[u32], u: &[Complex64], v: &[Complex64]) -> Option<Complex64> {
        self.delta(gamma, u, v).map(|m| lu_det(&m))
    }
}

/// The exponent of `x_k` (`x_0 = 1`).
pub(crate) fn gamma_for(n: usize, k: usize) -> Monomial {
    if k == 0 {
        Monomial::one(n)
    } else {
        Monomial::var(n, k - 1)
    }
}

pub fn evaluate_determinant_grid(
    f: &PolySystem,
    k: usize,
    grid: &FourierGrid,
    parallelism: Parallelism,
) -> Result<EvalGrid> {
    let n = f.n();
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds n = {n}")));
    }
    if grid.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: grid.n() });
    }
    let sys = NumericSystem::new(f);
    let gamma = gamma_for(n, k);
    let gamma = gamma.exponents();
    let vs: Vec<Vec<Complex64>> = (0..grid.num_v()).map(|b| grid.v_point(b)).collect();
    let rows: Vec<Option<Vec<Complex64>>> = par::map_range(parallelism, grid.num_u(), |a| {
        let u = grid.u_point(a);
        vs.iter().map(|v| sys.det_delta(gamma, &u, v)).collect()
    });
    let mut values = CMatrix::zeros(grid.num_u(), grid.num_v());
    for (a, row) in rows.into_iter().enumerate() {
        let row = row.ok_or_else(|| {
            let u = grid.u_point(a);
            let (axis, distance) = (0..n)
                .map(|j| (j + 1, min_distance(&[u[j]], grid.v_axis(j))))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap_or((0, 0.0));
            Error::GridCollision { axis, distance }
        })?;
        for (b, z) in row.into_iter().enumerate() {
            values[(a, b)] = z;
        }
    }
    Ok(EvalGrid { k, values })
}

/// Evaluates a polynomial over the joint set at `(u, v)`.
pub(crate) fn eval_joint(p: &Poly, u: &[Complex64], v: &[Complex64]) -> Complex64 {
    let mut pt = u.to_vec();
    pt.extend_from_slice(v);
    p.eval(&pt).expect("joint point has 2n coordinates")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bezout::delta::bezoutian_symbolic;
    use crate::poly::{multidegree, parse_system};

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn bounds() {
        assert_eq!(degree_bounds(&Multidegree(vec![2, 2])), (vec![2, 4], vec![4, 2]));
        assert_eq!(degree_bounds(&Multidegree(vec![5])), (vec![5], vec![5]));
        assert_eq!(degree_bounds(&Multidegree(vec![0, 0, 0])), (vec![0; 3], vec![0; 3]));
    }

    #[test]
    fn grid_points() {
        let g = fourier_grid(&Multidegree(vec![2, 2]), 0).unwrap();
        assert_eq!((g.x_sizes.clone(), g.y_sizes.clone()), (vec![2, 4], vec![4, 2]));
        for z in g.v_axis(0) {
            assert!(close(z.powu(4), Complex64::new(-1.0, 0.0), 1e-12));
        }
        for z in g.v_axis(1) {
            assert!(close(z.powu(2), Complex64::new(0.0, 1.0), 1e-12));
        }
        for z in g.u_axis(1) {
            assert!(close(z.powu(4), Complex64::new(1.0, 0.0), 1e-12));
        }
        assert_eq!(g.num_u(), 8);
        assert_eq!(g.num_v(), 8);

        let g = fourier_grid(&Multidegree(vec![1]), 0).unwrap();
        assert!(close(g.u_axis(0)[0], Complex64::new(1.0, 0.0), 1e-15));
        assert!(close(g.v_axis(0)[0], Complex64::new(-1.0, 0.0), 1e-15));

        let g = fourier_grid(&Multidegree(vec![1, 3]), 1).unwrap();
        assert_eq!(g.x_sizes, vec![2, 7]);
    }

    #[test]
    fn colliding_axis_is_grown() {
        // U = {1, -1} and V = {-1} collide; the V axis is enlarged
        let g = FourierGrid::with_sizes(vec![2], vec![1], 0).unwrap();
        assert_eq!(g.y_sizes, vec![2]);
        assert!(min_distance(g.u_axis(0), g.v_axis(0)) > DISJOINT_TOL);
        assert!(matches!(FourierGrid::with_sizes(vec![0], vec![1], 0), Err(Error::DegenerateGrid { axis: 1 })));
    }

    #[test]
    fn grid_values_match_oracle() {
        let f = parse_system("x1^2 + x1*x2^2 - 1\nx1^2*x2 + x1").unwrap();
        let grid = fourier_grid(&multidegree(&f), 1).unwrap();
        for k in 0..=2 {
            let c = evaluate_determinant_grid(&f, k, &grid, Parallelism::Sequential).unwrap();
            let d = bezoutian_symbolic(&f, &gamma_for(2, k)).unwrap();
            for a in (0..grid.num_u()).step_by(3) {
                for b in (0..grid.num_v()).step_by(2) {
                    let want = eval_joint(&d, &grid.u_point(a), &grid.v_point(b));
                    assert!(close(c.values[(a, b)], want, 1e-9));
                }
            }
        }
    }

    #[test]
    fn univariate_values() {
        let f = parse_system("x1^2 - 3*x1 + 2").unwrap();
        let grid = fourier_grid(&multidegree(&f), 0).unwrap();
        let c = evaluate_determinant_grid(&f, 0, &grid, Parallelism::Parallel).unwrap();
        for a in 0..grid.num_u() {
            for b in 0..grid.num_v() {
                let (u, v) = (grid.u_point(a)[0], grid.v_point(b)[0]);
                assert!(close(c.values[(a, b)], u + v - 3.0, 1e-12));
            }
        }
        let lin = parse_system("x1 - 7").unwrap();
        let grid = fourier_grid(&multidegree(&lin), 1).unwrap();
        let c = evaluate_determinant_grid(&lin, 0, &grid, Parallelism::Sequential).unwrap();
        assert!(c.values.data().iter().all(|z| close(*z, Complex64::new(1.0, 0.0), 1e-12)));
    }
}
