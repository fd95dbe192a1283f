//! Bezout polynomials and Bezout matrices of a square polynomial system.
//!
//! Two routes are provided: an exact determinant of the finite-difference
//! matrix over polynomial arithmetic, and evaluation on Fourier grids
//! followed by a DFT. The second is the default and is checked against
//! direct evaluation at random points.

mod delta;
mod grid;
mod interp;

pub use delta::{bezoutian_of, bezoutian_symbolic, delta_entry, delta_matrix, poly_det, DeltaMatrix, SYMBOLIC_LIMIT};
pub use grid::{degree_bounds, evaluate_determinant_grid, fourier_grid, EvalGrid, FourierGrid};
pub use interp::{interpolate_bezout, Interpolated};

pub(crate) use grid::{gamma_for, NumericSystem};

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num::complex::Complex64;
use num::{BigInt, Integer, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::par::Parallelism;
use crate::poly::{multidegree, rat_to_f64, Ambient, Monomial, Poly, PolySystem, Rational};

/// Bezout matrices sharing one row family (polynomials in `x`) and one
/// column family (polynomials in `y`), so that
/// `delta_k = row_family . matrices[k] . col_family^T`.
///
/// A freshly built set holds `B(1), B(x_1), ..., B(x_n)` and both families
/// are monomials sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutSet {
    pub n: usize,
    pub matrices: Vec<QMatrix>,
    pub row_family: Vec<Poly>,
    pub col_family: Vec<Poly>,
}

impl BezoutSet {
    /// Lays out Bezout polynomials (over the joint set) on the union of
    /// their supports.
    pub fn from_bezoutians(n: usize, deltas: &[Poly]) -> BezoutSet {
        let split = |m: &Monomial| (Monomial::new(m.exponents()[..n].to_vec()), Monomial::new(m.exponents()[n..].to_vec()));
        let mut xs = BTreeSet::new();
        let mut ys = BTreeSet::new();
        for d in deltas {
            assert_eq!(d.ambient(), Ambient::XY(n), "bezoutian over the wrong ring");
            for (m, _) in d.terms() {
                let (mx, my) = split(m);
                xs.insert(mx);
                ys.insert(my);
            }
        }
        let mut xs: Vec<Monomial> = xs.into_iter().collect();
        let mut ys: Vec<Monomial> = ys.into_iter().collect();
        xs.sort_by(|a, b| a.lex_cmp(b));
        ys.sort_by(|a, b| a.lex_cmp(b));
        let matrices = deltas
            .iter()
            .map(|d| {
                let mut b = QMatrix::zeros(xs.len(), ys.len());
                for (m, c) in d.terms() {
                    let (mx, my) = split(m);
                    let i = xs.binary_search_by(|t| t.lex_cmp(&mx)).unwrap();
                    let j = ys.binary_search_by(|t| t.lex_cmp(&my)).unwrap();
                    b[(i, j)] = c.clone();
                }
                b
            })
            .collect();
        BezoutSet {
            n,
            matrices,
            row_family: xs.into_iter().map(|m| Poly::term(Ambient::X(n), m, Rational::one())).collect(),
            col_family: ys.into_iter().map(|m| Poly::term(Ambient::Y(n), m, Rational::one())).collect(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.row_family.len(), self.col_family.len())
    }

    /// `row_family . matrices[k] . col_family^T` over the joint set.
    pub fn bezoutian(&self, k: usize) -> Poly {
        let n = self.n;
        let joint = Ambient::XY(n);
        let rows: Vec<Poly> = self.row_family.iter().map(|p| p.remap(joint, |t| t)).collect();
        let cols: Vec<Poly> = self.col_family.iter().map(|p| p.remap(joint, |t| n + t)).collect();
        let b = &self.matrices[k];
        let mut acc = Poly::zero(joint);
        for (j, col) in cols.iter().enumerate() {
            let mut left = Poly::zero(joint);
            for (i, row) in rows.iter().enumerate() {
                if !b[(i, j)].is_zero() {
                    left = &left + &row.scale(&b[(i, j)]);
                }
            }
            if !left.is_zero() {
                acc = &acc + &(&left * col);
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Points added to every axis beyond the degree bound.
    pub margin: usize,
    pub round_tol: f64,
    pub force_symbolic: bool,
    /// Random off-grid points used to check each interpolated bezoutian.
    pub verify_samples: usize,
    pub verify_seed: u64,
    pub parallelism: Parallelism,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            margin: 1,
            round_tol: 1e-6,
            force_symbolic: false,
            verify_samples: 8,
            verify_seed: 0x5eed,
            parallelism: Parallelism::default(),
        }
    }
}

/// How one bezoutian was obtained.
#[derive(Clone, Debug, PartialEq)]
pub enum BuildPath {
    Interpolated { max_deviation: f64 },
    Symbolic,
    /// The fast path failed and the exact determinant was used instead.
    Fallback { reason: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct BuildTrace {
    pub x_sizes: Vec<usize>,
    pub y_sizes: Vec<usize>,
    pub paths: Vec<BuildPath>,
}

/// Relative tolerance of the off-grid check.
pub const VERIFY_TOL: f64 = 1e-6;

/// An interpolated bezoutian together with its rounding deviation.
#[derive(Clone, Debug)]
pub struct FastBezoutian {
    pub poly: Poly,
    pub max_deviation: f64,
    pub grid: FourierGrid,
}

/// Multiplies each equation by the lcm of its denominators.
fn integer_scaled(f: &PolySystem) -> (PolySystem, BigInt) {
    let mut total = BigInt::one();
    let polys = f
        .polys()
        .iter()
        .map(|p| {
            let l = p.denominator_lcm();
            let q = p.scale(&Rational::from_integer(l.clone()));
            total *= l;
            q
        })
        .collect();
    (PolySystem::new(polys).expect("scaling keeps the shape"), total)
}

fn off_grid_ok(sys: &NumericSystem, gamma: &Monomial, delta: &Poly, samples: usize, seed: u64) -> bool {
    let n = gamma.nvars();
    let scale = delta.terms().map(|(_, c)| rat_to_f64(c).abs()).sum::<f64>().max(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut taken = 0;
    let mut attempts = 0;
    while taken < samples && attempts < 100 * samples.max(1) {
        attempts += 1;
        let u: Vec<Complex64> = (0..n).map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI))).collect();
        let v: Vec<Complex64> = (0..n).map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI))).collect();
        if (0..n).any(|j| (u[j] - v[j]).norm() < 1e-3) {
            continue;
        }
        let direct = sys.det_delta(gamma.exponents(), &u, &v).expect("points are separated");
        let interp = grid::eval_joint(delta, &u, &v);
        if (direct - interp).norm() > VERIFY_TOL * scale {
            return false;
        }
        taken += 1;
    }
    true
}

/// Bezoutian of `x_k` (`x_0 = 1`) by evaluation and interpolation, checked
/// at random points off the grid.
pub fn bezoutian_interpolated(f: &PolySystem, k: usize, opts: &BuildOptions) -> Result<FastBezoutian> {
    let n = f.n();
    let (scaled, factor) = integer_scaled(f);
    let grid = fourier_grid(&multidegree(f), opts.margin)?;
    let c = evaluate_determinant_grid(&scaled, k, &grid, opts.parallelism)?;
    let r = interpolate_bezout(&c, &grid, opts.round_tol)?;
    let mut poly = r.to_poly(n);
    if !factor.is_one() {
        poly = poly.scale(&Rational::new(BigInt::one(), factor));
    }
    let gamma = gamma_for(n, k);
    let sys = NumericSystem::new(f);
    if !off_grid_ok(&sys, &gamma, &poly, opts.verify_samples, opts.verify_seed.wrapping_add(k as u64)) {
        return Err(Error::InterpolationUnreliable { deviation: r.max_deviation });
    }
    Ok(FastBezoutian { poly, max_deviation: r.max_deviation, grid })
}

pub fn build_bezout_set(f: &PolySystem, opts: &BuildOptions) -> Result<BezoutSet> {
    build_bezout_set_traced(f, opts).map(|(b, _)| b)
}

pub fn build_bezout_set_traced(f: &PolySystem, opts: &BuildOptions) -> Result<(BezoutSet, BuildTrace)> {
    let n = f.n();
    if f.polys().iter().all(Poly::is_zero) {
        return Err(Error::ZeroSystem);
    }
    let grid = fourier_grid(&multidegree(f), opts.margin)?;
    let mut trace = BuildTrace { x_sizes: grid.x_sizes.clone(), y_sizes: grid.y_sizes.clone(), paths: Vec::new() };
    let mut deltas = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if opts.force_symbolic {
            deltas.push(bezoutian_symbolic(f, &gamma_for(n, k))?);
            trace.paths.push(BuildPath::Symbolic);
            continue;
        }
        match bezoutian_interpolated(f, k, opts) {
            Ok(fast) => {
                deltas.push(fast.poly);
                trace.paths.push(BuildPath::Interpolated { max_deviation: fast.max_deviation });
            }
            Err(e) if n <= SYMBOLIC_LIMIT => {
                deltas.push(bezoutian_symbolic(f, &gamma_for(n, k))?);
                trace.paths.push(BuildPath::Fallback { reason: e.to_string() });
            }
            Err(e) => return Err(e),
        }
    }
    Ok((BezoutSet::from_bezoutians(n, &deltas), trace))
}

/// Lcm of all denominators in a set of matrices; handy for callers that
/// want integer matrices.
pub fn denominator_lcm(ms: &[QMatrix]) -> BigInt {
    ms.iter()
        .flat_map(|m| (0..m.rows()).flat_map(move |i| m.row(i).iter().map(|v| v.denom().clone())))
        .fold(BigInt::one(), |a, d| a.lcm(&d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_system;

    fn example() -> PolySystem {
        parse_system("x1^2 + x1*x2^2 - 1\nx1^2*x2 + x1").unwrap()
    }

    fn names(fam: &[Poly]) -> Vec<String> {
        fam.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn two_curves_tables() {
        let (set, trace) = build_bezout_set_traced(&example(), &BuildOptions::default()).unwrap();
        assert_eq!(names(&set.row_family), ["1", "x2", "x2^2", "x1", "x1*x2", "x1*x2^2"]);
        assert_eq!(names(&set.col_family), ["1", "y1", "y1*y2", "y1^2", "y1^2*y2", "y1^3"]);
        assert!(trace.paths.iter().all(|p| matches!(p, BuildPath::Interpolated { .. })));
        let b0 = QMatrix::from_i64(&[
            [0, 0, -1, 0, 0, 1],
            [0, -1, 0, 0, -1, 0],
            [0, 0, 0, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, -1, 0, 0, 0],
            [0, -1, 0, 0, 0, 0],
        ]);
        let b1 = QMatrix::from_i64(&[
            [0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, -1, 0],
            [0, 0, 0, -1, 0, 0],
        ]);
        let b2 = QMatrix::from_i64(&[
            [-1, 0, 0, 0, 0, 0],
            [0, -1, -1, 0, 0, 1],
            [0, -1, 0, 0, -1, 0],
            [0, -1, 0, 0, 0, 0],
            [-1, 0, 0, 1, 0, 0],
            [0, 0, -1, 0, 0, 0],
        ]);
        assert_eq!(set.matrices, vec![b0, b1, b2]);
        let sym = build_bezout_set(&example(), &BuildOptions { force_symbolic: true, ..Default::default() }).unwrap();
        assert_eq!(sym, set);
    }

    #[test]
    fn univariate_sets() {
        let set = build_bezout_set(&parse_system("x1^2 - 3*x1 + 2").unwrap(), &BuildOptions::default()).unwrap();
        assert_eq!(set.matrices[0], QMatrix::from_i64(&[[-3, 1], [1, 0]]));
        assert_eq!(set.matrices[1], QMatrix::from_i64(&[[-2, 0], [0, 1]]));
        let set = build_bezout_set(&parse_system("x1 - 4").unwrap(), &BuildOptions::default()).unwrap();
        assert_eq!(set.matrices, vec![QMatrix::from_i64(&[[1]]), QMatrix::from_i64(&[[4]])]);
    }

    #[test]
    fn identity_holds() {
        let f = example();
        let set = build_bezout_set(&f, &BuildOptions::default()).unwrap();
        for k in 0..=2 {
            assert_eq!(set.bezoutian(k), bezoutian_symbolic(&f, &gamma_for(2, k)).unwrap());
        }
    }

    #[test]
    fn rational_coefficients() {
        let f = parse_system("1/2*x1^2 - 3/2*x1 + 1").unwrap();
        let set = build_bezout_set(&f, &BuildOptions::default()).unwrap();
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(set.matrices[0], QMatrix::from_i64(&[[-3, 1], [1, 0]]).scale(&half));
    }

    #[test]
    fn zero_system() {
        let f = PolySystem::new(vec![Poly::zero(Ambient::X(1))]).unwrap();
        assert!(matches!(build_bezout_set(&f, &BuildOptions::default()), Err(Error::ZeroSystem)));
    }

    #[test]
    fn undersized_grid_falls_back() {
        // margin 0 leaves no slack for the x_k factor; the check must notice
        let f = example();
        let opts = BuildOptions { margin: 0, ..Default::default() };
        let (set, _) = build_bezout_set_traced(&f, &opts).unwrap();
        let exact = build_bezout_set(&f, &BuildOptions { force_symbolic: true, ..Default::default() }).unwrap();
        assert_eq!(set, exact);
    }
}
