//! Fraction-free (Bareiss) elimination over the integers, used for ranks,
//! kernels, determinants and linear solves of rational matrices.

use num::{BigInt, Integer, One, Signed, Zero};

use super::QMatrix;
use crate::error::{Error, Result};
use crate::poly::Rational;

/// Scales each row by the lcm of its denominators. Returns the integer rows
/// and the scale factor applied to each row.
fn integer_rows(m: &QMatrix) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(m.rows());
    let mut scales = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let l = m.row(i).iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        rows.push(
            m.row(i)
                .iter()
                .map(|v| if v.is_zero() { BigInt::zero() } else { v.numer() * (&l / v.denom()) })
                .collect(),
        );
        scales.push(l);
    }
    (rows, scales)
}

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

/// Bareiss elimination to row echelon form, pivoting only over the first
/// `elim_cols` columns; the remaining columns ride along (augmented part).
fn bareiss(mut rows: Vec<Vec<BigInt>>, elim_cols: usize) -> Echelon {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..elim_cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            swaps += 1;
        }
        let (top, bottom) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for k in c + 1..ncols {
                let a = &row[k];
                let b = &pivot_row[k];
                let a_zero = a.is_zero();
                if a_zero && (lead.is_zero() || b.is_zero()) {
                    continue;
                }
                let mut v = if a_zero { BigInt::zero() } else { piv * a };
                if !lead.is_zero() && !b.is_zero() {
                    v -= &lead * b;
                }
                if !prev.is_one() {
                    debug_assert!((&v % &prev).is_zero(), "inexact Bareiss step");
                    v /= &prev;
                }
                row[k] = v;
            }
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon { rows, pivots, swaps }
}

pub fn rank(m: &QMatrix) -> usize {
    let (rows, _) = integer_rows(m);
    bareiss(rows, m.cols()).pivots.len()
}

pub fn det(m: &QMatrix) -> Rational {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Rational::one();
    }
    let (rows, scales) = integer_rows(m);
    let e = bareiss(rows, n);
    if e.pivots.len() < n {
        return Rational::zero();
    }
    let mut d = Rational::from_integer(e.rows[n - 1][n - 1].clone());
    if e.swaps % 2 == 1 {
        d = -d;
    }
    let s = scales.into_iter().fold(BigInt::one(), |a, b| a * b);
    d / Rational::from_integer(s)
}

/// Basis of `{w : M w = 0}`. Each vector has coprime integer entries with
/// its first non-zero entry positive. One vector per non-pivot column, in
/// increasing column order.
pub fn right_kernel(m: &QMatrix) -> Vec<Vec<Rational>> {
    let cols = m.cols();
    let (rows, _) = integer_rows(m);
    let e = bareiss(rows, cols);
    let is_pivot = {
        let mut v = vec![false; cols];
        for &p in &e.pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![Rational::zero(); cols];
        x[free] = Rational::one();
        for (r, &pc) in e.pivots.iter().enumerate().rev() {
            let row = &e.rows[r];
            let mut acc = Rational::zero();
            for k in pc + 1..cols {
                if !row[k].is_zero() && !x[k].is_zero() {
                    acc += &x[k] * Rational::from_integer(row[k].clone());
                }
            }
            x[pc] = -acc / Rational::from_integer(row[pc].clone());
        }
        basis.push(primitive(x));
    }
    basis
}

/// Scales a rational vector to coprime integers, first non-zero positive.
pub(crate) fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| Rational::from_integer(x / &g * &sign)).collect()
}

/// Solves `X A = B` for square invertible `A`, without forming `A^-1`.
pub fn solve_right(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    assert!(a.is_square(), "solve_right needs a square matrix");
    assert_eq!(a.cols(), b.cols(), "shape mismatch in solve_right");
    let n = a.rows();
    let nrhs = b.rows();
    // X A = B  <=>  A^T X^T = B^T ; eliminate on the augmented [A^T | B^T].
    let at = a.transpose();
    let bt = b.transpose();
    let mut aug = QMatrix::zeros(n, n + nrhs);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = at[(i, j)].clone();
        }
        for j in 0..nrhs {
            aug[(i, n + j)] = bt[(i, j)].clone();
        }
    }
    let (rows, _) = integer_rows(&aug);
    let e = bareiss(rows, n);
    if e.pivots.len() < n {
        return Err(Error::Singular);
    }
    let u = e.rows;
    let mut x = QMatrix::zeros(nrhs, n);
    for rhs in 0..nrhs {
        let mut sol = vec![Rational::zero(); n];
        for r in (0..n).rev() {
            let mut acc = Rational::from_integer(u[r][n + rhs].clone());
            for k in r + 1..n {
                if !u[r][k].is_zero() && !sol[k].is_zero() {
                    acc -= &sol[k] * Rational::from_integer(u[r][k].clone());
                }
            }
            sol[r] = acc / Rational::from_integer(u[r][r].clone());
        }
        for (j, v) in sol.into_iter().enumerate() {
            x[(rhs, j)] = v;
        }
    }
    Ok(x)
}

/// Characteristic polynomial `det(tI - A)` by the Faddeev-LeVerrier
/// recurrence. Coefficients in increasing degree; the last one is 1.
pub fn charpoly(a: &QMatrix) -> Vec<Rational> {
    assert!(a.is_square());
    let n = a.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = QMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = a.mul(&m);
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        let am = a.mul(&next);
        let tr: Rational = (0..n).map(|i| am[(i, i)].clone()).sum();
        coeffs[n - k] = -tr / Rational::from_integer(BigInt::from(k));
        m = next;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn q(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_i64(rows)
    }

    #[test]
    fn kernel_edge_cases() {
        assert!(right_kernel(&QMatrix::identity(3)).is_empty());
        let k = right_kernel(&QMatrix::zeros(2, 3));
        assert_eq!(k.len(), 3);
        assert_eq!(k[0], vec![rat(1), rat(0), rat(0)]);
    }

    #[test]
    fn kernel_is_primitive_and_annihilated() {
        let m = q(&[&[2, 4, -6, 1], &[1, 2, -3, 0], &[3, 6, -9, 1]]);
        let k = right_kernel(&m);
        assert_eq!(k.len(), 2);
        for w in &k {
            assert!(m.mul_vec(w).iter().all(Zero::is_zero));
        }
        assert_eq!(k[0], vec![rat(2), rat(-1), rat(0), rat(0)]);
        assert_eq!(k[1], vec![rat(3), rat(0), rat(1), rat(0)]);
    }

    #[test]
    fn rational_kernel() {
        let m = QMatrix::from_rows(vec![vec![Rational::new(1.into(), 2.into()), Rational::new(1.into(), 3.into())]]);
        assert_eq!(right_kernel(&m), vec![vec![rat(2), rat(-3)]]);
    }

    #[test]
    fn determinant() {
        assert_eq!(det(&q(&[&[0, 0, 1], &[-1, -1, 0], &[-1, 0, 0]])), rat(-1));
        assert_eq!(det(&q(&[&[1, 2], &[2, 4]])), rat(0));
        let m = QMatrix::from_rows(vec![
            vec![Rational::new(1.into(), 2.into()), rat(1)],
            vec![rat(3), rat(4)],
        ]);
        assert_eq!(det(&m), rat(-1));
        assert_eq!(rank(&q(&[&[1, 2], &[2, 4], &[0, 1]])), 2);
    }

    #[test]
    fn solve_against_inverse() {
        // X B(1) = B(x) for x^2 - 3x + 2 gives the companion matrix
        let b1 = q(&[&[-3, 1], &[1, 0]]);
        let bx = q(&[&[-2, 0], &[0, 1]]);
        let x = solve_right(&b1, &bx).unwrap();
        assert_eq!(x, q(&[&[0, -2], &[1, 3]]));
        assert_eq!(x.mul(&b1), bx);
        assert!(matches!(solve_right(&q(&[&[1, 2], &[2, 4]]), &bx), Err(Error::Singular)));
    }

    #[test]
    fn charpoly_of_companion() {
        let x = q(&[&[0, -2], &[1, 3]]);
        assert_eq!(charpoly(&x), vec![rat(2), rat(-3), rat(1)]);
    }
}
