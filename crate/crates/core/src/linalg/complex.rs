use std::ops::{Index, IndexMut};

use num::complex::Complex64;
use num::Zero;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex64::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `sum_k w[k] * ms[k]`.
    pub fn linear_combination(ms: &[CMatrix], w: &[f64]) -> CMatrix {
        assert_eq!(ms.len(), w.len());
        let mut out = CMatrix::zeros(ms[0].rows, ms[0].cols);
        for (m, &wk) in ms.iter().zip(w) {
            for (o, a) in out.data.iter_mut().zip(&m.data) {
                *o += a * wk;
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
    swaps: usize,
    singular: bool,
}

fn lu(mut a: CMatrix) -> Lu {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut swaps = 0;
    let mut singular = false;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[(i, k)].norm().total_cmp(&a[(j, k)].norm()))
            .unwrap();
        if a[(p, k)].norm() == 0.0 {
            singular = true;
            continue;
        }
        if p != k {
            for j in 0..n {
                a.data.swap(k * n + j, p * n + j);
            }
            perm.swap(k, p);
            swaps += 1;
        }
        let piv = a[(k, k)];
        for i in k + 1..n {
            let l = a[(i, k)] / piv;
            a[(i, k)] = l;
            if l.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let u = a[(k, j)];
                a[(i, j)] -= l * u;
            }
        }
    }
    Lu { lu: a, perm, swaps, singular }
}

/// Determinant by LU factorisation with partial pivoting.
pub fn lu_det(a: &CMatrix) -> Complex64 {
    let f = lu(a.clone());
    if f.singular {
        return Complex64::zero();
    }
    let mut d: Complex64 = (0..a.rows).map(|i| f.lu[(i, i)]).product();
    if f.swaps % 2 == 1 {
        d = -d;
    }
    d
}

fn lu_apply(f: &Lu, b: &[Complex64]) -> Vec<Complex64> {
    let n = f.lu.rows;
    let mut x: Vec<Complex64> = f.perm.iter().map(|&p| b[p]).collect();
    for i in 0..n {
        for k in 0..i {
            let l = f.lu[(i, k)];
            let xk = x[k];
            x[i] -= l * xk;
        }
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            let u = f.lu[(i, k)];
            let xk = x[k];
            x[i] -= u * xk;
        }
        x[i] /= f.lu[(i, i)];
    }
    x
}

/// Solves `A x = b`; `None` when a zero pivot is met.
pub fn lu_solve(a: &CMatrix, b: &[Complex64]) -> Option<Vec<Complex64>> {
    let f = lu(a.clone());
    if f.singular {
        return None;
    }
    Some(lu_apply(&f, b))
}

/// `||A||_1 ||A^-1||_1`, infinite for singular `A`.
pub fn condition_number_1(a: &CMatrix) -> f64 {
    let n = a.rows;
    if n == 0 {
        return 1.0;
    }
    let f = lu(a.clone());
    if f.singular {
        return f64::INFINITY;
    }
    let mut inv = CMatrix::zeros(n, n);
    for j in 0..n {
        let mut e = vec![Complex64::zero(); n];
        e[j] = Complex64::new(1.0, 0.0);
        let col = lu_apply(&f, &e);
        for i in 0..n {
            inv[(i, j)] = col[i];
        }
    }
    let c = a.norm_1() * inv.norm_1();
    if c.is_finite() {
        c
    } else {
        f64::INFINITY
    }
}
