//! Finite-difference matrices and their exact determinants.

use num::One;

use crate::error::{Error, Result};
use crate::poly::{Ambient, Monomial, Poly, PolySystem};

/// Largest `n` accepted by the symbolic determinant.
pub const SYMBOLIC_LIMIT: usize = 6;

/// The `n x n` matrix of finite-difference quotients of a system for the
/// monomial `x^gamma`; entries are polynomials over the joint `(x, y)` set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMatrix {
    pub gamma: Monomial,
    pub entries: Vec<Vec<Poly>>,
}

/// Entry in column `j` (0-based) of the finite-difference matrix of `f_i`:
///
/// `(y_j^g f_i(y_1..y_{j-1}, x_j..x_n) - x_j^g f_i(y_1..y_j, x_{j+1}..x_n)) / (x_j - y_j)`
///
/// with `g = gamma[j]`. The division is exact since the numerator vanishes
/// on `x_j = y_j`.
pub fn delta_entry(f_i: &Poly, j: usize, gamma: &Monomial) -> Result<Poly> {
    let n = f_i.nvars();
    if j >= n {
        return Err(Error::InvalidArgument(format!("variable index {j} out of range for n = {n}")));
    }
    if gamma.nvars() != n {
        return Err(Error::DimensionMismatch { expected: n, got: gamma.nvars() });
    }
    let joint = Ambient::XY(n);
    let g = gamma.exponents()[j];
    let before = f_i.remap(joint, |t| if t < j { n + t } else { t });
    let after = f_i.remap(joint, |t| if t <= j { n + t } else { t });
    let yj = Poly::var(joint, n + j).pow(g);
    let xj = Poly::var(joint, j).pow(g);
    let numerator = &(&yj * &before) - &(&xj * &after);
    let denominator = &Poly::var(joint, j) - &Poly::var(joint, n + j);
    numerator.div_exact(&denominator).map_err(|e| match e {
        Error::InexactDivision(msg) => Error::InexactDivision(format!("finite difference left a remainder: {msg}")),
        other => other,
    })
}

pub fn delta_matrix(f: &PolySystem, gamma: &Monomial) -> Result<DeltaMatrix> {
    let entries = f
        .polys()
        .iter()
        .map(|fi| (0..f.n()).map(|j| delta_entry(fi, j, gamma)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(DeltaMatrix { gamma: gamma.clone(), entries })
}

/// Determinant of a square polynomial matrix by fraction-free (Bareiss)
/// elimination with exact polynomial division.
pub fn poly_det(mut m: Vec<Vec<Poly>>, ambient: Ambient) -> Result<Poly> {
    let n = m.len();
    if n == 0 {
        return Ok(Poly::one(ambient));
    }
    let mut negate = false;
    let mut prev = Poly::one(ambient);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(Poly::zero(ambient)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = if prev.num_terms() == 1 && prev.leading().is_some_and(|(mm, c)| mm.is_one() && c.is_one()) {
                    v
                } else {
                    v.div_exact(&prev)?
                };
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

/// The Bezout polynomial of `x^gamma`: the exact determinant of its
/// finite-difference matrix.
pub fn bezoutian_symbolic(f: &PolySystem, gamma: &Monomial) -> Result<Poly> {
    if f.n() > SYMBOLIC_LIMIT {
        return Err(Error::SizeGuard { n: f.n(), limit: SYMBOLIC_LIMIT });
    }
    let dm = delta_matrix(f, gamma)?;
    poly_det(dm.entries, Ambient::XY(f.n()))
}

/// Bezout polynomial of an arbitrary `g`, extended from monomials by
/// linearity.
pub fn bezoutian_of(f: &PolySystem, g: &Poly) -> Result<Poly> {
    if g.ambient() != f.ambient() {
        return Err(Error::DimensionMismatch { expected: f.n(), got: g.nvars() });
    }
    let mut acc = Poly::zero(Ambient::XY(f.n()));
    for (m, c) in g.terms() {
        acc = &acc + &bezoutian_symbolic(f, m)?.scale(c);
    }
    Ok(acc)
}
