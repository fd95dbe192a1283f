//! Reduction of a Bezout set until `B(1)` is square and invertible.
//!
//! Each kernel vector `w` of `B(1)` yields a polynomial in the ideal, read
//! off from some `B(x_k) w`. The row family is changed so that this
//! polynomial becomes one of its members; that row is then dropped.

use num::Zero;

use crate::bezout::BezoutSet;
use crate::error::{Error, Result};
use crate::linalg::{right_kernel, QMatrix};
use crate::poly::{Ambient, Poly, Rational};

/// Snapshot of the reduction process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionState {
    pub bez: BezoutSet,
    /// Polynomials in `x` found to vanish modulo the ideal, in discovery order.
    pub relations: Vec<Poly>,
    pub steps: usize,
}

impl ReductionState {
    pub fn new(bez: BezoutSet) -> Self {
        ReductionState { bez, relations: Vec::new(), steps: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedBezoutSet {
    pub bez: BezoutSet,
    /// Size of the final square `B(1)`.
    pub dim: usize,
    pub relations: Vec<Poly>,
    pub steps: usize,
}

/// First `k >= 1` with `B(x_k) w != 0`, and that vector.
pub fn derive_relation(bez: &BezoutSet, w: &[Rational]) -> Result<Option<(Vec<Rational>, usize)>> {
    check_kernel(bez, w)?;
    for (k, b) in bez.matrices.iter().enumerate().skip(1) {
        let c = b.mul_vec(w);
        if c.iter().any(|v| !v.is_zero()) {
            return Ok(Some((c, k)));
        }
    }
    Ok(None)
}

fn check_kernel(bez: &BezoutSet, w: &[Rational]) -> Result<()> {
    let b0 = &bez.matrices[0];
    if w.len() != b0.cols() {
        return Err(Error::DimensionMismatch { expected: b0.cols(), got: w.len() });
    }
    if b0.mul_vec(w).iter().any(|v| !v.is_zero()) {
        return Err(Error::InvalidArgument("vector is not in the kernel of B(1)".into()));
    }
    if w.iter().all(Zero::is_zero) {
        return Err(Error::InvalidArgument("zero kernel vector".into()));
    }
    Ok(())
}

fn drop_dead_columns(bez: &mut BezoutSet) {
    let cols = bez.col_family.len();
    for j in (0..cols).rev() {
        if bez.matrices.iter().all(|m| m.col_is_zero(j)) {
            for m in &mut bez.matrices {
                m.remove_col(j);
            }
            bez.col_family.remove(j);
        }
    }
}

fn drop_dead_rows(bez: &mut BezoutSet) {
    let rows = bez.row_family.len();
    for i in (0..rows).rev() {
        if bez.matrices.iter().all(|m| m.row_is_zero(i)) {
            for m in &mut bez.matrices {
                m.remove_row(i);
            }
            bez.row_family.remove(i);
        }
    }
}

/// One reduction step along the kernel vector `w` of `B(1)`.
pub fn reduction_step(state: &ReductionState, w: &[Rational]) -> Result<ReductionState> {
    let mut next = state.clone();
    next.steps += 1;
    let bez = &mut next.bez;
    match derive_relation(bez, w)? {
        Some((c, _)) => {
            let p = c.iter().rposition(|v| !v.is_zero()).expect("non-zero relation");
            let inv = c[p].recip();
            let c: Vec<Rational> = c.iter().map(|v| v * &inv).collect();
            let relation = bez
                .row_family
                .iter()
                .zip(&c)
                .filter(|(_, ci)| !ci.is_zero())
                .fold(Poly::zero(Ambient::X(bez.n)), |acc, (r, ci)| &acc + &r.scale(ci));
            for m in &mut bez.matrices {
                for (i, ci) in c.iter().enumerate() {
                    if i != p {
                        m.sub_row_multiple(i, p, ci);
                    }
                }
                m.remove_row(p);
            }
            bez.row_family.remove(p);
            drop_dead_columns(bez);
            next.relations.push(relation);
        }
        None => {
            let q = w.iter().rposition(|v| !v.is_zero()).expect("non-zero kernel vector");
            let inv = w[q].recip();
            let yq = bez.col_family[q].clone();
            for (i, wi) in w.iter().enumerate() {
                if i != q && !wi.is_zero() {
                    let t = yq.scale(&(wi * &inv));
                    bez.col_family[i] = &bez.col_family[i] - &t;
                }
            }
            for m in &mut bez.matrices {
                debug_assert!(m.mul_vec(w).iter().all(Zero::is_zero));
                m.remove_col(q);
            }
            bez.col_family.remove(q);
        }
    }
    Ok(next)
}

/// Swaps the roles of rows and columns: matrices are transposed and the two
/// families exchanged (re-read in the other set of variables).
fn transposed(bez: &BezoutSet) -> BezoutSet {
    let n = bez.n;
    BezoutSet {
        n,
        matrices: bez.matrices.iter().map(QMatrix::transpose).collect(),
        row_family: bez.col_family.iter().map(|p| p.clone().with_ambient(Ambient::X(n))).collect(),
        col_family: bez.row_family.iter().map(|p| p.clone().with_ambient(Ambient::Y(n))).collect(),
    }
}

fn support(w: &[Rational]) -> Vec<usize> {
    w.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, _)| i).collect()
}

/// The kernel vector with the fewest non-zeros; ties go to the
/// lexicographically smallest support.
fn pick_kernel_vector(kernel: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    kernel.into_iter().min_by(|a, b| {
        let (sa, sb) = (support(a), support(b));
        sa.len().cmp(&sb.len()).then_with(|| sa.cmp(&sb))
    })
}

pub fn reduce(bez: BezoutSet) -> ReducedBezoutSet {
    reduce_traced(bez, |_| {})
}

/// Like [`reduce`], calling `observe` after every step.
pub fn reduce_traced(bez: BezoutSet, mut observe: impl FnMut(&ReductionState)) -> ReducedBezoutSet {
    let mut state = ReductionState::new(bez);
    loop {
        drop_dead_rows(&mut state.bez);
        let b0 = &state.bez.matrices[0];
        let (rows, cols) = b0.shape();
        let kernel = right_kernel(b0);
        let step = if let Some(w) = pick_kernel_vector(kernel) {
            reduction_step(&state, &w).expect("kernel vector is valid")
        } else if rows == cols {
            break;
        } else {
            // full column rank with extra rows: work on the left kernel
            let flipped = ReductionState { bez: transposed(&state.bez), relations: state.relations.clone(), steps: state.steps };
            let w = pick_kernel_vector(right_kernel(&flipped.bez.matrices[0])).expect("rows exceed rank");
            let mut s = reduction_step(&flipped, &w).expect("kernel vector is valid");
            s.bez = transposed(&s.bez);
            s
        };
        debug_assert!(step.bez.shape().0 + step.bez.shape().1 < rows + cols);
        state = step;
        observe(&state);
    }
    debug_assert!(!crate::linalg::det(&state.bez.matrices[0]).is_zero() || state.bez.shape() == (0, 0));
    let dim = state.bez.row_family.len();
    ReducedBezoutSet { bez: state.bez, dim, relations: state.relations, steps: state.steps }
}
