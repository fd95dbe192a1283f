use std::cmp::Ordering;
use std::fmt;

/// Which variable set a polynomial lives over.
///
/// `X(n)` and `Y(n)` have `n` variables each. `XY(n)` is the joint set of
/// `2n` variables, laid out as `x1..xn` followed by `y1..yn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    X(usize),
    Y(usize),
    XY(usize),
}

impl Ambient {
    /// Number of variables of the system this set belongs to.
    pub fn n(self) -> usize {
        match self {
            Ambient::X(n) | Ambient::Y(n) | Ambient::XY(n) => n,
        }
    }

    /// Number of exponent slots of a monomial over this set.
    pub fn nvars(self) -> usize {
        match self {
            Ambient::X(n) | Ambient::Y(n) => n,
            Ambient::XY(n) => 2 * n,
        }
    }

    pub fn var_name(self, i: usize) -> String {
        match self {
            Ambient::X(_) => format!("x{}", i + 1),
            Ambient::Y(_) => format!("y{}", i + 1),
            Ambient::XY(n) if i < n => format!("x{}", i + 1),
            Ambient::XY(n) => format!("y{}", i - n + 1),
        }
    }

    pub fn var_names(self) -> Vec<String> {
        (0..self.nvars()).map(|i| self.var_name(i)).collect()
    }
}

/// Exponent vector `x^a = x1^a1 ... xn^an`.
///
/// `Ord` is graded lexicographic with `x1 > x2 > ...`: higher total degree
/// first, ties broken by comparing exponents from the first variable on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The monomial consisting of the single variable `var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// Plain lexicographic comparison of exponent vectors (`x1 > x2 > ...`).
    /// This is the order used for index families of Bezout matrices.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }

    /// Writes the monomial as a product like `x1^2*x3`, or `1`.
    pub fn fmt_with(&self, ambient: Ambient, f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            f.write_str(&ambient.var_name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let m = |v: &[u32]| Monomial::new(v.to_vec());
        assert!(m(&[0, 2]) > m(&[1, 0]));
        assert!(m(&[1, 1]) < m(&[2, 0]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        assert_eq!(m(&[0, 2]).lex_cmp(&m(&[1, 0])), Ordering::Less);
    }

    #[test]
    fn division() {
        let a = Monomial::new(vec![2, 1]);
        let b = Monomial::new(vec![1, 1]);
        assert_eq!(a.div(&b), Some(Monomial::new(vec![1, 0])));
        assert_eq!(b.div(&a), None);
    }

    #[test]
    fn joint_names() {
        let amb = Ambient::XY(2);
        assert_eq!(amb.var_names(), vec!["x1", "x2", "y1", "y2"]);
        let mut s = String::new();
        Monomial::new(vec![0, 1, 3, 0]).fmt_with(amb, &mut s).unwrap();
        assert_eq!(s, "x2*y1^3");
    }
}
