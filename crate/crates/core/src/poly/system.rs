use std::fmt;

use super::{parse_poly, Ambient, Poly};
use crate::error::{Error, Result};

/// A square system: `n` polynomials in the variables `x1..xn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    polys: Vec<Poly>,
}

impl PolySystem {
    pub fn new(polys: Vec<Poly>) -> Result<Self> {
        let n = polys.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        for p in &polys {
            if p.ambient() != Ambient::X(n) {
                return Err(Error::NonSquare { equations: n, variables: p.nvars() });
            }
        }
        Ok(PolySystem { polys })
    }

    pub fn n(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn ambient(&self) -> Ambient {
        Ambient::X(self.n())
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.polys {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

/// `d[j]` is the largest partial degree in `x_{j+1}` over all polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multidegree(pub Vec<u32>);

impl Multidegree {
    pub fn n(&self) -> usize {
        self.0.len()
    }
}

pub fn multidegree(f: &PolySystem) -> Multidegree {
    Multidegree(
        (0..f.n())
            .map(|j| f.polys.iter().map(|p| p.degree_in(j)).max().unwrap_or(0))
            .collect(),
    )
}

/// `J[i][j] = d f_i / d x_j`.
pub fn jacobian(f: &PolySystem) -> Vec<Vec<Poly>> {
    f.polys
        .iter()
        .map(|p| (0..f.n()).map(|j| p.derivative(j)).collect())
        .collect()
}

/// Parses one polynomial per non-empty, non-comment line. The variables are
/// `x1..xn` with `n` the largest index that occurs; the line count must
/// equal `n`.
pub fn parse_system(text: &str) -> Result<PolySystem> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if lines.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = lines.iter().map(|l| max_var_index(l)).max().unwrap_or(0);
    if n != lines.len() {
        return Err(Error::NonSquare { equations: lines.len(), variables: n });
    }
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let polys = lines
        .iter()
        .map(|l| parse_poly(l, &refs))
        .collect::<Result<Vec<_>>>()?;
    PolySystem::new(polys)
}

/// Largest `K` among identifiers of the form `xK`; other identifiers are
/// left for the parser to reject.
fn max_var_index(line: &str) -> usize {
    let bytes = line.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let ident = &line[start..i];
            if let Some(k) = ident.strip_prefix('x').and_then(|s| s.parse::<usize>().ok()) {
                best = best.max(k);
            }
        } else {
            i += 1;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_2_1() -> PolySystem {
        parse_system("x1^2+x1*x2^2-1\nx1^2*x2+x1\n").unwrap()
    }

    #[test]
    fn parse_examples() {
        let f = example_2_1();
        assert_eq!(f.n(), 2);
        let g = parse_system("# univariate\n x1^2-3*x1+2 \n\n").unwrap();
        assert_eq!(g.n(), 1);
        assert!(matches!(
            parse_system("x1+x2\nx1-x2\nx1*x2"),
            Err(Error::NonSquare { equations: 3, variables: 2 })
        ));
        assert!(matches!(parse_system("# nothing\n\n"), Err(Error::EmptyInput)));
        assert!(matches!(parse_system("x1 +* 2"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_system("x1 + z"), Err(Error::UnknownVariable { .. })));
    }

    #[test]
    fn multidegree_examples() {
        assert_eq!(multidegree(&example_2_1()), Multidegree(vec![2, 2]));
        assert_eq!(multidegree(&parse_system("x1^2-3*x1+2").unwrap()), Multidegree(vec![2]));
        assert_eq!(multidegree(&parse_system("x1*x2\nx1+x2").unwrap()), Multidegree(vec![1, 1]));
    }

    #[test]
    fn jacobian_examples() {
        let j = jacobian(&parse_system("x1^2-3*x1+2").unwrap());
        assert_eq!(j[0][0], parse_poly("2*x1-3", &["x1"]).unwrap());

        let j = jacobian(&example_2_1());
        let xs = ["x1", "x2"];
        let p = |s| parse_poly(s, &xs).unwrap();
        assert_eq!(j[0][0], p("2*x1 + x2^2"));
        assert_eq!(j[0][1], p("2*x1*x2"));
        assert_eq!(j[1][0], p("2*x1*x2 + 1"));
        assert_eq!(j[1][1], p("x1^2"));

        let j = jacobian(&parse_system("3\nx1+x2").unwrap());
        assert!(j[0].iter().all(Poly::is_zero));
    }
}
