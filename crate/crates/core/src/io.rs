//! Text formats: sparse matrix files and the roots JSON document.

use std::fmt::Write as _;

use num::{BigInt, Zero};
use serde::{Deserialize, Serialize};

use crate::eigen::RootSet;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::{parse_poly_in, Ambient, Poly, Rational};

const MAGIC: &str = "BEZOUT-SPARSE v1";

/// One matrix with its index families. Only non-zero entries are written.
///
/// ```text
/// BEZOUT-SPARSE v1 k=0 rows=2 cols=2
/// rowfam: 1;x1
/// colfam: 1;y1
/// 0 0 -3/1
/// 0 1 1/1
/// 1 0 1/1
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrixFile {
    pub k: usize,
    pub matrix: QMatrix,
    pub row_family: Vec<Poly>,
    pub col_family: Vec<Poly>,
}

fn family_line(fam: &[Poly]) -> String {
    fam.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

impl SparseMatrixFile {
    /// The `i j num/den` lines, sorted by `(i, j)`.
    pub fn triplets(&self) -> String {
        let mut out = String::new();
        for i in 0..self.matrix.rows() {
            for (j, v) in self.matrix.row(i).iter().enumerate() {
                if !v.is_zero() {
                    let _ = writeln!(out, "{i} {j} {}/{}", v.numer(), v.denom());
                }
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        format!(
            "{MAGIC} k={} rows={} cols={}\nrowfam: {}\ncolfam: {}\n{}",
            self.k,
            self.matrix.rows(),
            self.matrix.cols(),
            family_line(&self.row_family),
            family_line(&self.col_family),
            self.triplets()
        )
    }

    /// Parses a file; families are read over the given variable sets.
    pub fn parse(text: &str, row_ambient: Ambient, col_ambient: Ambient) -> Result<Self> {
        let bad = |line: usize, msg: &str| Error::MatrixFile { line, msg: msg.to_string() };
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad(1, "empty file"))?;
        let rest = header.strip_prefix(MAGIC).ok_or_else(|| bad(1, "missing BEZOUT-SPARSE v1 header"))?;
        let mut k = None;
        let mut rows = None;
        let mut cols = None;
        for field in rest.split_whitespace() {
            let (key, value) = field.split_once('=').ok_or_else(|| bad(1, "expected key=value"))?;
            let value: usize = value.parse().map_err(|_| bad(1, "header value is not a number"))?;
            match key {
                "k" => k = Some(value),
                "rows" => rows = Some(value),
                "cols" => cols = Some(value),
                _ => return Err(bad(1, "unknown header field")),
            }
        }
        let (Some(k), Some(rows), Some(cols)) = (k, rows, cols) else {
            return Err(bad(1, "header needs k, rows and cols"));
        };

        let mut family = |line: usize, tag: &str, ambient: Ambient, expected: usize| -> Result<Vec<Poly>> {
            let text = lines.next().ok_or_else(|| bad(line, "missing family line"))?;
            let body = text.strip_prefix(tag).ok_or_else(|| bad(line, &format!("expected `{tag}`")))?;
            let fam = body
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| parse_poly_in(s, ambient).map_err(|e| bad(line, &e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            if fam.len() != expected {
                return Err(bad(line, "family length does not match the header"));
            }
            Ok(fam)
        };
        let row_family = family(2, "rowfam:", row_ambient, rows)?;
        let col_family = family(3, "colfam:", col_ambient, cols)?;

        let mut matrix = QMatrix::zeros(rows, cols);
        let mut last: Option<(usize, usize)> = None;
        for (offset, line) in lines.enumerate() {
            let lineno = offset + 4;
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [i, j, v] = parts[..] else {
                return Err(bad(lineno, "expected `i j num/den`"));
            };
            let i: usize = i.parse().map_err(|_| bad(lineno, "bad row index"))?;
            let j: usize = j.parse().map_err(|_| bad(lineno, "bad column index"))?;
            if i >= rows || j >= cols {
                return Err(bad(lineno, "index out of range"));
            }
            if last.is_some_and(|l| l >= (i, j)) {
                return Err(bad(lineno, "triplets must be sorted and unique"));
            }
            last = Some((i, j));
            matrix[(i, j)] = parse_rational(v).ok_or_else(|| bad(lineno, "bad rational value"))?;
        }
        Ok(SparseMatrixFile { k, matrix, row_family, col_family })
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct RootJson {
    pub coords: Vec<ComplexJson>,
    pub residual_log10: Option<f64>,
}

pub fn roots_to_json(rs: &RootSet) -> String {
    let doc: Vec<RootJson> = rs
        .roots
        .iter()
        .map(|r| RootJson {
            coords: r.coords.iter().map(|z| ComplexJson { re: z.re, im: z.im }).collect(),
            residual_log10: r.residual_log10,
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn roots_from_json(text: &str) -> std::result::Result<Vec<RootJson>, serde_json::Error> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::Root;
    use crate::poly::rat;
    use num::complex::Complex64;

    fn sample() -> SparseMatrixFile {
        let mut m = QMatrix::from_i64(&[[-3, 1, 0], [1, 0, 0]]);
        m[(1, 2)] = Rational::new(5.into(), (-7).into());
        SparseMatrixFile {
            k: 0,
            matrix: m,
            row_family: vec![parse_poly_in("1", Ambient::X(2)).unwrap(), parse_poly_in("x1 + x1*x2^2", Ambient::X(2)).unwrap()],
            col_family: ["y1", "y1*y2 - 1/2*y2", "y1^3"].iter().map(|s| parse_poly_in(s, Ambient::Y(2)).unwrap()).collect(),
        }
    }

    #[test]
    fn text_layout() {
        let text = sample().to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "BEZOUT-SPARSE v1 k=0 rows=2 cols=3");
        assert_eq!(lines[1], "rowfam: 1;x1*x2^2 + x1");
        assert_eq!(lines[3..], ["0 0 -3/1", "0 1 1/1", "1 0 1/1", "1 2 -5/7"]);
        assert_eq!(sample().triplets().len(), "0 0 -3/1\n0 1 1/1\n1 0 1/1\n1 2 -5/7\n".len());
    }

    #[test]
    fn round_trip() {
        let s = sample();
        assert_eq!(SparseMatrixFile::parse(&s.to_text(), Ambient::X(2), Ambient::Y(2)).unwrap(), s);
        let empty = SparseMatrixFile { k: 3, matrix: QMatrix::zeros(0, 0), row_family: vec![], col_family: vec![] };
        assert_eq!(SparseMatrixFile::parse(&empty.to_text(), Ambient::X(1), Ambient::Y(1)).unwrap(), empty);
    }

    #[test]
    fn malformed() {
        let base = sample().to_text();
        for (text, line) in [
            (base.replace("BEZOUT-SPARSE", "SPARSE"), 1),
            (base.replace("0 1 1/1", "0 1 1/0"), 5),
            (base.replace("1 2 -5/7", "0 0 2/1"), 7),
            (base.replace("1 2 -5/7", "1 9 2/1"), 7),
            (base.replace("rowfam: 1;", "rowfam: "), 2),
        ] {
            match SparseMatrixFile::parse(&text, Ambient::X(2), Ambient::Y(2)) {
                Err(Error::MatrixFile { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("expected a matrix file error, got {other:?}"),
            }
        }
        assert_eq!(parse_rational("4"), Some(rat(4)));
    }

    #[test]
    fn roots_json() {
        let rs = RootSet {
            roots: vec![
                Root { coords: vec![Complex64::new(1.0, -0.5)], residual_log10: Some(-13.5) },
                Root { coords: vec![Complex64::new(2.0, 0.0)], residual_log10: None },
            ],
            seed: 0,
            combination: vec![1.0],
        };
        let text = roots_to_json(&rs);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[0]["coords"][0]["im"], -0.5);
        assert!(v[1]["residual_log10"].is_null());
        assert_eq!(roots_from_json(&text).unwrap().len(), 2);
    }
}
