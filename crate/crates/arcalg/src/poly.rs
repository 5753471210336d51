//! Polynomials in `q` with nonnegative integer coefficients, and matrices of them.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::weights::Weight;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct QPoly(Vec<u64>);

impl QPoly {
    pub fn new(mut coeffs: Vec<u64>) -> QPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn zero() -> QPoly {
        QPoly(Vec::new())
    }

    pub fn one() -> QPoly {
        QPoly(vec![1])
    }

    /// `q^d`.
    pub fn monomial(d: usize) -> QPoly {
        let mut c = vec![0; d + 1];
        c[d] = 1;
        QPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn coeff(&self, d: usize) -> u64 {
        self.0.get(d).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn at_one(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn add_monomial(&mut self, d: usize, c: u64) {
        if c == 0 {
            return;
        }
        if self.0.len() <= d {
            self.0.resize(d + 1, 0);
        }
        self.0[d] += c;
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        for (d, &c) in rhs.0.iter().enumerate() {
            self.add_monomial(d, c);
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![0; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(c)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (d, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "q")?,
                (1, c) => write!(f, "{c}q")?,
                (d, 1) => write!(f, "q^{d}")?,
                (d, c) => write!(f, "{c}q^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for QPoly {
    type Err = Error;

    /// Parses `0`, `1+2q^2+q^4`, `q`, `3q` and the like.
    fn from_str(s: &str) -> Result<QPoly> {
        let err = || Error::Parse {
            what: "polynomial",
            input: s.to_string(),
        };
        let mut p = QPoly::zero();
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(err());
            }
            let (c, d) = match term.find('q') {
                None => (term, 0),
                Some(at) => {
                    let exp = &term[at + 1..];
                    let d = if exp.is_empty() {
                        1
                    } else {
                        exp.strip_prefix('^').ok_or_else(err)?.parse().map_err(|_| err())?
                    };
                    (&term[..at], d)
                }
            };
            let c: u64 = if c.is_empty() { 1 } else { c.parse().map_err(|_| err())? };
            p.add_monomial(d, c);
        }
        Ok(QPoly::new(p.0))
    }
}

/// A labelled matrix of polynomials.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PolyMatrix {
    pub row_labels: Vec<Weight>,
    pub col_labels: Vec<Weight>,
    entries: Vec<Vec<QPoly>>,
}

impl PolyMatrix {
    pub fn zeros(row_labels: Vec<Weight>, col_labels: Vec<Weight>) -> PolyMatrix {
        let entries = vec![vec![QPoly::zero(); col_labels.len()]; row_labels.len()];
        PolyMatrix {
            row_labels,
            col_labels,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    /// Zero-based entry.
    pub fn get(&self, r: usize, c: usize) -> &QPoly {
        &self.entries[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: QPoly) {
        self.entries[r][c] = p;
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(self.col_labels.clone(), self.row_labels.clone());
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                t.entries[c][r] = self.entries[r][c].clone();
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols(), rhs.rows(), "dimension mismatch");
        let mut out = PolyMatrix::zeros(self.row_labels.clone(), rhs.col_labels.clone());
        for r in 0..self.rows() {
            for c in 0..rhs.cols() {
                let mut acc = QPoly::zero();
                for m in 0..self.cols() {
                    acc += &(&self.entries[r][m] * &rhs.entries[m][c]);
                }
                out.entries[r][c] = acc;
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows() == self.cols()
            && (0..self.rows()).all(|r| (0..r).all(|c| self.entries[r][c] == self.entries[c][r]))
    }

    /// Sum of all entries.
    pub fn total(&self) -> QPoly {
        let mut acc = QPoly::zero();
        for row in &self.entries {
            for p in row {
                acc += p;
            }
        }
        acc
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("");
        let header: Vec<String> = self.col_labels.iter().map(|w| w.to_string()).collect();
        out.push_str(&format!(",{}\n", header.join(",")));
        for (label, row) in self.row_labels.iter().zip(&self.entries) {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("{label},{}\n", cells.join(",")));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix serializes")
    }

    /// Aligned plain-text rendering.
    pub fn to_table(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| p.to_string()).collect())
            .collect();
        let lw = self.row_labels.iter().map(|w| w.to_string().len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.cols())
            .map(|c| {
                cells
                    .iter()
                    .map(|r| r[c].len())
                    .chain([self.col_labels[c].to_string().len()])
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        let mut out = format!("{:lw$}", "");
        for (c, w) in self.col_labels.iter().enumerate() {
            out.push_str(&format!("  {:>width$}", w.to_string(), width = widths[c]));
        }
        out.push('\n');
        for (label, row) in self.row_labels.iter().zip(&cells) {
            out.push_str(&format!("{:lw$}", label.to_string()));
            for (c, cell) in row.iter().enumerate() {
                out.push_str(&format!("  {:>width$}", cell, width = widths[c]));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        for s in ["0", "1", "q", "2q", "1+2q^2+q^4", "q+q^3", "8+20q+24q^2+12q^3+3q^4"] {
            assert_eq!(s.parse::<QPoly>().unwrap().to_string(), s);
        }
        assert!("q^".parse::<QPoly>().is_err());
        assert!("1++q".parse::<QPoly>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a: QPoly = "1+q".parse().unwrap();
        assert_eq!((&a * &a).to_string(), "1+2q+q^2");
        assert_eq!((&a + &QPoly::monomial(3)).to_string(), "1+q+q^3");
        assert!((&a * &QPoly::zero()).is_zero());
        assert_eq!(a.at_one(), 2);
    }
}
