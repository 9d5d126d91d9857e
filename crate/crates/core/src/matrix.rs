//! Matrices of polynomials: determinants and minors, computed exactly.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::poly::{PolyRing, Polynomial};

/// A dense rows x cols matrix of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Polynomial>>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Vec<Polynomial>>) -> Self {
        assert_eq!(entries.len(), rows);
        assert!(entries.iter().all(|r| r.len() == cols));
        PolyMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![vec![Polynomial::zero(); cols]; rows],
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn transpose(&self) -> PolyMatrix {
        let entries = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.entries[i][j].clone()).collect())
            .collect();
        PolyMatrix::new(self.cols, self.rows, entries)
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.entries[i][j].clone()).collect())
            .collect()
    }

    /// Determinant of a square matrix. Cofactor expansion for small sizes,
    /// Bareiss fraction-free elimination above that.
    pub fn determinant(&self, ring: &PolyRing) -> Polynomial {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        if self.rows <= 3 {
            det_cofactor(ring, &self.entries)
        } else {
            det_bareiss(ring, self.entries.clone())
        }
    }

    /// All `h x h` minors, row/column index sets in lexicographic order.
    /// Zeros and duplicates are retained.
    pub fn minors(&self, ring: &PolyRing, h: usize) -> Result<Vec<Polynomial>> {
        if h == 0 || h > self.rows.min(self.cols) {
            return Err(Error::InvalidArgument(format!(
                "minor size {h} out of range for {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut out = Vec::new();
        for rsel in (0..self.rows).combinations(h) {
            for csel in (0..self.cols).combinations(h) {
                let sub: Vec<Vec<Polynomial>> = rsel
                    .iter()
                    .map(|&i| csel.iter().map(|&j| self.entries[i][j].clone()).collect())
                    .collect();
                let m = PolyMatrix::new(h, h, sub);
                out.push(m.determinant(ring));
            }
        }
        Ok(out)
    }
}

/// Cofactor expansion along the first row.
pub fn det_cofactor(ring: &PolyRing, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<Polynomial>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| m[i][c].clone())
                    .collect()
            })
            .collect();
        let cof = m[0][j].mul(ring, &det_cofactor(ring, &sub));
        if j % 2 == 0 {
            acc = acc.add(ring, &cof);
        } else {
            acc = acc.sub(ring, &cof);
        }
    }
    acc
}

/// Bareiss single-step fraction-free elimination. Divisions are exact in the
/// polynomial ring.
pub fn det_bareiss(ring: &PolyRing, mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    let mut sign_flip = false;
    let mut prev = Polynomial::one(ring);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return Polynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[k][k].mul(ring, &m[i][j]);
                let b = m[i][k].mul(ring, &m[k][j]);
                let num = a.sub(ring, &b);
                m[i][j] = num
                    .exact_div(ring, &prev)
                    .expect("Bareiss pivot divides exactly");
            }
            m[i][k] = Polynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg(ring)
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::parse_polynomial;

    fn ring() -> PolyRing {
        PolyRing::standard(FieldSpec::Rational, &["X", "Y", "Z"])
    }

    fn p(r: &PolyRing, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn minors_of_row_vector() {
        let r = ring();
        let m = PolyMatrix::new(1, 2, vec![vec![p(&r, "2*X"), p(&r, "-3*Y^2")]]);
        let minors = m.minors(&r, 1).unwrap();
        assert_eq!(minors.len(), 2);
        assert_eq!(minors[0].render(&r), "2*X");
        assert_eq!(minors[1].render(&r), "-3*Y^2");
        assert!(m.minors(&r, 2).is_err());
    }

    #[test]
    fn minors_of_zero_matrix() {
        let r = ring();
        let m = PolyMatrix::zero(2, 3);
        let minors = m.minors(&r, 2).unwrap();
        assert_eq!(minors.len(), 3);
        assert!(minors.iter().all(|p| p.is_zero()));
    }

    #[test]
    fn bareiss_matches_cofactor_4x4() {
        let r = ring();
        let rows = vec![
            vec![p(&r, "X"), p(&r, "Y"), p(&r, "1"), p(&r, "0")],
            vec![p(&r, "Z"), p(&r, "X + Y"), p(&r, "0"), p(&r, "2")],
            vec![p(&r, "0"), p(&r, "1"), p(&r, "X*Z"), p(&r, "Y")],
            vec![p(&r, "3"), p(&r, "0"), p(&r, "Y^2"), p(&r, "X")],
        ];
        let m = PolyMatrix::new(4, 4, rows.clone());
        assert_eq!(det_bareiss(&r, rows.clone()), det_cofactor(&r, &rows));
        let _ = m.determinant(&r);
    }

    #[test]
    fn singular_matrix_zero_det() {
        let r = ring();
        let rows = vec![
            vec![p(&r, "X"), p(&r, "Y"), p(&r, "Z"), p(&r, "1")],
            vec![p(&r, "X"), p(&r, "Y"), p(&r, "Z"), p(&r, "1")],
            vec![p(&r, "1"), p(&r, "0"), p(&r, "1"), p(&r, "0")],
            vec![p(&r, "0"), p(&r, "1"), p(&r, "0"), p(&r, "1")],
        ];
        assert!(det_bareiss(&r, rows).is_zero());
    }
}
