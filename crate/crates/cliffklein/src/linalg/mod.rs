//! Exact rational and signed-permutation matrices.

mod monomial;
pub mod modp;

pub use monomial::SignedPerm;

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `a` or `a/b`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `num/den` form, or a bare integer when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// Dense matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix with `cols` columns; an empty row list gives a 0×cols matrix.
    pub fn from_rows_with_cols(rows: Vec<Vec<Rat>>, cols: usize) -> Self {
        if rows.is_empty() {
            return Self::zeros(0, cols);
        }
        let m = Self::from_rows(rows);
        assert_eq!(m.cols, cols);
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> Vec<Rat> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| (0..self.cols).fold(Rat::zero(), |acc, c| acc + &self[(r, c)] * &v[c]))
            .collect()
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        QMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, s: &Rat) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Kronecker product; `self` indexes the coarse blocks.
    pub fn kron(&self, other: &QMatrix) -> QMatrix {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Self::zeros(self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        out[(i * r2 + k, j * c2 + l)] = a * &other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(piv, row);
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for c in col..m.cols {
                        let v = &m[(row, c)] * &f;
                        m[(r, c)] -= v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self·x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rat::zero(); self.cols];
                x[f] = Rat::one();
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = -r[(i, f)].clone();
                }
                x
            })
            .collect()
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..m.cols {
            let Some(piv) = (col..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                return Rat::zero();
            };
            if piv != col {
                m.swap_rows(piv, col);
                det = -det;
            }
            let p = m[(col, col)].clone();
            det *= &p;
            for r in col + 1..m.rows {
                if !m[(r, col)].is_zero() {
                    let f = &m[(r, col)] / &p;
                    for c in col..m.cols {
                        let v = &m[(col, c)] * &f;
                        m[(r, c)] -= v;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rat::one();
        }
        let (red, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    pub fn is_orthogonal(&self) -> bool {
        self.rows == self.cols && self.transpose().mul(self) == Self::identity(self.rows)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(fmt_rat).collect()).collect()
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(fmt_rat).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Dimension of the span of a list of vectors of length `dim`.
pub fn span_dim(vectors: &[Vec<Rat>], dim: usize) -> usize {
    QMatrix::from_rows_with_cols(vectors.to_vec(), dim).rank()
}

/// Dimension of `span(a) ∩ span(b)`.
pub fn intersection_dim(a: &[Vec<Rat>], b: &[Vec<Rat>], dim: usize) -> usize {
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    span_dim(a, dim) + span_dim(b, dim) - span_dim(&all, dim)
}

/// Whether `span(inner) ⊆ span(outer)`.
pub fn span_contains(outer: &[Vec<Rat>], inner: &[Vec<Rat>], dim: usize) -> bool {
    let mut all = outer.to_vec();
    all.extend_from_slice(inner);
    span_dim(&all, dim) == span_dim(outer, dim)
}

/// A basis (rows in reduced echelon form) of the span; canonical for the subspace.
pub fn canonical_basis(vectors: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    let (r, piv) = QMatrix::from_rows_with_cols(vectors.to_vec(), dim).rref();
    (0..piv.len()).map(|i| r.row(i)).collect()
}

/// Orthogonal projection of `v` onto the span of `basis` (which need not be orthogonal).
pub fn project(v: &[Rat], basis: &[Vec<Rat>]) -> Vec<Rat> {
    if basis.is_empty() {
        return vec![Rat::zero(); v.len()];
    }
    let k = basis.len();
    let gram = QMatrix::from_rows(
        (0..k).map(|i| (0..k).map(|j| dot(&basis[i], &basis[j])).collect()).collect(),
    );
    let rhs: Vec<Rat> = basis.iter().map(|b| dot(b, v)).collect();
    let coeffs = gram.inverse().expect("basis must be independent").mul_vec(&rhs);
    let mut out = vec![Rat::zero(); v.len()];
    for (c, b) in coeffs.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

pub fn is_integer_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn abs_rat(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let m = QMatrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn det_and_inverse() {
        let m = QMatrix::from_i64(&[vec![2, 1], vec![7, 4]]);
        assert_eq!(m.det(), int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(2));
        assert!(QMatrix::from_i64(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = QMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        let b = QMatrix::from_i64(&[vec![1, 0], vec![0, -1]]);
        let k = a.kron(&b);
        assert_eq!(k[(0, 2)], int(1));
        assert_eq!(k[(1, 3)], int(-1));
        assert_eq!(k[(0, 0)], int(0));
    }

    #[test]
    fn subspace_ops() {
        let x = vec![vec![int(1), int(0), int(0)]];
        let xy = vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]];
        let z = vec![vec![int(0), int(0), int(1)]];
        assert_eq!(intersection_dim(&x, &xy, 3), 1);
        assert_eq!(intersection_dim(&z, &xy, 3), 0);
        assert!(span_contains(&xy, &x, 3));
        assert!(!span_contains(&x, &xy, 3));
    }

    #[test]
    fn rational_round_trip() {
        for s in ["3/2", "-1", "0", "-7/3"] {
            assert_eq!(fmt_rat(&parse_rat(s).unwrap()), s);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn projection_onto_line() {
        let p = project(&[int(1), int(1)], &[vec![int(1), int(0)]]);
        assert_eq!(p, vec![int(1), int(0)]);
    }
}
