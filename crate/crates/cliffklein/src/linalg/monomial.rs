
use super::{int, QMatrix};

/// Square matrix with exactly one ±1 entry per column: column `j` is
/// `sign[j] · e_{row[j]}`. Every Clifford generator image built by the
/// crate has this shape, and the shape is closed under products and
/// Kronecker products.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedPerm {
    row: Vec<u32>,
    sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { row: (0..n as u32).collect(), sign: vec![1; n] }
    }

    pub fn new(row: Vec<u32>, sign: Vec<i8>) -> Self {
        assert_eq!(row.len(), sign.len());
        let mut seen = vec![false; row.len()];
        for &r in &row {
            assert!(!std::mem::replace(&mut seen[r as usize], true), "not a permutation");
        }
        assert!(sign.iter().all(|&s| s == 1 || s == -1));
        SignedPerm { row, sign }
    }

    /// Reads a dense matrix, returning `None` unless it is a signed permutation.
    pub fn from_dense(m: &[Vec<i64>]) -> Option<Self> {
        let n = m.len();
        let mut row = vec![0u32; n];
        let mut sign = vec![0i8; n];
        for j in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&i| m[i][j] != 0).collect();
            if nz.len() != 1 || m[nz[0]][j].abs() != 1 {
                return None;
            }
            row[j] = nz[0] as u32;
            sign[j] = m[nz[0]][j] as i8;
        }
        let mut seen = vec![false; n];
        for &r in &row {
            if std::mem::replace(&mut seen[r as usize], true) {
                return None;
            }
        }
        Some(SignedPerm { row, sign })
    }

    pub fn size(&self) -> usize {
        self.row.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> i64 {
        if self.row[c] as usize == r {
            self.sign[c] as i64
        } else {
            0
        }
    }

    pub fn mul(&self, other: &SignedPerm) -> SignedPerm {
        assert_eq!(self.size(), other.size());
        let (row, sign) = (0..other.size())
            .map(|j| {
                let k = other.row[j] as usize;
                (self.row[k], self.sign[k] * other.sign[j])
            })
            .unzip();
        SignedPerm { row, sign }
    }

    /// Kronecker product; `self` indexes the coarse blocks.
    pub fn kron(&self, other: &SignedPerm) -> SignedPerm {
        let n = other.size() as u32;
        let mut row = Vec::with_capacity(self.size() * other.size());
        let mut sign = Vec::with_capacity(row.capacity());
        for a in 0..self.size() {
            for b in 0..other.size() {
                row.push(self.row[a] * n + other.row[b]);
                sign.push(self.sign[a] * other.sign[b]);
            }
        }
        SignedPerm { row, sign }
    }

    pub fn transpose(&self) -> SignedPerm {
        let mut row = vec![0u32; self.size()];
        let mut sign = vec![0i8; self.size()];
        for j in 0..self.size() {
            let r = self.row[j] as usize;
            row[r] = j as u32;
            sign[r] = self.sign[j];
        }
        SignedPerm { row, sign }
    }

    pub fn neg(&self) -> SignedPerm {
        SignedPerm { row: self.row.clone(), sign: self.sign.iter().map(|s| -s).collect() }
    }

    pub fn scaled(&self, s: i8) -> SignedPerm {
        if s < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn is_identity(&self) -> bool {
        self.row.iter().enumerate().all(|(j, &r)| r as usize == j) && self.sign.iter().all(|&s| s == 1)
    }

    pub fn is_neg_identity(&self) -> bool {
        self.neg().is_identity()
    }

    pub fn trace(&self) -> i64 {
        (0..self.size()).filter(|&j| self.row[j] as usize == j).map(|j| self.sign[j] as i64).sum()
    }

    /// `tr(selfᵀ · other)`, the Frobenius inner product.
    pub fn frobenius(&self, other: &SignedPerm) -> i64 {
        (0..self.size())
            .filter(|&j| self.row[j] == other.row[j])
            .map(|j| (self.sign[j] * other.sign[j]) as i64)
            .sum()
    }

    /// Conjugates by the basis relabelling `i ↦ perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> SignedPerm {
        let mut row = vec![0u32; self.size()];
        let mut sign = vec![0i8; self.size()];
        for j in 0..self.size() {
            row[perm[j]] = perm[self.row[j] as usize] as u32;
            sign[perm[j]] = self.sign[j];
        }
        SignedPerm { row, sign }
    }

    /// Whether the matrix preserves the split of the basis into `[0, h)` and `[h, 2h)`.
    pub fn is_block_diagonal(&self, h: usize) -> bool {
        (0..self.size()).all(|j| (j < h) == ((self.row[j] as usize) < h))
    }

    /// Restriction to the leading `h × h` block.
    pub fn leading_block(&self, h: usize) -> Option<SignedPerm> {
        if !self.is_block_diagonal(h) {
            return None;
        }
        Some(SignedPerm { row: self.row[..h].to_vec(), sign: self.sign[..h].to_vec() })
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        let mut m = vec![vec![0i64; n]; n];
        for j in 0..n {
            m[self.row[j] as usize][j] = self.sign[j] as i64;
        }
        m
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.size(), self.size());
        for j in 0..self.size() {
            m[(self.row[j] as usize, j)] = int(self.sign[j] as i64);
        }
        debug_assert!(!m.is_zero() || self.size() == 0);
        m
    }

    /// Whether `self + other == 0`.
    pub fn anticommutes_sum_zero(&self, other: &SignedPerm) -> bool {
        self.row == other.row && self.sign.iter().zip(&other.sign).all(|(a, b)| a + b == 0)
    }
}

/// Plain dense product, the reference for `SignedPerm::mul`.
#[cfg(test)]
fn dense_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let x = a[i][k];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * bk[j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j2() -> SignedPerm {
        SignedPerm::from_dense(&[vec![0, -1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn product_matches_dense() {
        let a = j2();
        let b = SignedPerm::from_dense(&[vec![1, 0], vec![0, -1]]).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.to_dense(), dense_mul(&a.to_dense(), &b.to_dense()));
        assert!(a.mul(&a).is_neg_identity());
    }

    #[test]
    fn kron_matches_dense() {
        let a = j2();
        let b = SignedPerm::from_dense(&[vec![0, 1], vec![1, 0]]).unwrap();
        let k = a.kron(&b).to_qmatrix();
        assert_eq!(k, a.to_qmatrix().kron(&b.to_qmatrix()));
    }

    #[test]
    fn transpose_and_trace() {
        let a = j2();
        assert_eq!(a.transpose().to_dense(), vec![vec![0, 1], vec![-1, 0]]);
        assert_eq!(a.trace(), 0);
        assert_eq!(SignedPerm::identity(3).trace(), 3);
        assert_eq!(a.frobenius(&a), 2);
    }

    #[test]
    fn rejects_non_monomial() {
        assert!(SignedPerm::from_dense(&[vec![1, 1], vec![0, 1]]).is_none());
        assert!(SignedPerm::from_dense(&[vec![2, 0], vec![0, 1]]).is_none());
    }
}
