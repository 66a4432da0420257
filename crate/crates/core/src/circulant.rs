//! NHT matrices: compact circulant representation plus a dense Gram oracle.

use crate::conditions::CoeffVector;
use crate::error::{Error, Result};
use crate::residue::{dot_mod, Modulus};

/// Default cap on `n` for dense materialization.
pub const DEFAULT_DENSE_BOUND: usize = 64;

/// `0, u0, 0, u1, ..., 0, u(h-1)`.
pub fn build_first_row(u: &[u64]) -> Vec<u64> {
    u.iter().flat_map(|&c| [0, c]).collect()
}

/// An `n x n` circulant over Z_m, stored as its coefficient vector.
///
/// Row `j` is row 0 shifted right by `j`, so entry `(j, k)` is
/// `row0[(k - j) mod n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NhtMatrix {
    m: Modulus,
    coeffs: CoeffVector,
}

impl NhtMatrix {
    pub fn new(n: usize, m: Modulus, coeffs: CoeffVector) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidBlockSize(n));
        }
        if coeffs.h() != n / 2 {
            return Err(Error::LengthMismatch {
                expected: n / 2,
                actual: coeffs.h(),
            });
        }
        m.check_reduced(&coeffs)?;
        Ok(Self { m, coeffs })
    }

    /// Builds from raw coefficients; `n` is implied by their count.
    pub fn from_coeffs(m: Modulus, coeffs: &[u64]) -> Result<Self> {
        let coeffs = CoeffVector::with_modulus(coeffs.to_vec(), m)?;
        Self::new(coeffs.block_size(), m, coeffs)
    }

    pub fn n(&self) -> usize {
        self.coeffs.block_size()
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    pub fn coeffs(&self) -> &CoeffVector {
        &self.coeffs
    }

    pub fn first_row(&self) -> Vec<u64> {
        build_first_row(&self.coeffs)
    }

    #[inline]
    pub fn entry(&self, j: usize, k: usize) -> u64 {
        let n = self.n();
        let offset = (k + n - j % n) % n;
        if offset % 2 == 1 {
            self.coeffs[offset / 2]
        } else {
            0
        }
    }

    pub fn row_of(&self, j: usize) -> Result<Vec<u64>> {
        let n = self.n();
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
        let mut row = self.first_row();
        row.rotate_right(j);
        Ok(row)
    }

    /// Column `j` of `N`, i.e. row `j` of `N^T`.
    pub fn column_of(&self, j: usize) -> Result<Vec<u64>> {
        let n = self.n();
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
        Ok((0..n).map(|k| self.entry(k, j)).collect())
    }

    pub fn dense(&self) -> DenseMatrix {
        let n = self.n();
        let mut data = Vec::with_capacity(n * n);
        for j in 0..n {
            data.extend(self.row_of(j).expect("row index in range"));
        }
        DenseMatrix { n, data }
    }

    /// `N N^T mod m` by explicit dense multiplication, bounded by
    /// [`DEFAULT_DENSE_BOUND`].
    pub fn gram(&self) -> Result<DenseMatrix> {
        self.gram_bounded(DEFAULT_DENSE_BOUND)
    }

    pub fn gram_bounded(&self, bound: usize) -> Result<DenseMatrix> {
        let n = self.n();
        if n > bound {
            return Err(Error::DenseBoundExceeded { n, bound });
        }
        let dense = self.dense();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                // (N N^T)[i][j] = row_i . row_j
                data.push(dot_mod(dense.row(i), dense.row(j), self.m)?);
            }
        }
        Ok(DenseMatrix { n, data })
    }
}

/// Row-major square matrix of residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<u64>,
}

impl DenseMatrix {
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zeros(n);
        for i in 0..n {
            out.data[i * n + i] = 1;
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// Diagonal all `1 mod m` and everything else `0`.
pub fn is_identity(mtx: &DenseMatrix, m: Modulus) -> bool {
    let one = 1 % m.get();
    (0..mtx.n).all(|i| (0..mtx.n).all(|j| mtx.get(i, j) == if i == j { one } else { 0 }))
}
