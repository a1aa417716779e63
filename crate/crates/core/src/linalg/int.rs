use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::hnf::Hnf;
use super::matrix::{IntMatrix, LaurentMatrix};
use crate::braid::Perm;
use crate::laurent::LaurentPoly;

impl IntMatrix {
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i].as_ref()[j]))
    }

    /// The matrix unit `E_ab` (zero-based indices).
    pub fn unit(n: usize, a: usize, b: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(a, b)] = BigInt::one();
        m
    }

    /// The all-ones matrix.
    pub fn all_ones(n: usize) -> Self {
        Self::from_fn(n, n, |_, _| BigInt::one())
    }

    /// Permutation matrix with a 1 in row `i`, column `π(i)`.
    ///
    /// With this convention `permutation(p.then(q)) = permutation(p) * permutation(q)`.
    pub fn permutation(perm: &Perm) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, perm.image0(i))] = BigInt::one();
        }
        m
    }

    /// Reads a 0/1 permutation matrix back as a permutation.
    pub fn as_permutation(&self) -> Option<Perm> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows();
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let mut hit = None;
            for j in 0..n {
                let e = &self[(i, j)];
                if e.is_one() {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some(j + 1);
                } else if !e.is_zero() {
                    return None;
                }
            }
            images.push(hit?);
        }
        Perm::new(images).ok()
    }

    /// Row-major vectorization into `Z^(rows*cols)`.
    pub fn vectorize(&self) -> Vec<BigInt> {
        self.entries().to_vec()
    }

    pub fn from_vector(n: usize, v: Vec<BigInt>) -> Self {
        Self::from_vec(n, n, v).expect("vector length is n^2")
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_skew(&self) -> bool {
        self.is_square() && *self == -&self.transpose()
    }

    /// `M * 1` as a vector.
    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.rows()).map(|i| self.row(i).iter().sum()).collect()
    }

    /// `1 * M` as a vector.
    pub fn col_sums(&self) -> Vec<BigInt> {
        (0..self.cols()).map(|j| (0..self.rows()).map(|i| &self[(i, j)]).sum()).collect()
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows();
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Inverse over `Z`, when the matrix is unimodular.
    pub fn inverse_unimodular(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows();
        let rows: Vec<Vec<BigInt>> = self.to_rows();
        let h = Hnf::new(&rows, n);
        if h.basis() != IntMatrix::identity(n).to_rows().as_slice() {
            return None;
        }
        // U * A = I
        Some(IntMatrix::from_rows(h.transform()[..n].to_vec()).expect("square transform"))
    }

    pub fn to_laurent(&self) -> LaurentMatrix {
        self.map(|c| LaurentPoly::constant(c.clone()))
    }
}
