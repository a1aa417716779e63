use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::IntMatrix;
use crate::depth::Depth;
use crate::error::{Error, Result};
use crate::laurent::TruncSeries;

/// A matrix over `Z[s]/(s^N)`, stored coefficient-major: `coeffs[k]` is the
/// integer matrix multiplying `s^k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncMatrix {
    rows: usize,
    cols: usize,
    coeffs: Vec<IntMatrix>,
}

impl TruncMatrix {
    pub fn from_coefficients(coeffs: Vec<IntMatrix>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::Invalid("precision must be positive".into()));
        };
        let (rows, cols) = (first.rows(), first.cols());
        if let Some(bad) = coeffs.iter().find(|c| c.rows() != rows || c.cols() != cols) {
            return Err(Error::DimensionMismatch {
                left: format!("{rows}x{cols}"),
                right: format!("{}x{}", bad.rows(), bad.cols()),
            });
        }
        Ok(Self { rows, cols, coeffs })
    }

    /// A constant integer matrix viewed at precision `precision`.
    pub fn from_int(m: &IntMatrix, precision: usize) -> Self {
        assert!(precision >= 1, "precision must be positive");
        let mut coeffs = vec![IntMatrix::zeros(m.rows(), m.cols()); precision];
        coeffs[0] = m.clone();
        Self { rows: m.rows(), cols: m.cols(), coeffs }
    }

    pub fn identity(n: usize, precision: usize) -> Self {
        Self::from_int(&IntMatrix::identity(n), precision)
    }

    pub fn zeros(rows: usize, cols: usize, precision: usize) -> Self {
        assert!(precision >= 1, "precision must be positive");
        Self { rows, cols, coeffs: vec![IntMatrix::zeros(rows, cols); precision] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn n(&self) -> usize {
        self.rows
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// `(A)_(k)`; zero for `k` at or past the precision is not representable,
    /// so this panics there.
    pub fn coefficient(&self, k: usize) -> &IntMatrix {
        &self.coeffs[k]
    }

    pub fn coefficients(&self) -> &[IntMatrix] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<IntMatrix> {
        self.coeffs
    }

    pub fn entry(&self, i: usize, j: usize) -> TruncSeries {
        TruncSeries::from_coeffs(self.coeffs.iter().map(|c| c[(i, j)].clone()))
    }

    pub fn truncate(&self, precision: usize) -> Self {
        assert!(precision >= 1 && precision <= self.precision());
        Self { rows: self.rows, cols: self.cols, coeffs: self.coeffs[..precision].to_vec() }
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs[0].is_identity() && self.coeffs[1..].iter().all(IntMatrix::is_zero)
    }

    /// Reduction modulo `s`.
    pub fn constant_term(&self) -> &IntMatrix {
        &self.coeffs[0]
    }

    /// `Finite(k)` for the first nonzero coefficient of `A - I`, or
    /// `AtLeast(N)` when `A` is the identity at this precision.
    pub fn depth(&self) -> Depth {
        if !self.coeffs[0].is_identity() {
            return Depth::Finite(0);
        }
        match self.coeffs[1..].iter().position(|c| !c.is_zero()) {
            Some(k) => Depth::Finite(k as u32 + 1),
            None => Depth::AtLeast(self.precision() as u32),
        }
    }

    fn check_shape(&self, other: &Self, product: bool) -> Result<()> {
        let ok = if product {
            self.cols == other.rows
        } else {
            self.rows == other.rows && self.cols == other.cols
        };
        if !ok || self.precision() != other.precision() {
            return Err(Error::DimensionMismatch {
                left: format!("{}x{} mod s^{}", self.rows, self.cols, self.precision()),
                right: format!("{}x{} mod s^{}", other.rows, other.cols, other.precision()),
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other, true)?;
        let n = self.precision();
        let live_a: Vec<usize> = (0..n).filter(|&i| !self.coeffs[i].is_zero()).collect();
        let live_b: Vec<bool> = other.coeffs.iter().map(|c| !c.is_zero()).collect();
        // Elements of Gamma[s] have identity constant terms; skip those
        // products.
        let id_a = self.coeffs[0].is_identity();
        let id_b = other.coeffs[0].is_identity();
        let mut out = vec![IntMatrix::zeros(self.rows, other.cols); n];
        for &i in &live_a {
            for j in 0..n - i {
                if !live_b[j] {
                    continue;
                }
                if i == 0 && id_a {
                    out[j] = &out[j] + &other.coeffs[j];
                } else if j == 0 && id_b {
                    out[i] = &out[i] + &self.coeffs[i];
                } else {
                    out[i + j].add_product_of(&self.coeffs[i], &other.coeffs[j]);
                }
            }
        }
        Ok(Self { rows: self.rows, cols: other.cols, coeffs: out })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other, false)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other, false)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, coeffs })
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        Self { rows: self.rows, cols: self.cols, coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect() }
    }

    /// Inverse modulo `s^N`; exists iff the constant term is unimodular.
    ///
    /// With `B = A^-1`: `B_0 = A_0^-1` and `B_k = -B_0 * sum_{i=1..k} A_i B_{k-i}`.
    pub fn inverse(&self) -> Result<Self> {
        let b0 = self.coeffs[0]
            .inverse_unimodular()
            .ok_or_else(|| Error::NonUnitDeterminant("constant term is not unimodular".into()))?;
        let n = self.precision();
        let mut out: Vec<IntMatrix> = Vec::with_capacity(n);
        out.push(b0.clone());
        for k in 1..n {
            let mut acc = IntMatrix::zeros(self.rows, self.cols);
            for i in 1..=k {
                if !self.coeffs[i].is_zero() && !out[k - i].is_zero() {
                    acc.add_product_of(&self.coeffs[i], &out[k - i]);
                }
            }
            out.push(-&(&b0 * &acc));
        }
        Ok(Self { rows: self.rows, cols: self.cols, coeffs: out })
    }

    /// Right multiplication by the Burau image of `sigma_{c+1}^{±1}`,
    /// done as a column operation on columns `c` and `c + 1`.
    pub(crate) fn right_mul_generator(&mut self, c: usize, inverse: bool) {
        let n = self.precision();
        let width = self.cols;
        for r in 0..self.rows {
            let x: Vec<BigInt> = self.coeffs.iter().map(|m| m[(r, c)].clone()).collect();
            let y: Vec<BigInt> = self.coeffs.iter().map(|m| m[(r, c + 1)].clone()).collect();
            let (new_x, new_y) = if !inverse {
                // x' = y + s(y - x), y' = x
                let mut nx = y.clone();
                for k in 1..n {
                    nx[k] += &y[k - 1] - &x[k - 1];
                }
                (nx, x)
            } else {
                // x' = y, y' = y + t^-1 (x - y)
                let mut ny = y.clone();
                let mut prev = BigInt::zero();
                for k in 0..n {
                    let d = &x[k] - &y[k] - &prev;
                    ny[k] += &d;
                    prev = d;
                }
                (y, ny)
            };
            for (k, m) in self.coeffs.iter_mut().enumerate() {
                let e = m.entries_mut();
                e[r * width + c] = new_x[k].clone();
                e[r * width + c + 1] = new_y[k].clone();
            }
        }
    }
}

impl std::ops::Mul for &TruncMatrix {
    type Output = TruncMatrix;
    fn mul(self, rhs: &TruncMatrix) -> TruncMatrix {
        self.try_mul(rhs).expect("truncated matrix multiplication")
    }
}

impl fmt::Display for TruncMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for TruncMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncMatrix({}x{} mod s^{}) {}", self.rows, self.cols, self.precision(), self)
    }
}
