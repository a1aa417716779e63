use num_bigint::BigInt;

use super::matrix::{IntMatrix, LaurentMatrix, Matrix};
use super::trunc::TruncMatrix;
use crate::depth::Depth;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

impl LaurentMatrix {
    /// `(A*)_ij = bar(A_ji)`.
    pub fn star(&self) -> Self {
        Matrix::from_fn(self.cols(), self.rows(), |i, j| self[(j, i)].bar())
    }

    /// Reduction at `t = 1`.
    pub fn eval_at_one(&self) -> IntMatrix {
        self.map(LaurentPoly::eval_at_one)
    }

    /// The first `precision` coefficients `(A)_(0), (A)_(1), ...` of the
    /// s-adic expansion.
    pub fn s_expand(&self, precision: usize) -> Vec<IntMatrix> {
        self.to_trunc(precision).into_coefficients()
    }

    pub fn to_trunc(&self, precision: usize) -> TruncMatrix {
        let series: Vec<_> = self.entries().iter().map(|p| p.to_series(precision)).collect();
        let coeffs = (0..precision)
            .map(|k| {
                Matrix::from_vec(
                    self.rows(),
                    self.cols(),
                    series.iter().map(|s| s.coeff(k).clone()).collect(),
                )
                .expect("shape preserved")
            })
            .collect();
        TruncMatrix::from_coefficients(coeffs).expect("consistent shapes")
    }

    /// Largest `k` with `A - I` divisible by `s^k`; infinite iff `A = I`.
    pub fn depth(&self) -> Depth {
        let mut depth = Depth::Infinite;
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let e = &self[(i, j)];
                let v = if i == j { (e - &LaurentPoly::constant(1)).s_valuation() } else { e.s_valuation() };
                if v.lower_bound() < depth.lower_bound() {
                    depth = v;
                }
            }
        }
        depth
    }

    /// Determinant by fraction-free (Bareiss) elimination; every division
    /// is exact in `Z[t, t^-1]`.
    pub fn det(&self) -> LaurentPoly {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows();
        if n == 0 {
            return LaurentPoly::constant(1);
        }
        let mut m = self.to_rows();
        let mut sign = 1;
        let mut prev = LaurentPoly::constant(1);
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return LaurentPoly::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let n = self.rows();
        Matrix::from_fn(n - 1, n - 1, |i, j| {
            let r = if i < skip_row { i } else { i + 1 };
            let c = if j < skip_col { j } else { j + 1 };
            self[(r, c)].clone()
        })
    }

    /// Exact inverse via the adjugate; the determinant must be `±t^a`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                left: format!("{}x{}", self.rows(), self.cols()),
                right: "square".into(),
            });
        }
        let det = self.det();
        let Some((sign, exp)) = det.as_unit() else {
            return Err(Error::NonUnitDeterminant(det.to_string()));
        };
        let n = self.rows();
        let unit_inv = LaurentPoly::monomial(sign, -exp);
        if n == 1 {
            return Ok(Matrix::from_fn(1, 1, |_, _| unit_inv.clone()));
        }
        Ok(Matrix::from_fn(n, n, |i, j| {
            // adj(A)_ij = (-1)^(i+j) det(minor_ji)
            let cof = self.minor(j, i).det();
            let cof = if (i + j) % 2 == 1 { -cof } else { cof };
            &cof * &unit_inv
        }))
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.map(|p| p.scale(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(low, c.iter().copied())
    }

    fn sigma() -> LaurentMatrix {
        Matrix::from_rows(vec![vec![lp(0, &[1, -1]), lp(0, &[1])], vec![lp(1, &[1]), LaurentPoly::zero()]]).unwrap()
    }

    #[test]
    fn inverse_of_generator_block() {
        let inv = sigma().inverse().unwrap();
        let expected =
            Matrix::from_rows(vec![vec![LaurentPoly::zero(), lp(-1, &[1])], vec![lp(0, &[1]), lp(-1, &[-1, 1])]])
                .unwrap();
        assert_eq!(inv, expected);
        assert!((&sigma() * &inv).is_identity());
        assert_eq!(LaurentMatrix::identity(3).inverse().unwrap(), LaurentMatrix::identity(3));
    }

    #[test]
    fn non_unit_determinant() {
        let two = LaurentMatrix::identity(3).scale(&LaurentPoly::constant(2));
        assert!(matches!(two.inverse(), Err(Error::NonUnitDeterminant(_))));
    }

    #[test]
    fn determinant_of_generator() {
        assert_eq!(sigma().det(), lp(1, &[-1]));
    }

    #[test]
    fn depth_of_identity_and_shift() {
        assert_eq!(LaurentMatrix::identity(2).depth(), Depth::Infinite);
        let mut m = LaurentMatrix::identity(2);
        m[(0, 1)] = &(&LaurentPoly::s() * &LaurentPoly::s()) * &LaurentPoly::t_pow(-3);
        assert_eq!(m.depth(), Depth::Finite(2));
    }

    #[test]
    fn expand_vector() {
        // v = (t, t^2, t^3)^T
        let v = Matrix::from_fn(3, 1, |i, _| LaurentPoly::t_pow(i as i64 + 1));
        let e = v.s_expand(2);
        assert_eq!(e[0], IntMatrix::from_i64_rows(&[[1], [1], [1]]));
        assert_eq!(e[1], IntMatrix::from_i64_rows(&[[1], [2], [3]]));
    }
}
