//! Scalars: Laurent polynomials in `t` over arbitrary-precision integers, and
//! their images in the truncated ring `Z[s]/(s^N)` under `t = 1 + s`.
//!
//! `LaurentPoly` is stored densely from its lowest to its highest nonzero
//! term. Both ends are trimmed eagerly, so structural equality is equality
//! in `Z[t, t^-1]`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::depth::Depth;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    /// Exponent of `coeffs[0]`; zero for the zero polynomial.
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    fn normalized(mut low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::default();
        }
        if lead > 0 {
            coeffs.drain(..lead);
            low += lead as i64;
        }
        Self { low, coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::normalized(0, vec![c.into()])
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        Self::normalized(exp, vec![c.into()])
    }

    /// `t^exp`.
    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    pub fn t() -> Self {
        Self::t_pow(1)
    }

    /// `s = t - 1`.
    pub fn s() -> Self {
        Self::from_coeffs(0, [-1, 1])
    }

    /// Builds `sum c_i t^(low + i)`.
    pub fn from_coeffs<C: Into<BigInt>>(low: i64, coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::normalized(low, coeffs.into_iter().map(Into::into).collect())
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        let Some(low) = terms.iter().map(|t| t.0).min() else {
            return Self::default();
        };
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::normalized(low, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high_degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// If this is a unit `±t^a` of the Laurent ring, returns `(±1, a)`.
    pub fn as_unit(&self) -> Option<(i32, i64)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let c = &self.coeffs[0];
        if c.is_one() {
            Some((1, self.low))
        } else if (-c).is_one() {
            Some((-1, self.low))
        } else {
            None
        }
    }

    /// The bar involution `t -> t^-1`.
    pub fn bar(&self) -> Self {
        match self.high_degree() {
            None => Self::default(),
            Some(high) => Self {
                low: -high,
                coeffs: self.coeffs.iter().rev().cloned().collect(),
            },
        }
    }

    /// Multiplication by `t^exp`.
    pub fn shift(&self, exp: i64) -> Self {
        if self.is_zero() {
            return Self::default();
        }
        Self { low: self.low + exp, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::default();
        }
        Self { low: self.low, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Value at `t = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Largest `k` with `s^k` dividing this polynomial; infinite only for 0.
    ///
    /// Computed by exact repeated division by `t - 1`, so there is no
    /// precision cap.
    pub fn s_valuation(&self) -> Depth {
        if self.is_zero() {
            return Depth::Infinite;
        }
        let mut q = self.coeffs.clone();
        let mut k = 0;
        loop {
            match divide_by_t_minus_one(&q) {
                Some(next) => {
                    q = next;
                    k += 1;
                }
                None => return Depth::Finite(k),
            }
        }
    }

    /// Exact quotient in `Z[t, t^-1]`, or `None` when `divisor` does not
    /// divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::default());
        }
        let a = &self.coeffs;
        let b = &divisor.coeffs;
        if a.len() < b.len() {
            return None;
        }
        // Both start with a nonzero constant term after factoring out powers
        // of t, so division proceeds from the low end.
        let qlen = a.len() - b.len() + 1;
        let mut rem: Vec<BigInt> = a.clone();
        let mut q = Vec::with_capacity(qlen);
        for i in 0..qlen {
            let (qi, r) = rem[i].div_rem(&b[0]);
            if !r.is_zero() {
                return None;
            }
            if !qi.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    rem[i + j] -= &qi * bj;
                }
            }
            q.push(qi);
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::normalized(self.low - divisor.low, q))
    }

    /// Image in `Z[s]/(s^precision)` under `t = 1 + s`; negative powers of
    /// `t` expand as alternating geometric series.
    pub fn to_series(&self, precision: usize) -> TruncSeries {
        assert!(precision >= 1, "precision must be positive");
        if self.is_zero() {
            return TruncSeries::zero(precision);
        }
        // Horner in (1 + s) for the polynomial part.
        let mut acc = vec![BigInt::zero(); precision];
        for c in self.coeffs.iter().rev() {
            for j in (1..precision).rev() {
                let prev = acc[j - 1].clone();
                acc[j] += prev;
            }
            acc[0] += c;
        }
        let poly = TruncSeries { coeffs: acc };
        if self.low == 0 {
            poly
        } else {
            &poly * &TruncSeries::t_power(self.low, precision)
        }
    }
}

/// Divides ascending coefficients by `(t - 1)` if the remainder vanishes.
fn divide_by_t_minus_one(q: &[BigInt]) -> Option<Vec<BigInt>> {
    if q.len() < 2 {
        return None;
    }
    let d = q.len() - 1;
    let mut r = vec![BigInt::zero(); d];
    r[d - 1] = q[d].clone();
    for i in (1..d).rev() {
        r[i - 1] = &q[i] + &r[i];
    }
    if (&q[0] + &r[0]).is_zero() {
        Some(r)
    } else {
        None
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

fn add_sub(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let low = a.low.min(b.low);
    let high = a.high_degree().unwrap().max(b.high_degree().unwrap());
    let mut out = vec![BigInt::zero(); (high - low + 1) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        out[(a.low - low) as usize + i] += c;
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        let slot = &mut out[(b.low - low) as usize + i];
        if negate_b {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    LaurentPoly::normalized(low, out)
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_sub(self, rhs, false)
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_sub(self, rhs, true)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::normalized(self.low + rhs.low, out)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(LaurentPoly, Add::add, Sub::sub, Mul::mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{mag}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// An element of `Z[s]/(s^N)`, stored as its `N` coefficients.
///
/// Binary operations on series of different precision truncate to the
/// smaller one, which is the image in the common quotient.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TruncSeries {
    coeffs: Vec<BigInt>,
}

impl TruncSeries {
    pub fn from_coeffs<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        assert!(!coeffs.is_empty(), "precision must be positive");
        Self { coeffs }
    }

    pub fn zero(precision: usize) -> Self {
        assert!(precision >= 1, "precision must be positive");
        Self { coeffs: vec![BigInt::zero(); precision] }
    }

    pub fn one(precision: usize) -> Self {
        let mut out = Self::zero(precision);
        out.coeffs[0] = BigInt::one();
        out
    }

    /// `s` itself (zero when the precision is 1).
    pub fn s(precision: usize) -> Self {
        let mut out = Self::zero(precision);
        if precision > 1 {
            out.coeffs[1] = BigInt::one();
        }
        out
    }

    /// `t^e = (1 + s)^e`, with generalized binomial coefficients for `e < 0`.
    pub fn t_power(e: i64, precision: usize) -> Self {
        let mut coeffs = Vec::with_capacity(precision);
        let mut c = BigInt::one();
        let e_big = BigInt::from(e);
        for j in 0..precision {
            coeffs.push(c.clone());
            c = c * (&e_big - BigInt::from(j)) / BigInt::from(j + 1);
        }
        Self { coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, or `AtLeast(N)` when the
    /// series vanishes at this precision.
    pub fn valuation(&self) -> Depth {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => Depth::Finite(k as u32),
            None => Depth::AtLeast(self.precision() as u32),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn truncate(&self, precision: usize) -> Self {
        assert!(precision >= 1 && precision <= self.precision());
        Self { coeffs: self.coeffs[..precision].to_vec() }
    }

    /// Multiplicative inverse, which exists iff the constant term is `±1`.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        let unit = if c0.is_one() {
            BigInt::one()
        } else if (-c0).is_one() {
            -BigInt::one()
        } else {
            return None;
        };
        let n = self.precision();
        let mut inv: Vec<BigInt> = Vec::with_capacity(n);
        inv.push(unit.clone());
        for k in 1..n {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &inv[k - j];
            }
            inv.push(-acc * &unit);
        }
        Some(Self { coeffs: inv })
    }
}

impl Add<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.precision().min(rhs.precision());
        TruncSeries { coeffs: (0..n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }
}

impl Sub<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.precision().min(rhs.precision());
        TruncSeries { coeffs: (0..n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }
}

impl Mul<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.precision().min(rhs.precision());
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        TruncSeries { coeffs: out }
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

forward_owned!(TruncSeries, Add::add, Sub::sub, Mul::mul);

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*s")?,
                _ => write!(f, "{c}*s^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(s^{})", self.precision())
    }
}
