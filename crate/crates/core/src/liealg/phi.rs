use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::graded::{bracket_lattice, gen_x, gen_y, CosetElement, GradedElement};
use crate::braid::BraidWord;
use crate::burau::{eval_trunc, form_j};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, RationalMatrix, TruncMatrix};

/// One summand `X_I (x) W` of an element of `G_1 (x) G_{2k-1}`, with an
/// optional braid word `omega` whose coefficient in degree `2k-1` is `W`.
#[derive(Clone, Debug)]
pub struct KernelTerm {
    pub pair: (usize, usize),
    pub w: GradedElement,
    pub witness: Option<BraidWord>,
}

impl KernelTerm {
    pub fn new(pair: (usize, usize), w: GradedElement) -> Self {
        Self { pair, w, witness: None }
    }

    pub fn with_witness(pair: (usize, usize), w: GradedElement, witness: BraidWord) -> Self {
        Self { pair, w, witness: Some(witness) }
    }
}

/// An element `sum X_{I_i} (x) W_i` of the kernel of the bracket map
/// `G_1 (x) G_{2k-1} -> G_{2k}`.
#[derive(Clone, Debug)]
pub struct KernelElement {
    n: usize,
    degree: u32,
    terms: Vec<KernelTerm>,
}

impl KernelElement {
    /// Checks `sum <X_{I_i}, W_i> = 0`.
    pub fn new(n: usize, degree: u32, terms: Vec<KernelTerm>) -> Result<Self> {
        if degree < 3 || degree.is_multiple_of(2) {
            return Err(Error::Invalid(format!("kernel elements live in odd degree >= 3, not {degree}")));
        }
        let mut sum = IntMatrix::zeros(n, n);
        for t in &terms {
            if t.w.degree() != degree {
                return Err(Error::DegreeMismatch(t.w.degree(), degree));
            }
            if t.w.n() != n {
                return Err(Error::StrandMismatch(t.w.n(), n));
            }
            let x = gen_x(t.pair.0, t.pair.1, n)?;
            sum = &sum + x.bracket(&t.w)?.matrix();
            if let Some(w) = &t.witness {
                if w.strands() != n {
                    return Err(Error::StrandMismatch(w.strands(), n));
                }
            }
        }
        if !sum.is_zero() {
            return Err(Error::KernelViolation);
        }
        Ok(Self { n, degree, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `2k - 1`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[KernelTerm] {
        &self.terms
    }

    /// The same data read in another odd degree.
    pub fn transport(&self, degree: u32) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(KernelTerm { pair: t.pair, w: t.w.transport(degree)?, witness: None }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.n, degree, terms)
    }

    /// `prod_i [A_{I_i}, omega_i]`.
    pub fn commutator_word(&self) -> Result<BraidWord> {
        let factors = self
            .terms
            .iter()
            .map(|t| {
                let w = t.witness.as_ref().ok_or_else(|| Error::Invalid("kernel term has no witness".into()))?;
                BraidWord::pure(self.n, t.pair.0, t.pair.1)?.commutator(w)
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::product(self.n, &factors)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiMode {
    /// Only the coefficient of the commutator product.
    Direct,
    /// Also evaluate the closed formula and require exact agreement.
    Verify,
}

/// The value of `phi_{2k-1}` on a kernel element with witnesses.
#[derive(Clone, Debug)]
pub struct PhiValue {
    pub coset: CosetElement,
    /// The closed-formula value, present in verify mode (equal to the
    /// coset representative).
    pub formula: Option<GradedElement>,
}

fn to_rational(m: &IntMatrix) -> RationalMatrix {
    m.map(|x| BigRational::from_integer(x.clone()))
}

/// `phi(a) = (prod [beta(A_I), omega_i])_(2k+1)` modulo `<G_1, G_2k>`.
pub fn phi_eval(a: &KernelElement, mode: PhiMode) -> Result<PhiValue> {
    let n = a.n;
    let low = a.degree as usize;
    let target = low + 2;
    let precision = target + 1;
    let mut formula = IntMatrix::zeros(n, n);
    for (index, t) in a.terms.iter().enumerate() {
        let w = t.witness.as_ref().ok_or_else(|| Error::Invalid("kernel term has no witness".into()))?;
        let tw: TruncMatrix = eval_trunc(w, precision);
        let depth = tw.depth();
        if !depth.is_at_least(a.degree) || tw.coefficient(low) != t.w.matrix() {
            return Err(Error::DepthViolation { index, expected: a.degree, actual: depth.to_string() });
        }
        if mode == PhiMode::Verify {
            let x = gen_x(t.pair.0, t.pair.1, n)?.into_matrix();
            let a2 = eval_trunc(&BraidWord::pure(n, t.pair.0, t.pair.1)?, 3).coefficient(2).clone();
            let wm = t.w.matrix();
            let w_next = tw.coefficient(low + 1);
            formula = &formula + &x.bracket(w_next)?;
            formula = &formula + &a2.bracket(wm)?;
            formula = &formula + &(&wm.bracket(&x)? * &x);
        }
    }
    let alpha = a.commutator_word()?;
    let ta = eval_trunc(&alpha, precision);
    let depth = ta.depth();
    if !depth.is_at_least(target as u32) {
        return Err(Error::DepthTooSmall { requested: target as u32, actual: depth.to_string() });
    }
    let direct = GradedElement::new(target as u32, ta.coefficient(target).clone())?;
    let formula = match mode {
        PhiMode::Direct => None,
        PhiMode::Verify => {
            if &formula != direct.matrix() {
                return Err(Error::Invalid(format!(
                    "closed formula {formula} disagrees with the direct coefficient {}",
                    direct.matrix()
                )));
            }
            Some(direct.clone())
        }
    };
    let modulus = bracket_lattice(n, target as u32 - 1);
    Ok(PhiValue { coset: CosetElement::new(direct, modulus), formula })
}

/// The symmetric part of `(omega)_(2k)` forced by unitarity:
/// `-(1/4) (<J_1, W> + (4k - 2) W)`, with `J_1 = (J)_(1)`.
///
/// Entries are checked to lie in `(1/2) Z`.
pub fn reconstruct_plus(w: &GradedElement, k: u32) -> Result<RationalMatrix> {
    if w.degree().is_multiple_of(2) || w.degree() < 3 {
        return Err(Error::NotInGradedPiece { degree: w.degree(), reason: "expected odd degree >= 3".into() });
    }
    let n = w.n();
    let j1 = form_j(n).s_expand(2).pop().expect("two coefficients");
    let inner = &j1.bracket(w.matrix())? + &w.matrix().scale(&BigInt::from(4 * k as i64 - 2));
    let quarter = BigRational::new(BigInt::from(-1), BigInt::from(4));
    let r = to_rational(&inner).scale(&quarter);
    for i in 0..n {
        for j in 0..n {
            let d = r[(i, j)].denom();
            if d > &BigInt::from(2) {
                return Err(Error::HalfIntegralityViolation { row: i, col: j, denominator: d.to_string() });
            }
        }
    }
    Ok(r)
}

/// `u = -1 (omega)_(2k)^+` as a row of column sums.
pub fn u_vector(w: &GradedElement, k: u32) -> Result<Vec<BigRational>> {
    let r = reconstruct_plus(w, k)?;
    let n = r.rows();
    Ok((0..n).map(|j| -(0..n).fold(BigRational::zero(), |acc, i| acc + &r[(i, j)])).collect())
}

/// The banded skew matrix `omega'` with `1 omega' = u`:
/// `omega'_{j+1,j} = u_1 + ... + u_j` and `omega'_{j,j+1}` its negative.
pub fn w_prime(w: &GradedElement, k: u32) -> Result<RationalMatrix> {
    let u = u_vector(w, k)?;
    let n = u.len();
    let total = u.iter().fold(BigRational::zero(), |acc, x| acc + x);
    if !total.is_zero() {
        return Err(Error::Invalid(format!("u does not sum to zero (sum {total})")));
    }
    let mut out = RationalMatrix::zeros(n, n);
    let mut partial = BigRational::zero();
    for j in 0..n.saturating_sub(1) {
        partial += &u[j];
        out[(j + 1, j)] = partial.clone();
        out[(j, j + 1)] = -partial.clone();
    }
    Ok(out)
}

/// An integral matrix congruent to `(omega)_(2k)` modulo `G_2k` for every
/// `omega` with `(omega)_(2k-1) = W`.
///
/// `reconstruct_plus + w_prime` has the right symmetric part and column
/// sums but may be half-integral; adding half of a suitable combination of
/// the `Y_{1jl}` clears the denominators without leaving `(1/2) G_2k`.
pub fn omega_even_lift(w: &GradedElement, k: u32) -> Result<IntMatrix> {
    let m = &reconstruct_plus(w, k)? + &w_prime(w, k)?;
    let n = m.rows();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut lifted = m.clone();
    for j in 1..n {
        for l in j + 1..n {
            if m[(j, l)].is_integer() {
                continue;
            }
            let y = gen_y(1, j + 1, l + 1, n)?;
            lifted = &lifted + &to_rational(y.matrix()).scale(&half);
        }
    }
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = &lifted[(i, j)];
            if !x.is_integer() {
                return Err(Error::HalfIntegralityViolation { row: i, col: j, denominator: x.denom().to_string() });
            }
            out[(i, j)] = x.to_integer();
        }
    }
    Ok(out)
}

/// `phi` computed from the `(I_i, W_i)` data alone, read in degree
/// `target_degree = 2l + 1`:
/// `sum <X_I, lift_i> + <(A_I)_(2), W_i> + <W_i, X_I> X_I`, with `lift_i`
/// from [`omega_even_lift`] standing in for `(omega_i)_(2l)`.
pub fn phi_from_w_matrix(a: &KernelElement, target_degree: u32) -> Result<IntMatrix> {
    if target_degree < 5 || target_degree.is_multiple_of(2) {
        return Err(Error::Invalid(format!("target degree must be odd and >= 5, not {target_degree}")));
    }
    let a = a.transport(target_degree - 2)?;
    let k = (target_degree - 1) / 2;
    let n = a.n;
    let mut total = IntMatrix::zeros(n, n);
    for t in &a.terms {
        let x = gen_x(t.pair.0, t.pair.1, n)?.into_matrix();
        let a2 = eval_trunc(&BraidWord::pure(n, t.pair.0, t.pair.1)?, 3).coefficient(2).clone();
        let wm = t.w.matrix();
        total = &total + &x.bracket(&omega_even_lift(&t.w, k)?)?;
        total = &total + &a2.bracket(wm)?;
        total = &total + &(&wm.bracket(&x)? * &x);
    }
    Ok(total)
}

/// The coset of [`phi_from_w_matrix`] in `G_{2l+1} / <G_1, G_{2l}>`.
pub fn phi_from_w(a: &KernelElement, target_degree: u32) -> Result<CosetElement> {
    let m = phi_from_w_matrix(a, target_degree)?;
    let n = m.rows();
    let rep = GradedElement::new(target_degree, m)?;
    Ok(CosetElement::new(rep, bracket_lattice(n, target_degree - 1)))
}
