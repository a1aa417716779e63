//! The unreduced Burau representation and the group `Gamma` it lands in.

use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::braid::{BraidWord, Letter, Perm, Representation};
use crate::depth::Depth;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::liealg::GradedElement;
use crate::linalg::{IntMatrix, LaurentMatrix, Matrix, TruncMatrix};

/// `beta(sigma_i)` or its inverse: the block `[[1-t, 1], [t, 0]]` at rows
/// and columns `i, i+1`.
pub fn generator(n: usize, i: usize, inverse: bool) -> Result<LaurentMatrix> {
    if i < 1 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, strands: n });
    }
    let mut m = LaurentMatrix::identity(n);
    let (a, b) = (i - 1, i);
    let t = LaurentPoly::t();
    let one = LaurentPoly::constant(1);
    if inverse {
        let tinv = LaurentPoly::t_pow(-1);
        m[(a, a)] = LaurentPoly::zero();
        m[(a, b)] = tinv.clone();
        m[(b, a)] = one.clone();
        m[(b, b)] = &one - &tinv;
    } else {
        m[(a, a)] = &one - &t;
        m[(a, b)] = one;
        m[(b, a)] = t;
        m[(b, b)] = LaurentPoly::zero();
    }
    Ok(m)
}

/// Exact evaluation into `GL_n(Z[t, t^-1])`.
pub struct ExactBurau {
    n: usize,
}

impl ExactBurau {
    pub fn new(n: usize) -> Self {
        Self { n }
    }
}

impl Representation for ExactBurau {
    type Elem = LaurentMatrix;

    fn identity(&self) -> LaurentMatrix {
        LaurentMatrix::identity(self.n)
    }

    fn apply_letter(&self, acc: &mut LaurentMatrix, letter: Letter) {
        let c = letter.unsigned_abs() as usize - 1;
        let t = LaurentPoly::t();
        let tinv = LaurentPoly::t_pow(-1);
        for r in 0..acc.rows() {
            let x = acc[(r, c)].clone();
            let y = acc[(r, c + 1)].clone();
            if letter > 0 {
                acc[(r, c)] = &x + &(&t * &(&y - &x));
                acc[(r, c + 1)] = x;
            } else {
                acc[(r, c + 1)] = &y + &(&tinv * &(&x - &y));
                acc[(r, c)] = y;
            }
        }
    }

    fn mul(&self, a: &LaurentMatrix, b: &LaurentMatrix) -> LaurentMatrix {
        a * b
    }
}

/// Evaluation into `GL_n(Z[s]/(s^N))`.
pub struct TruncatedBurau {
    n: usize,
    precision: usize,
}

impl TruncatedBurau {
    pub fn new(n: usize, precision: usize) -> Self {
        assert!(precision >= 1, "precision must be positive");
        Self { n, precision }
    }
}

impl Representation for TruncatedBurau {
    type Elem = TruncMatrix;

    fn identity(&self) -> TruncMatrix {
        TruncMatrix::identity(self.n, self.precision)
    }

    fn apply_letter(&self, acc: &mut TruncMatrix, letter: Letter) {
        acc.right_mul_generator(letter.unsigned_abs() as usize - 1, letter < 0);
    }

    fn mul(&self, a: &TruncMatrix, b: &TruncMatrix) -> TruncMatrix {
        a * b
    }
}

pub fn eval(word: &BraidWord) -> LaurentMatrix {
    word.evaluate(&ExactBurau::new(word.strands()))
}

pub fn eval_trunc(word: &BraidWord, precision: usize) -> TruncMatrix {
    word.evaluate(&TruncatedBurau::new(word.strands(), precision))
}

/// The fixed column vector `v = (t, t^2, ..., t^n)^T`.
pub fn vector_v(n: usize) -> LaurentMatrix {
    Matrix::from_fn(n, 1, |i, _| LaurentPoly::t_pow(i as i64 + 1))
}

/// The fixed row vector `(1, ..., 1)`.
pub fn vector_ones(n: usize) -> LaurentMatrix {
    Matrix::from_fn(1, n, |_, _| LaurentPoly::constant(1))
}

/// The Hermitian form: `1` on the diagonal, `-t` below, `-t^-1` above.
pub fn form_j(n: usize) -> LaurentMatrix {
    Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => LaurentPoly::constant(1),
        std::cmp::Ordering::Greater => LaurentPoly::monomial(-1, 1),
        std::cmp::Ordering::Less => LaurentPoly::monomial(-1, -1),
    })
}

/// The four defining conditions of `Gamma`, checked independently.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GammaReport {
    pub square: bool,
    pub fixes_v: bool,
    pub fixes_ones: bool,
    pub unitary: bool,
    /// The reduction mod `s`, when it is a permutation matrix.
    pub permutation: Option<Perm>,
}

impl GammaReport {
    pub const FIXES_V: &'static str = "A v = v";
    pub const FIXES_ONES: &'static str = "1 A = 1";
    pub const UNITARY: &'static str = "A* J A = J";
    pub const PERMUTATION: &'static str = "A mod s is a permutation matrix";

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        if !self.square {
            return vec!["square"];
        }
        let mut out = Vec::new();
        if !self.fixes_v {
            out.push(Self::FIXES_V);
        }
        if !self.fixes_ones {
            out.push(Self::FIXES_ONES);
        }
        if !self.unitary {
            out.push(Self::UNITARY);
        }
        if self.permutation.is_none() {
            out.push(Self::PERMUTATION);
        }
        out
    }
}

impl fmt::Display for GammaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failures = self.failures();
        if failures.is_empty() {
            write!(f, "all conditions hold")
        } else {
            write!(f, "fails: {}", failures.join("; "))
        }
    }
}

/// Evaluates all four conditions on an exact matrix.
pub fn gamma_report(a: &LaurentMatrix) -> GammaReport {
    if !a.is_square() {
        return GammaReport { square: false, fixes_v: false, fixes_ones: false, unitary: false, permutation: None };
    }
    let n = a.rows();
    let v = vector_v(n);
    let ones = vector_ones(n);
    let j = form_j(n);
    GammaReport {
        square: true,
        fixes_v: a * &v == v,
        fixes_ones: &ones * a == ones,
        unitary: &(&a.star() * &j) * a == j,
        permutation: a.eval_at_one().as_permutation(),
    }
}

/// Membership test for `Gamma`; only exact input can certify membership.
pub fn gamma_check(a: &LaurentMatrix) -> std::result::Result<GammaElement, GammaReport> {
    let report = gamma_report(a);
    if report.passed() {
        Ok(GammaElement::new_unchecked(a.clone(), None))
    } else {
        Err(report)
    }
}

/// A certified element of `Gamma`, optionally remembering a braid word.
///
/// Depth and expansion coefficients are memoized; the caches never affect
/// equality.
pub struct GammaElement {
    matrix: LaurentMatrix,
    word: Option<BraidWord>,
    depth: OnceLock<Depth>,
    expansion: RwLock<Option<TruncMatrix>>,
}

impl GammaElement {
    pub(crate) fn new_unchecked(matrix: LaurentMatrix, word: Option<BraidWord>) -> Self {
        Self { matrix, word, depth: OnceLock::new(), expansion: RwLock::new(None) }
    }

    /// `beta(word)`, which lies in `Gamma` by construction.
    pub fn from_word(word: &BraidWord) -> Self {
        Self::new_unchecked(eval(word), Some(word.clone()))
    }

    pub fn matrix(&self) -> &LaurentMatrix {
        &self.matrix
    }

    pub fn word(&self) -> Option<&BraidWord> {
        self.word.as_ref()
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn depth(&self) -> Depth {
        *self.depth.get_or_init(|| self.matrix.depth())
    }

    /// `(A)_(k)`.
    pub fn coefficient(&self, k: usize) -> IntMatrix {
        if let Some(t) = self.expansion.read().expect("cache lock").as_ref() {
            if t.precision() > k {
                return t.coefficient(k).clone();
            }
        }
        let t = self.matrix.to_trunc(k + 1);
        let c = t.coefficient(k).clone();
        let mut cache = self.expansion.write().expect("cache lock");
        if cache.as_ref().is_none_or(|old| old.precision() < t.precision()) {
            *cache = Some(t);
        }
        c
    }

    pub fn permutation(&self) -> Perm {
        self.matrix.eval_at_one().as_permutation().expect("reduction of a Gamma element is a permutation")
    }
}

impl Clone for GammaElement {
    fn clone(&self) -> Self {
        Self::new_unchecked(self.matrix.clone(), self.word.clone())
    }
}

impl PartialEq for GammaElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl fmt::Debug for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GammaElement").field("matrix", &self.matrix).field("word", &self.word).finish()
    }
}

/// The leading coefficient `(A)_(k)` as an element of `G_k`.
pub fn gamma_coeff(a: &GammaElement, k: u32) -> Result<GradedElement> {
    let depth = a.depth();
    if !depth.is_at_least(k) {
        return Err(Error::DepthTooSmall { requested: k, actual: depth.to_string() });
    }
    GradedElement::new(k, a.coefficient(k as usize))
}

/// `(beta(w))_(k)` via the truncated path at precision `k + 1`.
pub fn word_coeff(word: &BraidWord, k: u32) -> Result<GradedElement> {
    let t = eval_trunc(word, k as usize + 1);
    let depth = t.depth();
    if !depth.is_at_least(k) {
        return Err(Error::DepthTooSmall { requested: k, actual: depth.to_string() });
    }
    GradedElement::new(k, t.coefficient(k as usize).clone())
}

/// Depth of `beta(w)` as seen at precision `precision`.
pub fn word_depth_trunc(word: &BraidWord, precision: usize) -> Depth {
    eval_trunc(word, precision).depth()
}
