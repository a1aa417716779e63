use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::braid::Perm;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Lattice, Matrix};

/// A homogeneous element of the graded Lie algebra: an integer matrix in
/// `G_k`.
///
/// `G_k` consists of matrices `M` with `M 1 = 0` and
/// - `k = 1`: `M` symmetric;
/// - `k` even: `M` skew;
/// - `k >= 3` odd: `M` symmetric and traceless.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraded")]
pub struct GradedElement {
    degree: u32,
    #[serde(with = "crate::json::int_matrix")]
    matrix: IntMatrix,
}

#[derive(Deserialize)]
struct RawGraded {
    degree: u32,
    #[serde(with = "crate::json::int_matrix")]
    matrix: IntMatrix,
}

impl TryFrom<RawGraded> for GradedElement {
    type Error = Error;
    fn try_from(raw: RawGraded) -> Result<Self> {
        GradedElement::new(raw.degree, raw.matrix)
    }
}

/// Checks the defining conditions of `G_k`.
pub fn check_graded(k: u32, m: &IntMatrix) -> Result<()> {
    let fail = |reason: &str| Err(Error::NotInGradedPiece { degree: k, reason: reason.to_string() });
    if k == 0 {
        return fail("degree must be positive");
    }
    if !m.is_square() {
        return fail("not square");
    }
    if !m.row_sums().iter().all(Zero::is_zero) {
        return fail("rows do not sum to zero");
    }
    if k.is_multiple_of(2) {
        if !m.is_skew() {
            return fail("even degree requires a skew-symmetric matrix");
        }
    } else {
        if !m.is_symmetric() {
            return fail("odd degree requires a symmetric matrix");
        }
        if k >= 3 && !m.trace().is_zero() {
            return fail("odd degree >= 3 requires trace zero");
        }
    }
    Ok(())
}

impl GradedElement {
    pub fn new(degree: u32, matrix: IntMatrix) -> Result<Self> {
        check_graded(degree, &matrix)?;
        Ok(Self { degree, matrix })
    }

    pub(crate) fn new_unchecked(degree: u32, matrix: IntMatrix) -> Self {
        debug_assert!(check_graded(degree, &matrix).is_ok(), "{matrix:?} not in G_{degree}");
        Self { degree, matrix }
    }

    pub fn zero(n: usize, degree: u32) -> Self {
        assert!(degree >= 1);
        Self { degree, matrix: IntMatrix::zeros(n, n) }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    fn same_piece(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        if self.n() != other.n() {
            return Err(Error::StrandMismatch(self.n(), other.n()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_piece(other)?;
        Ok(Self { degree: self.degree, matrix: &self.matrix + &other.matrix })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_piece(other)?;
        Ok(Self { degree: self.degree, matrix: &self.matrix - &other.matrix })
    }

    pub fn neg(&self) -> Self {
        Self { degree: self.degree, matrix: -&self.matrix }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { degree: self.degree, matrix: self.matrix.scale(k) }
    }

    /// `<M, N> = MN - NM`, landing in degree `k + l`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::StrandMismatch(self.n(), other.n()));
        }
        Ok(Self::new_unchecked(self.degree + other.degree, self.matrix.bracket(&other.matrix)?))
    }

    /// `P M P^-1` with `P = permutation(perm)`; entrywise
    /// `result[a][b] = M[perm(a)][perm(b)]`.
    pub fn sn_act(&self, perm: &Perm) -> Self {
        Self { degree: self.degree, matrix: conjugate_by_perm(&self.matrix, perm) }
    }

    /// The same matrix read in another degree of the same parity. For
    /// degrees at least 2 these pieces coincide as lattices.
    pub fn transport(&self, degree: u32) -> Result<Self> {
        if degree % 2 != self.degree % 2 || (degree == 1) != (self.degree == 1) {
            return Err(Error::DegreeMismatch(self.degree, degree));
        }
        Ok(Self { degree, matrix: self.matrix.clone() })
    }

    /// Coordinates over [`basis`] in the same degree.
    pub fn coordinates(&self) -> Vec<BigInt> {
        let n = self.n();
        let m = &self.matrix;
        if self.degree == 1 {
            pairs(n).map(|(i, j)| -&m[(i, j)]).collect()
        } else if self.degree.is_multiple_of(2) {
            pairs(n).filter(|&(i, _)| i > 0).map(|(i, j)| m[(i, j)].clone()).collect()
        } else {
            pairs(n).skip(1).map(|(i, j)| -&m[(i, j)]).collect()
        }
    }

    pub fn from_coordinates(n: usize, degree: u32, coords: &[BigInt]) -> Result<Self> {
        let basis = basis(n, degree);
        if coords.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                left: format!("{} basis elements", basis.len()),
                right: format!("{} coordinates", coords.len()),
            });
        }
        let mut m = IntMatrix::zeros(n, n);
        for (b, c) in basis.iter().zip(coords) {
            if !c.is_zero() {
                m = &m + &b.matrix.scale(c);
            }
        }
        Ok(Self { degree, matrix: m })
    }
}

pub(crate) fn conjugate_by_perm(m: &IntMatrix, perm: &Perm) -> IntMatrix {
    Matrix::from_fn(m.rows(), m.cols(), |a, b| m[(perm.image0(a), perm.image0(b))].clone())
}

/// Zero-based pairs `i < j` in lexicographic order.
fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G_{}: {}", self.degree, self.matrix)
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedElement({self})")
    }
}

fn check_indices(n: usize, idx: &[usize]) -> Result<()> {
    for (a, &i) in idx.iter().enumerate() {
        if i < 1 || i > n {
            return Err(Error::IndexOutOfRange { index: i, strands: n });
        }
        if idx[..a].contains(&i) {
            return Err(Error::Invalid(format!("indices {idx:?} are not distinct")));
        }
    }
    Ok(())
}

/// `X_ij = E_ii + E_jj - E_ij - E_ji`, one-based, in degree 1.
pub fn gen_x(i: usize, j: usize, n: usize) -> Result<GradedElement> {
    check_indices(n, &[i, j])?;
    let (a, b) = (i - 1, j - 1);
    let mut m = IntMatrix::zeros(n, n);
    m[(a, a)] = BigInt::one();
    m[(b, b)] = BigInt::one();
    m[(a, b)] = -BigInt::one();
    m[(b, a)] = -BigInt::one();
    Ok(GradedElement::new_unchecked(1, m))
}

/// `Y_ijk = (E_ij - E_ji) - (E_ik - E_ki) + (E_jk - E_kj)`, one-based, in
/// degree 2. The formula is alternating in `i, j, k`.
pub fn gen_y(i: usize, j: usize, k: usize, n: usize) -> Result<GradedElement> {
    check_indices(n, &[i, j, k])?;
    let (a, b, c) = (i - 1, j - 1, k - 1);
    let mut m = IntMatrix::zeros(n, n);
    for (p, q, sign) in [(a, b, 1), (a, c, -1), (b, c, 1)] {
        m[(p, q)] += BigInt::from(sign);
        m[(q, p)] -= BigInt::from(sign);
    }
    Ok(GradedElement::new_unchecked(2, m))
}

/// A `Z`-basis of `G_k`:
/// - `k = 1`: `X_ij` for `i < j`;
/// - `k` even: `Y_1jk` for `1 < j < k`;
/// - `k >= 3` odd: `X_ij - X_12` for `(i, j) != (1, 2)`, in degree `k`.
pub fn basis(n: usize, k: u32) -> Vec<GradedElement> {
    assert!(k >= 1, "degree must be positive");
    if k == 1 {
        pairs(n).map(|(i, j)| gen_x(i + 1, j + 1, n).expect("valid pair")).collect()
    } else if k.is_multiple_of(2) {
        pairs(n)
            .filter(|&(i, _)| i > 0)
            .map(|(j, l)| {
                let y = gen_y(1, j + 1, l + 1, n).expect("valid triple");
                GradedElement { degree: k, matrix: y.matrix }
            })
            .collect()
    } else {
        let x12 = gen_x(1, 2, n).expect("n >= 2").matrix;
        pairs(n)
            .skip(1)
            .map(|(i, j)| GradedElement {
                degree: k,
                matrix: &gen_x(i + 1, j + 1, n).expect("valid pair").matrix - &x12,
            })
            .collect()
    }
}

/// Rank of `G_k` for `n` strands.
pub fn rank(n: usize, k: u32) -> usize {
    let pairs = n * (n - 1) / 2;
    if k == 1 {
        pairs
    } else if k.is_multiple_of(2) {
        (n - 1) * (n - 2) / 2
    } else {
        pairs - 1
    }
}

/// The sublattice `<G_1, G_k>` of `G_{k+1}`, spanned by brackets of basis
/// elements.
pub fn bracket_lattice(n: usize, k: u32) -> Lattice {
    let b1 = basis(n, 1);
    let bk = basis(n, k);
    let gens: Vec<IntMatrix> =
        b1.iter().flat_map(|x| bk.iter().map(move |y| x.bracket(y).expect("same n").matrix)).collect();
    Lattice::span_matrices(&gens, n * n)
}

/// Lattice spanned by a set of graded elements.
pub fn span(elements: &[GradedElement], n: usize) -> Lattice {
    let gens: Vec<IntMatrix> = elements.iter().map(|e| e.matrix.clone()).collect();
    Lattice::span_matrices(&gens, n * n)
}

/// A class in `G_{2k+1} / <G_1, G_{2k}>` (or any quotient by a lattice).
#[derive(Clone, Debug)]
pub struct CosetElement {
    representative: GradedElement,
    modulus: Lattice,
}

impl CosetElement {
    pub fn new(representative: GradedElement, modulus: Lattice) -> Self {
        Self { representative, modulus }
    }

    pub fn representative(&self) -> &GradedElement {
        &self.representative
    }

    pub fn modulus(&self) -> &Lattice {
        &self.modulus
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.modulus.contains_matrix(&(m - self.representative.matrix()))
    }

    pub fn is_zero(&self) -> bool {
        self.modulus.contains_matrix(self.representative.matrix())
    }
}

impl PartialEq for CosetElement {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.contains(other.representative.matrix())
    }
}
