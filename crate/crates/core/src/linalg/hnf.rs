//! Row-style Hermite normal form over `Z` with a unimodular transform.
//!
//! Pivot columns are taken left to right. Within a column the row with the
//! smallest nonzero absolute value wins, ties going to the lowest index, so
//! the result is deterministic. Pivots are positive and entries above a
//! pivot are reduced into `[0, pivot)`, which makes the nonzero rows a
//! canonical basis of the row lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Clone, Debug)]
pub struct Hnf {
    width: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    /// `transform * generators = [basis; 0]`; the trailing rows span the
    /// integer relations among the generators.
    transform: Vec<Vec<BigInt>>,
}

fn axpy(target: &mut [BigInt], q: &BigInt, source: &[BigInt]) {
    // target -= q * source
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

impl Hnf {
    pub fn new(rows: &[Vec<BigInt>], width: usize) -> Self {
        let m = rows.len();
        assert!(rows.iter().all(|r| r.len() == width), "row width mismatch");
        let mut a: Vec<Vec<BigInt>> = rows.to_vec();
        let mut u: Vec<Vec<BigInt>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..width {
            if r == m {
                break;
            }
            loop {
                let best = (r..m)
                    .filter(|&i| !a[i][c].is_zero())
                    .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()).then(i.cmp(&j)));
                let Some(p) = best else { break };
                a.swap(r, p);
                u.swap(r, p);
                let mut clean = true;
                for i in r + 1..m {
                    if a[i][c].is_zero() {
                        continue;
                    }
                    let q = a[i][c].div_floor(&a[r][c]);
                    let (head, tail) = a.split_at_mut(i);
                    axpy(&mut tail[0], &q, &head[r]);
                    let (head, tail) = u.split_at_mut(i);
                    axpy(&mut tail[0], &q, &head[r]);
                    if !a[i][c].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if a[r][c].is_zero() {
                continue;
            }
            if a[r][c].is_negative() {
                a[r].iter_mut().for_each(|x| *x = -&*x);
                u[r].iter_mut().for_each(|x| *x = -&*x);
            }
            for i in 0..r {
                let q = a[i][c].div_floor(&a[r][c]);
                if q.is_zero() {
                    continue;
                }
                let (head, tail) = a.split_at_mut(r);
                axpy(&mut head[i], &q, &tail[0]);
                let (head, tail) = u.split_at_mut(r);
                axpy(&mut head[i], &q, &tail[0]);
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        Self { width, basis: a, pivots, transform: u }
    }

    pub fn from_matrices(generators: &[IntMatrix]) -> Self {
        let width = generators.first().map_or(0, |g| g.rows() * g.cols());
        let rows: Vec<Vec<BigInt>> = generators.iter().map(IntMatrix::vectorize).collect();
        Self::new(&rows, width)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn transform(&self) -> &[Vec<BigInt>] {
        &self.transform
    }

    /// A basis of the integer relations among the generators.
    pub fn kernel(&self) -> &[Vec<BigInt>] {
        &self.transform[self.rank()..]
    }

    /// Coordinates of `target` over the HNF basis, if it lies in the lattice.
    pub fn coordinates(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        reduce(&self.basis, &self.pivots, target)
    }

    pub fn contains(&self, target: &[BigInt]) -> bool {
        self.coordinates(target).is_some()
    }

    /// Integer coefficients `c` with `sum c_i * generator_i = target`.
    pub fn solve(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        let x = self.coordinates(target)?;
        let m = self.transform.len();
        let mut c = vec![BigInt::zero(); m];
        for (k, xk) in x.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            for (cj, uj) in c.iter_mut().zip(&self.transform[k]) {
                *cj += xk * uj;
            }
        }
        Some(c)
    }

    pub fn lattice(&self) -> Lattice {
        Lattice { width: self.width, basis: self.basis.clone(), pivots: self.pivots.clone() }
    }
}

fn reduce(basis: &[Vec<BigInt>], pivots: &[usize], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut t = target.to_vec();
    let mut x = vec![BigInt::zero(); basis.len()];
    for (k, &p) in pivots.iter().enumerate() {
        let (q, rem) = t[p].div_rem(&basis[k][p]);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            axpy(&mut t, &q, &basis[k]);
            x[k] = q;
        }
    }
    t.iter().all(Zero::is_zero).then_some(x)
}

/// A sublattice of `Z^width` held as its canonical HNF basis.
///
/// Two lattices are equal exactly when their bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    width: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn span(rows: &[Vec<BigInt>], width: usize) -> Self {
        Hnf::new(rows, width).lattice()
    }

    /// Lattice spanned by row-major vectorizations of the given matrices.
    pub fn span_matrices(generators: &[IntMatrix], width: usize) -> Self {
        let rows: Vec<Vec<BigInt>> = generators.iter().map(IntMatrix::vectorize).collect();
        Self::span(&rows, width)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        reduce(&self.basis, &self.pivots, v).is_some()
    }

    pub fn contains_matrix(&self, m: &IntMatrix) -> bool {
        self.contains(&m.vectorize())
    }

    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        reduce(&self.basis, &self.pivots, v)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }
}

/// Coefficients `c` with `sum c_i * generators[i] = target`, or `None`.
pub fn hnf_solve(generators: &[IntMatrix], target: &IntMatrix) -> Option<Vec<BigInt>> {
    if generators.is_empty() {
        return target.is_zero().then(Vec::new);
    }
    Hnf::from_matrices(generators).solve(&target.vectorize())
}

pub fn hnf_lattice_membership(generators: &[IntMatrix], target: &IntMatrix) -> bool {
    hnf_solve(generators, target).is_some()
}

/// A basis of all integer relations `sum c_i * generators[i] = 0`.
pub fn hnf_kernel(generators: &[IntMatrix]) -> Vec<Vec<BigInt>> {
    Hnf::from_matrices(generators).kernel().to_vec()
}
