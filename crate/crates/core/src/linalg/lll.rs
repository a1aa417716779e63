//! LLL reduction over exact rationals, for shortening integer solutions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Gram-Schmidt vectors and coefficients `mu[i][j]`, `j < i`.
fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>) {
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(b.len());
    let mut mu = vec![vec![BigRational::zero(); b.len()]; b.len()];
    for i in 0..b.len() {
        let mut v = to_rational(&b[i]);
        let bi = to_rational(&b[i]);
        for j in 0..i {
            let norm = dot(&star[j], &star[j]);
            if norm.is_zero() {
                continue;
            }
            mu[i][j] = dot(&bi, &star[j]) / norm;
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * y;
            }
        }
        star.push(v);
    }
    (star, mu)
}

fn sub_multiple(target: &mut [BigInt], q: &BigInt, source: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// LLL-reduces linearly independent integer rows (`delta = 3/4`).
pub fn lll_reduce(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    while k < b.len() {
        for j in (0..k).rev() {
            let (_, mu) = gram_schmidt(&b[..=k]);
            let q = mu[k][j].round().to_integer();
            if !q.is_zero() {
                let src = b[j].clone();
                sub_multiple(&mut b[k], &q, &src);
            }
        }
        let (star, mu) = gram_schmidt(&b[..=k]);
        let lhs = dot(&star[k], &star[k]);
        let m = &mu[k][k - 1];
        let rhs = (&delta - m * m) * dot(&star[k - 1], &star[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

/// Subtracts lattice vectors from `v` by Babai's nearest-plane rounding,
/// which leaves `v` unchanged modulo the lattice spanned by `basis`.
pub fn reduce_modulo(v: &[BigInt], basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    let (star, _) = gram_schmidt(basis);
    let mut out = v.to_vec();
    for i in (0..basis.len()).rev() {
        let norm = dot(&star[i], &star[i]);
        if norm.is_zero() {
            continue;
        }
        let q = (dot(&to_rational(&out), &star[i]) / norm).round().to_integer();
        if !q.is_zero() {
            sub_multiple(&mut out, &q, &basis[i]);
        }
    }
    out
}

/// `|v|^2`.
pub fn norm_squared(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc + x * x)
}
