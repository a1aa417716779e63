//! Reference computations written without the library's arithmetic: plain
//! `i128` matrices over `Z[s]/(s^p)`, binomial expansion of Laurent
//! polynomials, and a small integer echelon form.
#![allow(dead_code)]

use burau::laurent::LaurentPoly;
use burau::linalg::{IntMatrix, LaurentMatrix};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// `n x n` matrix whose entries are truncated series `c_0 + c_1 s + ...`.
pub type SMat = Vec<Vec<Vec<i128>>>;
pub type IMat = Vec<Vec<i128>>;

pub fn identity(n: usize, p: usize) -> SMat {
    (0..n).map(|i| (0..n).map(|j| series_const((i == j) as i128, p)).collect()).collect()
}

fn series_const(c: i128, p: usize) -> Vec<i128> {
    let mut v = vec![0; p];
    v[0] = c;
    v
}

/// `t^e = (1 + s)^e` truncated, via generalized binomial coefficients.
pub fn t_power(e: i64, p: usize) -> Vec<i128> {
    let mut out = vec![0i128; p];
    let mut c = 1i128;
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = c;
        // C(e, k + 1) = C(e, k) (e - k) / (k + 1), exact at each step
        c = c * (e as i128 - k as i128) / (k as i128 + 1);
    }
    out
}

fn add_into(acc: &mut [i128], x: &[i128]) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a = a.checked_add(*b).expect("oracle overflow");
    }
}

fn series_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let p = a.len();
    let mut out = vec![0i128; p];
    for i in 0..p {
        if a[i] == 0 {
            continue;
        }
        for j in 0..p - i {
            out[i + j] = out[i + j].checked_add(a[i].checked_mul(b[j]).expect("oracle overflow")).expect("oracle overflow");
        }
    }
    out
}

pub fn mul(a: &SMat, b: &SMat) -> SMat {
    let n = a.len();
    let p = a[0][0].len();
    let mut out = vec![vec![vec![0i128; p]; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].iter().all(|&x| x == 0) {
                continue;
            }
            for j in 0..n {
                let prod = series_mul(&a[i][k], &b[k][j]);
                add_into(&mut out[i][j], &prod);
            }
        }
    }
    out
}

/// `beta(s_i)^{+-1}`, built from the defining block with `t = 1 + s`.
pub fn generator(n: usize, letter: i32, p: usize) -> SMat {
    let i = letter.unsigned_abs() as usize - 1;
    let mut m = identity(n, p);
    let one = series_const(1, p);
    if letter > 0 {
        let t = t_power(1, p);
        m[i][i] = one.iter().zip(&t).map(|(a, b)| a - b).collect();
        m[i][i + 1] = one.clone();
        m[i + 1][i] = t;
        m[i + 1][i + 1] = vec![0; p];
    } else {
        let tinv = t_power(-1, p);
        m[i][i] = vec![0; p];
        m[i][i + 1] = tinv.clone();
        m[i + 1][i] = one.clone();
        m[i + 1][i + 1] = one.iter().zip(&tinv).map(|(a, b)| a - b).collect();
    }
    m
}

/// Full matrix products letter by letter.
pub fn word_by_products(n: usize, letters: &[i32], p: usize) -> SMat {
    letters.iter().fold(identity(n, p), |acc, &l| mul(&acc, &generator(n, l, p)))
}

/// Same product, but only the two columns a generator touches are rebuilt.
pub fn word(n: usize, letters: &[i32], p: usize) -> SMat {
    let mut m = identity(n, p);
    let gens: Vec<(SMat, SMat)> = (1..n as i32).map(|i| (generator(n, i, p), generator(n, -i, p))).collect();
    for &l in letters {
        let i = l.unsigned_abs() as usize - 1;
        let g = if l > 0 { &gens[i].0 } else { &gens[i].1 };
        for row in m.iter_mut() {
            let (a, b) = (row[i].clone(), row[i + 1].clone());
            for c in [i, i + 1] {
                let mut acc = series_mul(&a, &g[i][c]);
                add_into(&mut acc, &series_mul(&b, &g[i + 1][c]));
                row[c] = acc;
            }
        }
    }
    m
}

/// Coefficient matrix of `s^k`.
pub fn coefficient(m: &SMat, k: usize) -> IMat {
    m.iter().map(|r| r.iter().map(|e| e[k]).collect()).collect()
}

/// Smallest `k >= 1` with a nonzero `s^k` part of `m - I`, or `None` if
/// `m = I` at this precision.
pub fn depth(m: &SMat) -> Option<usize> {
    let n = m.len();
    let p = m[0][0].len();
    let id = identity(n, p);
    (0..p).find(|&k| (0..n).any(|i| (0..n).any(|j| m[i][j][k] != id[i][j][k])))
}

/// s-expansion of an exact Laurent matrix.
pub fn expand(m: &LaurentMatrix, p: usize) -> SMat {
    let n = m.rows();
    (0..n)
        .map(|i| (0..n).map(|j| expand_poly(&m[(i, j)], p)).collect())
        .collect()
}

pub fn expand_poly(f: &LaurentPoly, p: usize) -> Vec<i128> {
    let mut out = vec![0i128; p];
    for (e, c) in f.terms() {
        let c = c.to_i128().expect("small coefficient");
        let tp = t_power(e, p);
        for k in 0..p {
            out[k] = out[k].checked_add(c.checked_mul(tp[k]).expect("oracle overflow")).expect("oracle overflow");
        }
    }
    out
}

pub fn to_imat(m: &IntMatrix) -> IMat {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_i128().expect("small entry")).collect()).collect()
}

pub fn from_imat(m: &IMat) -> IntMatrix {
    IntMatrix::from_rows(m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
}

pub fn imul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn isub(a: &IMat, b: &IMat) -> IMat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn iadd(a: &IMat, b: &IMat) -> IMat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn iscale(a: &IMat, k: i128) -> IMat {
    a.iter().map(|r| r.iter().map(|x| k * x).collect()).collect()
}

pub fn ibracket(a: &IMat, b: &IMat) -> IMat {
    isub(&imul(a, b), &imul(b, a))
}

pub fn zero(n: usize) -> IMat {
    vec![vec![0; n]; n]
}

/// `X_ij`, one-based.
pub fn x(n: usize, i: usize, j: usize) -> IMat {
    let mut m = zero(n);
    m[i - 1][i - 1] = 1;
    m[j - 1][j - 1] = 1;
    m[i - 1][j - 1] = -1;
    m[j - 1][i - 1] = -1;
    m
}

/// `Y_ijk`, one-based.
pub fn y(n: usize, i: usize, j: usize, k: usize) -> IMat {
    let mut m = zero(n);
    for (a, b, s) in [(i, j, 1), (i, k, -1), (j, k, 1)] {
        m[a - 1][b - 1] += s;
        m[b - 1][a - 1] -= s;
    }
    m
}

/// All permutations of `0..n` as image vectors.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `result[a][b] = m[p(a)][p(b)]`.
pub fn relabel(m: &IMat, p: &[usize]) -> IMat {
    let n = m.len();
    (0..n).map(|a| (0..n).map(|b| m[p[a]][p[b]]).collect()).collect()
}

pub fn flat(m: &IMat) -> Vec<i128> {
    m.iter().flatten().copied().collect()
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Row Hermite normal form (positive pivots, entries above each pivot
/// reduced into `[0, pivot)`), zero rows dropped. Two generating sets span
/// the same lattice exactly when their forms are equal.
pub fn hnf(rows: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let mut a: Vec<Vec<i128>> = rows.to_vec();
    let width = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        for i in r + 1..a.len() {
            if a[i][c] == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(a[r][c], a[i][c]);
            let (u, v) = (a[r][c] / g, a[i][c] / g);
            let top: Vec<i128> = (0..width).map(|k| s * a[r][k] + t * a[i][k]).collect();
            let bottom: Vec<i128> = (0..width).map(|k| -v * a[r][k] + u * a[i][k]).collect();
            a[r] = top;
            a[i] = bottom;
        }
        if r < a.len() && a[r][c] != 0 {
            if a[r][c] < 0 {
                a[r] = a[r].iter().map(|x| -x).collect();
            }
            for i in 0..r {
                let q = a[i][c].div_euclid(a[r][c]);
                if q != 0 {
                    let row = a[r].clone();
                    for (x, y) in a[i].iter_mut().zip(&row) {
                        *x -= q * y;
                    }
                }
            }
            r += 1;
        }
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    a
}

pub fn span_equal(a: &[Vec<i128>], b: &[Vec<i128>]) -> bool {
    hnf(a) == hnf(b)
}

/// `v` lies in the span of `rows`.
pub fn in_span(rows: &[Vec<i128>], v: &[i128]) -> bool {
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    hnf(&with) == hnf(rows)
}

pub fn rank(rows: &[Vec<i128>]) -> usize {
    hnf(rows).len()
}

#[test]
fn binomial_series_invert() {
    let p = 6;
    let prod = series_mul(&t_power(3, p), &t_power(-3, p));
    assert_eq!(prod, series_const(1, p));
}

#[test]
fn column_update_matches_full_products() {
    let letters = [1, -3, 2, 2, -1, 4, -2, 3];
    assert_eq!(word(5, &letters, 5), word_by_products(5, &letters, 5));
}

#[test]
fn echelon_form_detects_index() {
    let a = vec![vec![2, 0], vec![0, 2]];
    let b = vec![vec![2, 2], vec![0, 2]];
    let c = vec![vec![1, 1], vec![0, 2]];
    assert!(span_equal(&a, &b));
    assert!(!span_equal(&a, &c));
    assert!(in_span(&c, &[2, 0]));
    assert!(!in_span(&a, &[1, 1]));
}
