//! Witness libraries and the approximation loop.
//!
//! A [`WitnessLibrary`] stores, for each degree `k`, braid words whose
//! leading coefficients span `G_k`. Because `Gamma[s^k] / Gamma[s^{k+1}]`
//! is abelian, a product of witnesses has the sum of their coefficients,
//! so any target in `G_k` is realized by a product of powers.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::braid::{Bindings, BraidWord, Perm};
use crate::burau::{eval, eval_trunc, GammaElement};
use crate::depth::Depth;
use crate::error::{Error, Result};
use crate::linalg::{lll_reduce, reduce_modulo, Hnf, IntMatrix, Lattice};
use crate::liealg::{gen_x, rank, GradedElement};

/// Longest word (in letters) for which [`approximate`] repeats its final
/// depth check over the exact Laurent ring.
pub const EXACT_CHECK_LETTERS: u128 = 1_000;

/// A word together with its computed leading coefficient.
#[derive(Clone, Debug)]
pub struct Witness {
    pub word: BraidWord,
    pub element: GradedElement,
}

#[derive(Clone, Debug)]
struct Degree {
    witnesses: Vec<Witness>,
    /// One word per element of `basis(n, k)`, in order.
    basis_words: Vec<BraidWord>,
}

#[derive(Clone, Debug)]
pub struct WitnessLibrary {
    n: usize,
    degrees: Vec<Degree>,
}

fn computed(word: BraidWord, k: u32) -> Result<Witness> {
    let t = eval_trunc(&word, k as usize + 1);
    let depth = t.depth();
    if !depth.is_at_least(k) {
        return Err(Error::DepthTooSmall { requested: k, actual: depth.to_string() });
    }
    let element = GradedElement::new(k, t.coefficient(k as usize).clone())?;
    Ok(Witness { word, element })
}

fn exponent(c: &BigInt) -> Result<i64> {
    c.to_i64().ok_or_else(|| Error::Invalid(format!("exponent {c} does not fit in 64 bits")))
}

/// `prod words_i^{c_i}`, skipping zero exponents.
fn power_product(n: usize, words: &[BraidWord], coeffs: &[BigInt]) -> Result<BraidWord> {
    let factors = words
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .map(|(w, c)| Ok(w.power(exponent(c)?)))
        .collect::<Result<Vec<_>>>()?;
    BraidWord::product(n, &factors)
}

impl Degree {
    /// Deduplicates by coefficient, checks the span and derives basis words.
    fn from_candidates(n: usize, k: u32, candidates: Vec<Witness>) -> Result<Self> {
        let mut witnesses: Vec<Witness> = Vec::new();
        for c in candidates {
            if !c.element.is_zero() && witnesses.iter().all(|w| w.element != c.element) {
                witnesses.push(c);
            }
        }
        let width = rank(n, k);
        let coords: Vec<Vec<BigInt>> = witnesses.iter().map(|w| w.element.coordinates()).collect();
        let full = Lattice::span(&identity_rows(width), width);
        if Lattice::span(&coords, width) != full {
            return Err(Error::SpanFailure(k));
        }
        let chosen = unimodular_subset(&coords, width);
        let words: Vec<BraidWord> = chosen.iter().map(|&i| witnesses[i].word.clone()).collect();
        let rows: Vec<Vec<BigInt>> = chosen.iter().map(|&i| coords[i].clone()).collect();
        let solutions: Vec<Vec<BigInt>> = if rows.len() == width {
            let m = IntMatrix::from_rows(rows)?;
            m.inverse_unimodular().ok_or(Error::SpanFailure(k))?.to_rows()
        } else {
            // Shorten the HNF solutions modulo the relations among the rows.
            let hnf = Hnf::new(&rows, width);
            let relations = lll_reduce(hnf.kernel().to_vec());
            identity_rows(width)
                .iter()
                .map(|e| hnf.solve(e).map(|c| reduce_modulo(&c, &relations)).ok_or(Error::SpanFailure(k)))
                .collect::<Result<_>>()?
        };
        let basis_words = solutions
            .iter()
            .enumerate()
            .map(|(i, c)| Ok(power_product(n, &words, c)?.named(&basis_name(k, i))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { witnesses, basis_words })
    }
}

/// Indices of witnesses forming a basis of `Z^width` when a local search
/// finds one: start from the first independent rows and swap in other rows
/// while `|det|` drops. Otherwise the independent rows are topped up with
/// lattice-enlarging rows, which still span.
fn unimodular_subset(coords: &[Vec<BigInt>], width: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for (i, v) in coords.iter().enumerate() {
        if chosen.len() == width {
            break;
        }
        let mut rows: Vec<Vec<BigInt>> = chosen.iter().map(|&j| coords[j].clone()).collect();
        rows.push(v.clone());
        if Lattice::span(&rows, width).rank() == rows.len() {
            chosen.push(i);
        }
    }
    let det = |idx: &[usize]| -> BigInt {
        IntMatrix::from_rows(idx.iter().map(|&j| coords[j].clone()).collect()).expect("square").det().abs()
    };
    let mut current = det(&chosen);
    'search: while !current.is_one() {
        for cand in 0..coords.len() {
            if chosen.contains(&cand) {
                continue;
            }
            for pos in 0..width {
                let mut trial = chosen.clone();
                trial[pos] = cand;
                let d = det(&trial);
                if !d.is_zero() && d < current {
                    chosen = trial;
                    current = d;
                    continue 'search;
                }
            }
        }
        break;
    }
    if !current.is_one() {
        let mut rows: Vec<Vec<BigInt>> = chosen.iter().map(|&j| coords[j].clone()).collect();
        let full = Lattice::span(&identity_rows(width), width);
        for (i, v) in coords.iter().enumerate() {
            if Lattice::span(&rows, width) == full {
                break;
            }
            if !chosen.contains(&i) && !Lattice::span(&rows, width).contains(v) {
                rows.push(v.clone());
                chosen.push(i);
            }
        }
    }
    chosen
}

/// `B<k>_<i>`, one-based, the printed name of a basis word.
pub fn basis_name(k: u32, i: usize) -> String {
    format!("B{k}_{}", i + 1)
}

fn identity_rows(r: usize) -> Vec<Vec<BigInt>> {
    (0..r).map(|i| (0..r).map(|j| BigInt::from((i == j) as i32)).collect()).collect()
}

fn evaluate_all(words: Vec<BraidWord>, k: u32) -> Result<Vec<Witness>> {
    crate::with_pool(|| words.into_par_iter().map(|w| computed(w, k)).collect())
}

fn pure_words(n: usize) -> Vec<BraidWord> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| BraidWord::pure(n, i, j).expect("valid pair"))).collect()
}

/// `p w p^-1` for every permutation lift `p`.
fn conjugates(word: &BraidWord) -> Vec<BraidWord> {
    Perm::all(word.strands())
        .iter()
        .map(|p| word.conjugate_by(&BraidWord::perm_lift(p)).expect("same strand count"))
        .collect()
}

impl WitnessLibrary {
    /// Builds degrees `1..=max_degree` for `n >= 5` strands.
    pub fn build(n: usize, max_degree: u32) -> Result<Self> {
        if n < 5 {
            return Err(Error::Invalid(format!("witness libraries need n >= 5, not {n}")));
        }
        if max_degree < 1 {
            return Err(Error::Invalid("max degree must be at least 1".into()));
        }
        let mut lib = Self { n, degrees: Vec::new() };
        for k in 1..=max_degree {
            let candidates = lib.candidates(k)?;
            let witnesses = evaluate_all(candidates, k)?;
            lib.degrees.push(Degree::from_candidates(n, k, witnesses)?);
        }
        Ok(lib)
    }

    fn candidates(&self, k: u32) -> Result<Vec<BraidWord>> {
        let n = self.n;
        let a = pure_words(n);
        Ok(match k {
            1 => a,
            2 => {
                let mut out = Vec::new();
                for i in 1..=n {
                    for j in 1..=n {
                        for l in j + 1..=n {
                            if i != j && i != l {
                                let x = BraidWord::pure(n, i.min(j), i.max(j))?;
                                let y = BraidWord::pure(n, i.min(l), i.max(l))?;
                                out.push(x.commutator(&y)?);
                            }
                        }
                    }
                }
                out
            }
            3 => conjugates(&BraidWord::parse("ALPHA", n)?.named("ALPHA")),
            _ => {
                let lower = &self.degrees[k as usize - 2].basis_words;
                let mut out: Vec<BraidWord> = Vec::new();
                if k % 2 == 1 {
                    let omega = self.x24_minus_x25(k - 2)?;
                    let head = BraidWord::parse("A25^2 A45", n)?;
                    out.extend(conjugates(&head.commutator(&omega)?));
                }
                for x in &a {
                    for w in lower {
                        out.push(x.commutator(w)?);
                    }
                }
                out
            }
        })
    }

    /// A word with leading coefficient `X_24 - X_25` in odd degree `k`;
    /// in degree 3 this is `[alpha, sigma_4]`.
    fn x24_minus_x25(&self, k: u32) -> Result<BraidWord> {
        let n = self.n;
        let target = GradedElement::new(k, gen_x(2, 4, n)?.try_sub(&gen_x(2, 5, n)?)?.into_matrix())?;
        if k == 3 {
            let w = BraidWord::parse("ALPHA", n)?.named("ALPHA").commutator(&BraidWord::generator(n, 4, false)?)?;
            let found = computed(w.clone(), 3)?;
            if found.element == target {
                return Ok(w);
            }
        }
        self.solve_in_degree(&target)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.len() as u32
    }

    /// The deduplicated witnesses of degree `k`.
    pub fn witnesses(&self, k: u32) -> &[Witness] {
        &self.degrees[k as usize - 1].witnesses
    }

    /// Words realizing `basis(n, k)` in order.
    pub fn basis_words(&self, k: u32) -> &[BraidWord] {
        &self.degrees[k as usize - 1].basis_words
    }

    /// A word `w` with `depth(beta(w)) >= k` and `(beta(w))_(k) = target`.
    pub fn solve_in_degree(&self, target: &GradedElement) -> Result<BraidWord> {
        let k = target.degree();
        if target.n() != self.n {
            return Err(Error::StrandMismatch(target.n(), self.n));
        }
        if k < 1 || k > self.max_degree() {
            return Err(Error::NoSolution(k));
        }
        power_product(self.n, self.basis_words(k), &target.coordinates())
    }

    /// The built-in names plus `B<k>_<i>` for every basis word, enough to
    /// parse any stored witness.
    pub fn bindings(&self) -> Bindings {
        let mut b = Bindings::builtin();
        for (idx, d) in self.degrees.iter().enumerate() {
            for (i, w) in d.basis_words.iter().enumerate() {
                b.insert_word(&basis_name(idx as u32 + 1, i), w.clone());
            }
        }
        b
    }

    /// Rebuilds a library from stored `(word, coefficient)` pairs, degree
    /// by degree; words may refer to the basis words of lower degrees.
    /// Unless `trust` is set, every coefficient is recomputed and compared.
    pub fn load(n: usize, degrees: &[Vec<(String, GradedElement)>], trust: bool) -> Result<Self> {
        if n < 5 {
            return Err(Error::Invalid(format!("witness libraries need n >= 5, not {n}")));
        }
        let mut lib = Self { n, degrees: Vec::new() };
        for (idx, stored) in degrees.iter().enumerate() {
            let k = idx as u32 + 1;
            let bindings = lib.bindings();
            let mut witnesses = Vec::with_capacity(stored.len());
            for (text, element) in stored {
                if element.degree() != k {
                    return Err(Error::DegreeMismatch(element.degree(), k));
                }
                if element.n() != n {
                    return Err(Error::StrandMismatch(element.n(), n));
                }
                witnesses.push(Witness { word: bindings.parse(text, n)?, element: element.clone() });
            }
            if !trust {
                check_coefficients(&witnesses, k)?;
            }
            lib.degrees.push(Degree::from_candidates(n, k, witnesses)?);
        }
        Ok(lib)
    }

    /// Recomputes every stored coefficient and every basis word.
    pub fn verify(&self) -> Result<()> {
        for (idx, d) in self.degrees.iter().enumerate() {
            let k = idx as u32 + 1;
            check_coefficients(&d.witnesses, k)?;
            let basis = crate::liealg::basis(self.n, k);
            let words = d.basis_words.clone();
            let found = evaluate_all(words, k)?;
            if found.iter().zip(&basis).any(|(f, b)| &f.element != b) {
                return Err(Error::SpanFailure(k));
            }
        }
        Ok(())
    }
}

fn check_coefficients(witnesses: &[Witness], k: u32) -> Result<()> {
    let words: Vec<BraidWord> = witnesses.iter().map(|w| w.word.clone()).collect();
    let fresh = evaluate_all(words, k)?;
    for (stored, f) in witnesses.iter().zip(&fresh) {
        if stored.element != f.element {
            return Err(Error::Invalid(format!(
                "stored coefficient of {} in degree {k} does not match the computed one",
                stored.word
            )));
        }
    }
    Ok(())
}

/// One step of [`approximate`].
#[derive(Clone, Debug)]
pub struct Step {
    pub degree: u32,
    /// Coordinates of the residual coefficient that were cancelled.
    pub coefficients: Vec<BigInt>,
    /// Depth of `gamma^-1 * beta(word)` after the step.
    pub residual_depth: Depth,
    pub dag_size: usize,
}

#[derive(Clone, Debug)]
pub struct ApproximationResult {
    pub word: BraidWord,
    pub achieved_depth: Depth,
    pub steps: Vec<Step>,
    /// Whether the final depth was also confirmed over the exact ring.
    pub exact_checked: bool,
}

/// A word `w` with `depth(gamma^-1 beta(w)) >= max_degree + 1`.
///
/// Only the matrix of `gamma` is read.
pub fn approximate(lib: &WitnessLibrary, gamma: &GammaElement, max_degree: u32) -> Result<ApproximationResult> {
    let n = gamma.n();
    if n != lib.n() {
        return Err(Error::StrandMismatch(n, lib.n()));
    }
    if max_degree > lib.max_degree() {
        return Err(Error::Invalid(format!(
            "library reaches degree {}, approximation asked for {max_degree}",
            lib.max_degree()
        )));
    }
    let precision = max_degree as usize + 1;
    let inverse = gamma.matrix().to_trunc(precision).inverse()?;
    let perm = gamma.matrix().eval_at_one().as_permutation().ok_or_else(|| {
        Error::NotInGamma("reduction mod s is not a permutation matrix".into())
    })?;
    let mut word = BraidWord::perm_lift(&perm);
    let mut current = eval_trunc(&word, precision);
    let mut residual = &inverse * &current;
    let mut steps = vec![Step {
        degree: 0,
        coefficients: Vec::new(),
        residual_depth: residual.depth(),
        dag_size: word.dag_size(),
    }];
    for k in 1..=max_degree {
        let depth = residual.depth();
        if !depth.is_at_least(k) {
            return Err(Error::DepthRegression { degree: k, depth: depth.to_string() });
        }
        let c = GradedElement::new(k, residual.coefficient(k as usize).clone())
            .map_err(|e| Error::NotInGamma(format!("degree {k} residual: {e}")))?;
        if !c.is_zero() {
            let b = lib.solve_in_degree(&c)?.inverse();
            word = word.concat(&b)?;
            current = &current * &eval_trunc(&b, precision);
            residual = &inverse * &current;
        }
        steps.push(Step {
            degree: k,
            coefficients: c.coordinates(),
            residual_depth: residual.depth(),
            dag_size: word.dag_size(),
        });
    }
    let fresh = &inverse * &eval_trunc(&word, precision);
    let mut achieved = fresh.depth();
    if !achieved.is_at_least(max_degree + 1) {
        return Err(Error::DepthRegression { degree: max_degree + 1, depth: achieved.to_string() });
    }
    let exact_checked = max_degree <= 4 && word.literal_length() <= EXACT_CHECK_LETTERS;
    if exact_checked {
        let r = &gamma.matrix().inverse()? * &eval(&word);
        achieved = r.depth();
        if !achieved.is_at_least(max_degree + 1) {
            return Err(Error::DepthRegression { degree: max_degree + 1, depth: achieved.to_string() });
        }
    }
    Ok(ApproximationResult { word, achieved_depth: achieved, steps, exact_checked })
}
