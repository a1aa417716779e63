//! Bounded search for deep commutator products.
//!
//! Factors are iterated commutators of pool words; candidates are products
//! of up to `max_product_len` factors. Candidates are numbered breadth-first
//! by product length, then lexicographically by factor index, and that
//! numbering fixes both the budget cut-off and the output order.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::braid::{BraidWord, Perm};
use crate::burau::{eval, eval_trunc};
use crate::depth::Depth;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, TruncMatrix};
use crate::liealg::{conjugate_by_perm, GradedElement};

/// Words longer than this skip the exact re-check of a hit.
pub const EXACT_CHECK_LETTERS: u128 = 4_000;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub n: usize,
    pub target_depth: u32,
    pub pool: Vec<BraidWord>,
    /// Commutator nesting levels used as factors; level 0 is the pool.
    pub min_nesting: u32,
    pub max_nesting: u32,
    pub max_product_len: usize,
    /// Truncation precision; must exceed `target_depth`.
    pub precision: usize,
    /// Stop after this many distinct hits.
    pub result_cap: usize,
    /// Maximum number of candidates evaluated.
    pub budget: u64,
}

impl SearchConfig {
    pub fn new(n: usize, target_depth: u32, pool: Vec<BraidWord>) -> Self {
        Self {
            n,
            target_depth,
            pool,
            min_nesting: 1,
            max_nesting: 1,
            max_product_len: 1,
            precision: target_depth as usize + 1,
            result_cap: usize::MAX,
            budget: 1_000_000,
        }
    }

    /// The pool `{A_ij : i < j <= 4}`, commutators of distinct pool words,
    /// products of up to four of them, depth 3.
    pub fn alpha_reconstruction(n: usize) -> Result<Self> {
        let mut pool = Vec::new();
        for i in 1..=4 {
            for j in i + 1..=4 {
                pool.push(BraidWord::pure(n, i, j)?);
            }
        }
        Ok(Self { max_product_len: 4, ..Self::new(n, 3, pool) })
    }

    /// The pool `{alpha, sigma_4, A_25^2 A_45}`, commutators nested exactly
    /// twice, depth 5.
    pub fn delta_reconstruction(n: usize) -> Result<Self> {
        let bindings = crate::braid::Bindings::builtin();
        let pool = vec![
            bindings.parse("ALPHA", n)?,
            BraidWord::generator(n, 4, false)?,
            BraidWord::parse("A25^2 A45", n)?,
        ];
        Ok(Self { min_nesting: 2, max_nesting: 2, precision: 6, ..Self::new(n, 5, pool) })
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision as u32 <= self.target_depth {
            return Err(Error::Invalid(format!(
                "precision {} must exceed the target depth {}",
                self.precision, self.target_depth
            )));
        }
        if self.min_nesting > self.max_nesting || self.max_product_len == 0 || self.pool.is_empty() {
            return Err(Error::Invalid("empty search space".into()));
        }
        if let Some(w) = self.pool.iter().find(|w| w.strands() != self.n) {
            return Err(Error::StrandMismatch(w.strands(), self.n));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SearchHit {
    pub word: BraidWord,
    pub depth: u32,
    pub coefficient: GradedElement,
    /// Position in the enumeration.
    pub index: u64,
    /// Depth over the exact ring, when the word was short enough to check.
    pub exact_depth: Option<Depth>,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub hits: Vec<SearchHit>,
    pub evaluated: u64,
    /// The budget ran out before the search space did.
    pub budget_exhausted: bool,
}

/// Factor words for nesting levels `min..=max`, in a fixed order.
pub fn factors(cfg: &SearchConfig) -> Result<Vec<BraidWord>> {
    let mut levels: Vec<Vec<BraidWord>> = vec![cfg.pool.clone()];
    for level in 1..=cfg.max_nesting as usize {
        let below: Vec<(usize, &BraidWord)> =
            levels.iter().enumerate().flat_map(|(l, ws)| ws.iter().map(move |w| (l, w))).collect();
        let mut next = Vec::new();
        for (i, &(la, a)) in below.iter().enumerate() {
            for (j, &(lb, b)) in below.iter().enumerate() {
                if i != j && la.max(lb) == level - 1 {
                    next.push(a.commutator(b)?);
                }
            }
        }
        levels.push(next);
    }
    Ok(levels.into_iter().skip(cfg.min_nesting as usize).flatten().collect())
}

/// The lexicographically least of `±P C P^T` over all permutations `P`.
pub fn orbit_representative(c: &IntMatrix) -> Vec<num_bigint::BigInt> {
    let n = c.rows();
    let neg = -c;
    Perm::all(n)
        .iter()
        .flat_map(|p| [conjugate_by_perm(c, p).vectorize(), conjugate_by_perm(&neg, p).vectorize()])
        .min()
        .expect("at least one permutation")
}

fn count(f: u64, len: usize) -> u64 {
    (0..len).fold(1u64, |acc, _| acc.saturating_mul(f))
}

struct Found {
    index: u64,
    tuple: Vec<usize>,
    depth: u32,
    coefficient: IntMatrix,
}

/// Evaluates every candidate of one product length whose first factor is
/// `first`, in lexicographic order, stopping at global index `limit`.
fn scan(
    cfg: &SearchConfig,
    mats: &[TruncMatrix],
    len: usize,
    first: usize,
    offset: u64,
    limit: u64,
) -> Vec<Found> {
    let f = mats.len() as u64;
    let per_first = count(f, len - 1);
    let start = offset + first as u64 * per_first;
    let mut walk = Walk {
        cfg,
        mats,
        len,
        limit,
        tuple: vec![first],
        prefixes: vec![mats[first].clone()],
        index: start,
        out: Vec::new(),
    };
    walk.run();
    walk.out
}

/// Depth-first over the remaining places, mirroring lexicographic order.
struct Walk<'a> {
    cfg: &'a SearchConfig,
    mats: &'a [TruncMatrix],
    len: usize,
    limit: u64,
    tuple: Vec<usize>,
    prefixes: Vec<TruncMatrix>,
    index: u64,
    out: Vec<Found>,
}

impl Walk<'_> {
    fn run(&mut self) {
        if self.index >= self.limit {
            return;
        }
        if self.tuple.len() == self.len {
            let m = self.prefixes.last().expect("non-empty prefix");
            if let Depth::Finite(d) = m.depth() {
                if d >= self.cfg.target_depth {
                    let coefficient = m.coefficient(d as usize).clone();
                    self.out.push(Found { index: self.index, tuple: self.tuple.clone(), depth: d, coefficient });
                }
            }
            self.index += 1;
            return;
        }
        for i in 0..self.mats.len() {
            if self.index >= self.limit {
                return;
            }
            let next = self.prefixes.last().expect("non-empty prefix") * &self.mats[i];
            self.tuple.push(i);
            self.prefixes.push(next);
            self.run();
            self.tuple.pop();
            self.prefixes.pop();
        }
    }
}

/// Runs the search. Output is identical for a fixed configuration whatever
/// the thread count.
pub fn search_deep(cfg: &SearchConfig) -> Result<SearchReport> {
    cfg.validate()?;
    let words = factors(cfg)?;
    let mats: Vec<TruncMatrix> =
        crate::with_pool(|| words.par_iter().map(|w| eval_trunc(w, cfg.precision)).collect());
    let f = mats.len() as u64;
    let total: u64 = (1..=cfg.max_product_len).fold(0u64, |acc, l| acc.saturating_add(count(f, l)));
    let limit = total.min(cfg.budget);

    let mut seen: HashSet<Vec<num_bigint::BigInt>> = HashSet::new();
    let mut hits = Vec::new();
    let mut offset = 0u64;
    'lengths: for len in 1..=cfg.max_product_len {
        if offset >= limit {
            break;
        }
        let mut found: Vec<Found> = crate::with_pool(|| {
            (0..mats.len()).into_par_iter().flat_map_iter(|first| scan(cfg, &mats, len, first, offset, limit)).collect()
        });
        found.sort_by_key(|h| h.index);
        for h in found {
            let key = orbit_representative(&h.coefficient);
            if !seen.insert(key) {
                continue;
            }
            let factors: Vec<BraidWord> = h.tuple.iter().map(|&i| words[i].clone()).collect();
            let word = BraidWord::product(cfg.n, &factors)?;
            let coefficient = GradedElement::new(h.depth, h.coefficient)?;
            let exact_depth = (word.literal_length() <= EXACT_CHECK_LETTERS).then(|| eval(&word).depth());
            if let Some(d) = exact_depth {
                if d != Depth::Finite(h.depth) {
                    return Err(Error::Invalid(format!("hit {word} has exact depth {d}, truncated {}", h.depth)));
                }
            }
            hits.push(SearchHit { word, depth: h.depth, coefficient, index: h.index, exact_depth });
            if hits.len() >= cfg.result_cap {
                break 'lengths;
            }
        }
        offset = offset.saturating_add(count(f, len));
    }
    Ok(SearchReport { hits, evaluated: limit, budget_exhausted: cfg.budget < total })
}
