use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}`, stored zero-based.
///
/// Composition reads left to right: `p.then(q)` applies `p` first. This is
/// the order in which braid words act.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    /// From one-based images `[π(1), ..., π(n)]`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation of 1..={n}")));
            }
            seen[x - 1] = true;
            zero_based.push(x - 1);
        }
        Ok(Self { images: zero_based })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// The transposition of the one-based points `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        assert!(i >= 1 && i <= n && j >= 1 && j <= n, "transposition out of range");
        let mut p = Self::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// One-based image.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn image0(&self, i: usize) -> usize {
        self.images[i]
    }

    /// One-based images.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    /// `self` first, then `other`: `i -> other(self(i))`.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len(), "permutations of different degrees");
        Perm { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Perm { images: inv }
    }

    /// Right-multiplies in place by the adjacent transposition `(c+1 c+2)`.
    pub(crate) fn swap_values(&mut self, c: usize) {
        for x in &mut self.images {
            if *x == c {
                *x = c + 1;
            } else if *x == c + 1 {
                *x = c;
            }
        }
    }

    /// All permutations of `{1..n}` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm { images: cur.clone() });
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Disjoint cycles of length at least two, one-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Adjacent swaps `c` (zero-based, meaning `sigma_{c+1}`) whose product,
    /// read left to right, is `self`.
    pub(crate) fn adjacent_factorization(&self) -> Vec<usize> {
        // Swapping positions c, c+1 of the image array replaces π by
        // (c c+1).then(π); bubble-sorting to the identity therefore peels
        // transpositions off the left.
        let mut arr = self.images.clone();
        let mut swaps = Vec::new();
        let n = arr.len();
        for end in (1..n).rev() {
            for c in 0..end {
                if arr[c] > arr[c + 1] {
                    arr.swap(c, c + 1);
                    swaps.push(c);
                }
            }
        }
        swaps
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Perm::new(images)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Vec<usize> {
        p.images()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images())
    }
}
