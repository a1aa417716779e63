//! Braid words as shared-subterm DAGs.
//!
//! A letter is a nonzero `i32`: `+i` is `sigma_i` and `-i` its inverse.
//! Words act left to right, so the permutation of `uv` is "first `u`, then
//! `v`", and the Burau image of `uv` is `beta(u) * beta(v)`.
//!
//! The pure braid generator is
//! `A_ij = (sigma_{j-1} ... sigma_{i+1}) sigma_i^2 (sigma_{i+1}^-1 ... sigma_{j-1}^-1)`.

mod eval;
mod parse;
mod perm;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use eval::{Evaluator, PermRep, Representation};
pub use parse::{Bindings, ALPHA, DELTA};
pub use perm::Perm;

use crate::error::{Error, Result};

pub type Letter = i32;

#[derive(Debug)]
pub(crate) enum Node {
    Letters(Vec<Letter>),
    /// `A_ij` with its letters cached; printed by name.
    Pure { i: usize, j: usize, letters: Vec<Letter> },
    Concat(Vec<Arc<Node>>),
    Inverse(Arc<Node>),
    Power(Arc<Node>, i64),
    Commutator(Arc<Node>, Arc<Node>),
    /// A subword printed by name.
    Named(Arc<str>, Arc<Node>),
}

/// An element of the braid group `B_n`, held as an expression DAG.
///
/// Cloning is cheap and shares structure.
#[derive(Clone)]
pub struct BraidWord {
    n: usize,
    root: Arc<Node>,
}

fn check_letters(n: usize, letters: &[Letter]) -> Result<()> {
    for &l in letters {
        let i = l.unsigned_abs() as usize;
        if l == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, strands: n });
        }
    }
    Ok(())
}

impl BraidWord {
    fn wrap(n: usize, node: Node) -> Self {
        Self { n, root: Arc::new(node) }
    }

    pub(crate) fn root(&self) -> &Arc<Node> {
        &self.root
    }

    pub fn identity(n: usize) -> Self {
        Self::wrap(n, Node::Letters(Vec::new()))
    }

    pub fn from_letters(n: usize, letters: Vec<Letter>) -> Result<Self> {
        check_letters(n, &letters)?;
        Ok(Self::wrap(n, Node::Letters(letters)))
    }

    /// `sigma_i` or its inverse.
    pub fn generator(n: usize, i: usize, inverse: bool) -> Result<Self> {
        let l = i as Letter;
        Self::from_letters(n, vec![if inverse { -l } else { l }])
    }

    /// The pure braid generator `A_ij`, `1 <= i < j <= n`.
    pub fn pure(n: usize, i: usize, j: usize) -> Result<Self> {
        if i < 1 || i >= j || j > n {
            return Err(Error::Invalid(format!("A_{i},{j} needs 1 <= i < j <= {n}")));
        }
        let up: Vec<Letter> = (i + 1..j).rev().map(|k| k as Letter).collect();
        let mut letters = up.clone();
        letters.extend([i as Letter, i as Letter]);
        letters.extend(up.iter().rev().map(|&k| -k));
        Ok(Self::wrap(n, Node::Pure { i, j, letters }))
    }

    /// A positive word whose permutation is `perm`.
    pub fn perm_lift(perm: &Perm) -> Self {
        let letters = perm.adjacent_factorization().into_iter().map(|c| c as Letter + 1).collect();
        Self::wrap(perm.len(), Node::Letters(letters))
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    fn same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        Ok(Self::wrap(self.n, Node::Concat(vec![self.root.clone(), other.root.clone()])))
    }

    /// The product of `words` in order; the empty product is the identity.
    pub fn product(n: usize, words: &[BraidWord]) -> Result<Self> {
        for w in words {
            if w.n != n {
                return Err(Error::StrandMismatch(n, w.n));
            }
        }
        match words {
            [] => Ok(Self::identity(n)),
            [w] => Ok(w.clone()),
            _ => Ok(Self::wrap(n, Node::Concat(words.iter().map(|w| w.root.clone()).collect()))),
        }
    }

    pub fn inverse(&self) -> Self {
        Self::wrap(self.n, Node::Inverse(self.root.clone()))
    }

    pub fn power(&self, k: i64) -> Self {
        match k {
            0 => Self::identity(self.n),
            1 => self.clone(),
            -1 => self.inverse(),
            _ => Self::wrap(self.n, Node::Power(self.root.clone(), k)),
        }
    }

    /// `[self, other] = self * other * self^-1 * other^-1`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        Ok(Self::wrap(self.n, Node::Commutator(self.root.clone(), other.root.clone())))
    }

    /// The same element, printed as `name`. The name must be bound to this
    /// word wherever the printed form is parsed again.
    pub fn named(&self, name: &str) -> Self {
        Self::wrap(self.n, Node::Named(name.into(), self.root.clone()))
    }

    /// `p * self * p^-1`.
    pub fn conjugate_by(&self, p: &Self) -> Result<Self> {
        self.same_n(p)?;
        Ok(Self::wrap(
            self.n,
            Node::Concat(vec![p.root.clone(), self.root.clone(), Arc::new(Node::Inverse(p.root.clone()))]),
        ))
    }

    pub fn evaluate<R: Representation>(&self, rep: &R) -> R::Elem {
        Evaluator::new(rep).eval(self)
    }

    /// The image in `S_n`.
    pub fn permutation(&self) -> Perm {
        self.evaluate(&PermRep::new(self.n))
    }

    /// Number of letters before free reduction.
    pub fn literal_length(&self) -> u128 {
        fn go(node: &Arc<Node>, memo: &mut HashMap<*const Node, u128>) -> u128 {
            let key = Arc::as_ptr(node);
            if let Some(&l) = memo.get(&key) {
                return l;
            }
            let l = match &**node {
                Node::Letters(ls) | Node::Pure { letters: ls, .. } => ls.len() as u128,
                Node::Concat(cs) => cs.iter().map(|c| go(c, memo)).fold(0u128, u128::saturating_add),
                Node::Inverse(c) | Node::Named(_, c) => go(c, memo),
                Node::Power(c, k) => go(c, memo).saturating_mul(k.unsigned_abs() as u128),
                Node::Commutator(a, b) => go(a, memo).saturating_add(go(b, memo)).saturating_mul(2),
            };
            memo.insert(key, l);
            l
        }
        go(&self.root, &mut HashMap::new())
    }

    /// Number of distinct DAG nodes.
    pub fn dag_size(&self) -> usize {
        fn go(node: &Arc<Node>, seen: &mut std::collections::HashSet<*const Node>) {
            if !seen.insert(Arc::as_ptr(node)) {
                return;
            }
            match &**node {
                Node::Letters(_) | Node::Pure { .. } => {}
                Node::Concat(cs) => cs.iter().for_each(|c| go(c, seen)),
                Node::Inverse(c) | Node::Power(c, _) | Node::Named(_, c) => go(c, seen),
                Node::Commutator(a, b) => {
                    go(a, seen);
                    go(b, seen);
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        go(&self.root, &mut seen);
        seen.len()
    }

    /// The freely reduced letter sequence, refusing to expand past `cap`
    /// letters.
    pub fn flatten(&self, cap: usize) -> Result<Vec<Letter>> {
        let length = self.literal_length();
        if length > cap as u128 {
            return Err(Error::FlattenCap { length, cap });
        }
        let mut out: Vec<Letter> = Vec::with_capacity(length as usize);
        push_letters(&self.root, false, &mut out);
        Ok(out)
    }

    /// The freely reduced word as a flat literal.
    pub fn flattened(&self, cap: usize) -> Result<Self> {
        Ok(Self::wrap(self.n, Node::Letters(self.flatten(cap)?)))
    }
}

fn push_letter(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

fn push_letters(node: &Node, inverted: bool, out: &mut Vec<Letter>) {
    match node {
        Node::Letters(ls) | Node::Pure { letters: ls, .. } => {
            if inverted {
                ls.iter().rev().for_each(|&l| push_letter(out, -l));
            } else {
                ls.iter().for_each(|&l| push_letter(out, l));
            }
        }
        Node::Concat(cs) => {
            if inverted {
                cs.iter().rev().for_each(|c| push_letters(c, true, out));
            } else {
                cs.iter().for_each(|c| push_letters(c, false, out));
            }
        }
        Node::Inverse(c) => push_letters(c, !inverted, out),
        Node::Named(_, c) => push_letters(c, inverted, out),
        Node::Power(c, k) => {
            let inv = inverted ^ (*k < 0);
            for _ in 0..k.unsigned_abs() {
                push_letters(c, inv, out);
            }
        }
        Node::Commutator(a, b) => {
            // [a,b]^-1 = [b,a]
            let (x, y) = if inverted { (b, a) } else { (a, b) };
            push_letters(x, false, out);
            push_letters(y, false, out);
            push_letters(x, true, out);
            push_letters(y, true, out);
        }
    }
}

fn fmt_index(f: &mut fmt::Formatter<'_>, i: usize) -> fmt::Result {
    if i < 10 {
        write!(f, "{i}")
    } else {
        write!(f, "({i})")
    }
}

fn fmt_letter(f: &mut fmt::Formatter<'_>, l: Letter) -> fmt::Result {
    write!(f, "{}", if l > 0 { 's' } else { 'S' })?;
    fmt_index(f, l.unsigned_abs() as usize)
}

/// Whether a node prints as a single term without parentheses.
fn is_atomic(node: &Node) -> bool {
    match node {
        Node::Letters(ls) => ls.len() == 1,
        Node::Pure { .. } | Node::Commutator(..) | Node::Named(..) => true,
        _ => false,
    }
}

fn fmt_node(f: &mut fmt::Formatter<'_>, node: &Node) -> fmt::Result {
    match node {
        Node::Letters(ls) => {
            for (k, &l) in ls.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                fmt_letter(f, l)?;
            }
            Ok(())
        }
        Node::Pure { i, j, .. } => {
            write!(f, "A")?;
            fmt_index(f, *i)?;
            fmt_index(f, *j)
        }
        Node::Concat(cs) => {
            for (k, c) in cs.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                fmt_term(f, c)?;
            }
            Ok(())
        }
        Node::Inverse(c) => {
            fmt_base(f, c)?;
            write!(f, "^-1")
        }
        Node::Power(c, k) => {
            fmt_base(f, c)?;
            write!(f, "^{k}")
        }
        Node::Named(name, _) => write!(f, "{name}"),
        Node::Commutator(a, b) => {
            write!(f, "[")?;
            fmt_node(f, a)?;
            write!(f, ", ")?;
            fmt_node(f, b)?;
            write!(f, "]")
        }
    }
}

/// A node in a juxtaposition: letters and powers can stand bare, while
/// nested products keep their parentheses so the structure round-trips.
fn fmt_term(f: &mut fmt::Formatter<'_>, node: &Node) -> fmt::Result {
    match node {
        Node::Letters(ls) if !ls.is_empty() => fmt_node(f, node),
        Node::Inverse(_) | Node::Power(..) => fmt_node(f, node),
        _ => fmt_base(f, node),
    }
}

fn fmt_base(f: &mut fmt::Formatter<'_>, node: &Node) -> fmt::Result {
    if is_atomic(node) {
        fmt_node(f, node)
    } else {
        write!(f, "(")?;
        fmt_node(f, node)?;
        write!(f, ")")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_node(f, &self.root)
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord(n={}, {})", self.n, self)
    }
}
