use std::collections::HashMap;
use std::sync::Arc;

use super::{BraidWord, Letter, Node, Perm};

/// A target for word evaluation: a monoid with a fast right action of the
/// letters.
pub trait Representation {
    type Elem: Clone;

    fn identity(&self) -> Self::Elem;

    /// `acc <- acc * image(letter)`.
    fn apply_letter(&self, acc: &mut Self::Elem, letter: Letter);

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// Evaluates DAG words with memoization on shared nodes.
///
/// Inverses are pushed down symbolically, so only positive-power products
/// and letters ever reach the representation.
pub struct Evaluator<'r, R: Representation> {
    rep: &'r R,
    memo: Memo<R::Elem>,
}

/// Keyed by node address and inversion; the Arc keeps each key's
/// allocation alive.
type Memo<E> = HashMap<(*const Node, bool), (Arc<Node>, E)>;

impl<'r, R: Representation> Evaluator<'r, R> {
    pub fn new(rep: &'r R) -> Self {
        Self { rep, memo: HashMap::new() }
    }

    pub fn eval(&mut self, word: &BraidWord) -> R::Elem {
        self.eval_node(word.root(), false)
    }

    pub fn eval_inverse(&mut self, word: &BraidWord) -> R::Elem {
        self.eval_node(word.root(), true)
    }

    fn eval_node(&mut self, node: &Arc<Node>, inverted: bool) -> R::Elem {
        let key = (Arc::as_ptr(node), inverted);
        if let Some((_, e)) = self.memo.get(&key) {
            return e.clone();
        }
        let value = match &**node {
            Node::Letters(ls) | Node::Pure { letters: ls, .. } => {
                let mut acc = self.rep.identity();
                if inverted {
                    ls.iter().rev().for_each(|&l| self.rep.apply_letter(&mut acc, -l));
                } else {
                    ls.iter().for_each(|&l| self.rep.apply_letter(&mut acc, l));
                }
                acc
            }
            Node::Concat(cs) => {
                let order: Vec<&Arc<Node>> = if inverted { cs.iter().rev().collect() } else { cs.iter().collect() };
                let mut acc: Option<R::Elem> = None;
                for c in order {
                    acc = Some(self.times(acc, c, inverted));
                }
                acc.unwrap_or_else(|| self.rep.identity())
            }
            Node::Inverse(c) => self.eval_node(c, !inverted),
            Node::Named(_, c) => self.eval_node(c, inverted),
            Node::Power(c, k) => {
                let base = self.eval_node(c, inverted ^ (*k < 0));
                self.pow(base, k.unsigned_abs())
            }
            Node::Commutator(a, b) => {
                let (x, y) = if inverted { (b, a) } else { (a, b) };
                let xy = {
                    let ex = self.eval_node(x, false);
                    let ey = self.eval_node(y, false);
                    self.rep.mul(&ex, &ey)
                };
                let yx_inv = {
                    let ex = self.eval_node(x, true);
                    let ey = self.eval_node(y, true);
                    self.rep.mul(&ex, &ey)
                };
                self.rep.mul(&xy, &yx_inv)
            }
        };
        self.memo.insert(key, (node.clone(), value.clone()));
        value
    }

    /// Multiplies `acc` by a child; short letter runs are applied as
    /// letters, which is cheaper than a full product.
    fn times(&mut self, acc: Option<R::Elem>, child: &Arc<Node>, inverted: bool) -> R::Elem {
        match (&**child, acc) {
            (Node::Letters(ls) | Node::Pure { letters: ls, .. }, Some(mut acc)) => {
                if inverted {
                    ls.iter().rev().for_each(|&l| self.rep.apply_letter(&mut acc, -l));
                } else {
                    ls.iter().for_each(|&l| self.rep.apply_letter(&mut acc, l));
                }
                acc
            }
            (_, None) => self.eval_node(child, inverted),
            (_, Some(acc)) => {
                let c = self.eval_node(child, inverted);
                self.rep.mul(&acc, &c)
            }
        }
    }

    fn pow(&self, base: R::Elem, mut k: u64) -> R::Elem {
        let mut result: Option<R::Elem> = None;
        let mut sq = base;
        loop {
            if k & 1 == 1 {
                result = Some(match result {
                    None => sq.clone(),
                    Some(r) => self.rep.mul(&r, &sq),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            sq = self.rep.mul(&sq, &sq);
        }
        result.unwrap_or_else(|| self.rep.identity())
    }
}

/// The permutation representation `B_n -> S_n`.
pub struct PermRep {
    n: usize,
}

impl PermRep {
    pub fn new(n: usize) -> Self {
        Self { n }
    }
}

impl Representation for PermRep {
    type Elem = Perm;

    fn identity(&self) -> Perm {
        Perm::identity(self.n)
    }

    fn apply_letter(&self, acc: &mut Perm, letter: Letter) {
        acc.swap_values(letter.unsigned_abs() as usize - 1);
    }

    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.then(b)
    }
}
