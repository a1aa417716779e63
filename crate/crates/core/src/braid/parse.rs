//! Surface syntax for braid words.
//!
//! ```text
//! word := term*
//! term := atom ("^" int)?
//! atom := "s" idx | "S" idx | "A" idx idx | "[" word "," word "]" | "(" word ")" | NAME
//! idx  := digit | "(" digits ")"
//! ```

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{check_letters, BraidWord, Letter, Node};
use crate::error::{Error, Result};

/// The depth-3 element of `B_5`.
pub const ALPHA: &str = "[A13,A23][A24,A14][A14,A34][A34,A24]";

/// The depth-5 element of `B_5`, written in terms of `ALPHA`.
pub const DELTA: &str = "[A25^2 A45, [ALPHA, s4]]";

#[derive(Clone, Debug)]
enum Definition {
    Text(String),
    Word(BraidWord),
}

/// Named word definitions, resolved lazily and recursively.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    defs: BTreeMap<String, Definition>,
}

impl Bindings {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `ALPHA` and `DELTA`.
    pub fn builtin() -> Self {
        let mut b = Self::default();
        b.insert("ALPHA", ALPHA);
        b.insert("DELTA", DELTA);
        b
    }

    pub fn insert(&mut self, name: &str, definition: &str) {
        self.defs.insert(name.to_string(), Definition::Text(definition.to_string()));
    }

    /// Binds `name` to an already built word, which then prints as `name`.
    pub fn insert_word(&mut self, name: &str, word: BraidWord) {
        self.defs.insert(name.to_string(), Definition::Word(word));
    }

    /// Parses a `NAME=word` pair.
    pub fn insert_assignment(&mut self, assignment: &str) -> Result<()> {
        let (name, def) = assignment
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("binding `{assignment}` is not NAME=word")))?;
        let name = name.trim();
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            && !is_generator_prefix(name.as_bytes());
        if !valid {
            return Err(Error::Invalid(format!("`{name}` is not a valid binding name")));
        }
        self.insert(name, def);
        Ok(())
    }

    /// The textual definition of `name`, if it has one.
    pub fn get(&self, name: &str) -> Option<&str> {
        match self.defs.get(name)? {
            Definition::Text(t) => Some(t),
            Definition::Word(_) => None,
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.defs.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.defs.keys().map(String::as_str)
    }

    pub fn parse(&self, text: &str, n: usize) -> Result<BraidWord> {
        let mut cache = HashMap::new();
        let root = Parser::new(text, n, self, &mut cache, Vec::new()).parse_all()?;
        Ok(BraidWord { n, root })
    }
}

impl BraidWord {
    /// Parses with the built-in bindings.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        Bindings::builtin().parse(text, n)
    }
}

/// `s1`, `S(12)` and `A13` begin with a letter followed by an index.
fn is_generator_prefix(rest: &[u8]) -> bool {
    matches!(rest.first(), Some(b's' | b'S' | b'A'))
        && matches!(rest.get(1), Some(c) if c.is_ascii_digit() || *c == b'(')
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
    bindings: &'a Bindings,
    cache: &'a mut HashMap<String, Arc<Node>>,
    active: Vec<String>,
}

impl<'a> Parser<'a> {
    fn new(
        text: &'a str,
        n: usize,
        bindings: &'a Bindings,
        cache: &'a mut HashMap<String, Arc<Node>>,
        active: Vec<String>,
    ) -> Self {
        Self { src: text.as_bytes(), pos: 0, n, bindings, cache, active }
    }

    fn error(&self, expected: &[&str]) -> Error {
        Error::Parse { position: self.pos, expected: expected.iter().map(|s| s.to_string()).collect() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&[&(c as char).to_string()]))
        }
    }

    fn parse_all(mut self) -> Result<Arc<Node>> {
        let w = self.word()?;
        if self.peek().is_some() {
            return Err(self.error(&["s", "S", "A", "[", "(", "name", "end of input"]));
        }
        Ok(w)
    }

    fn word(&mut self) -> Result<Arc<Node>> {
        let mut terms: Vec<Arc<Node>> = Vec::new();
        let mut run: Vec<Letter> = Vec::new();
        loop {
            match self.peek() {
                None | Some(b')' | b']' | b',') => break,
                _ => {}
            }
            match self.term()? {
                Term::Letter(l) => run.push(l),
                Term::Node(node) => {
                    if !run.is_empty() {
                        terms.push(Arc::new(Node::Letters(std::mem::take(&mut run))));
                    }
                    terms.push(node);
                }
            }
        }
        if !run.is_empty() {
            terms.push(Arc::new(Node::Letters(run)));
        }
        Ok(match terms.len() {
            0 => Arc::new(Node::Letters(Vec::new())),
            1 => terms.pop().expect("one term"),
            _ => Arc::new(Node::Concat(terms)),
        })
    }

    fn term(&mut self) -> Result<Term> {
        let atom = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(atom);
        }
        self.pos += 1;
        let k = self.int()?;
        let node = atom.into_node();
        Ok(Term::Node(match k {
            1 => node,
            -1 => Arc::new(Node::Inverse(node)),
            0 => Arc::new(Node::Letters(Vec::new())),
            _ => Arc::new(Node::Power(node, k)),
        }))
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.error(&["integer"]));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::Parse { position: start, expected: vec!["integer in range".into()] })
    }

    fn index(&mut self) -> Result<usize> {
        let start = self.pos;
        let value = match self.src.get(self.pos) {
            Some(c) if c.is_ascii_digit() => {
                self.pos += 1;
                (c - b'0') as usize
            }
            Some(b'(') => {
                self.pos += 1;
                let digits = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                if self.pos == digits {
                    return Err(self.error(&["digits"]));
                }
                let v = std::str::from_utf8(&self.src[digits..self.pos])
                    .expect("ascii")
                    .parse()
                    .map_err(|_| Error::Parse { position: digits, expected: vec!["index in range".into()] })?;
                if self.src.get(self.pos) != Some(&b')') {
                    return Err(self.error(&[")"]));
                }
                self.pos += 1;
                v
            }
            _ => return Err(Error::Parse { position: start, expected: vec!["digit".into(), "(".into()] }),
        };
        Ok(value)
    }

    fn atom(&mut self) -> Result<Term> {
        let Some(c) = self.peek() else {
            return Err(self.error(&["s", "S", "A", "[", "(", "name"]));
        };
        if is_generator_prefix(&self.src[self.pos..]) {
            self.pos += 1;
            let i = self.index()?;
            return match c {
                b's' | b'S' => {
                    let l = if c == b's' { i as Letter } else { -(i as Letter) };
                    check_letters(self.n, &[l])?;
                    Ok(Term::Letter(l))
                }
                _ => {
                    let j = self.index()?;
                    if i == 0 || j > self.n || i >= j {
                        return Err(Error::IndexOutOfRange { index: if i == 0 { i } else { j }, strands: self.n });
                    }
                    Ok(Term::Node(BraidWord::pure(self.n, i, j)?.root))
                }
            };
        }
        match c {
            b'[' => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(b',')?;
                let b = self.word()?;
                self.expect(b']')?;
                Ok(Term::Node(Arc::new(Node::Commutator(a, b))))
            }
            b'(' => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(Term::Node(w))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").to_string();
                Ok(Term::Node(self.resolve(&name)?))
            }
            _ => Err(self.error(&["s", "S", "A", "[", "(", "name"])),
        }
    }

    fn resolve(&mut self, name: &str) -> Result<Arc<Node>> {
        if let Some(node) = self.cache.get(name) {
            return Ok(node.clone());
        }
        let def = match self.bindings.defs.get(name) {
            None => return Err(Error::UnknownName(name.to_string())),
            Some(Definition::Word(w)) => {
                if w.n != self.n {
                    return Err(Error::StrandMismatch(w.n, self.n));
                }
                let node = match &*w.root {
                    Node::Named(given, _) if &**given == name => w.root.clone(),
                    _ => Arc::new(Node::Named(name.into(), w.root.clone())),
                };
                self.cache.insert(name.to_string(), node.clone());
                return Ok(node);
            }
            Some(Definition::Text(t)) => t.as_str(),
        };
        if self.active.iter().any(|a| a == name) {
            return Err(Error::Invalid(format!("binding `{name}` refers to itself")));
        }
        let mut active = self.active.clone();
        active.push(name.to_string());
        let node = Parser::new(def, self.n, self.bindings, self.cache, active)
            .parse_all()
            .map_err(|e| match e {
                Error::Parse { .. } => Error::Invalid(format!("in binding `{name}`: {e}")),
                other => other,
            })?;
        self.cache.insert(name.to_string(), node.clone());
        Ok(node)
    }
}

enum Term {
    Letter(Letter),
    Node(Arc<Node>),
}

impl Term {
    fn into_node(self) -> Arc<Node> {
        match self {
            Term::Letter(l) => Arc::new(Node::Letters(vec![l])),
            Term::Node(n) => n,
        }
    }
}
