//! Finite generating sets and decompositions into them.
//!
//! Generator names:
//!
//! * `x_i` for `i = 0..n-1`, the generators of `F_n`;
//! * `e_k`, the element `(T, Id, Id, T(n))` for the `k`-th tree `T` in
//!   [`Tree::enumerate`] with as many carets as `T(n)`;
//! * `h_i = (T(n), σ_i, Id, T(n))` for `i = 1..m(n)-1`;
//! * `g_s = (R, Id, {s, Id, …}, R)` for every generator `s` of `H`.

pub mod decompose;
pub mod fgroup;
pub mod rewrite;
pub mod parabolic;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::braid::{BraidError, BraidWord};
use crate::element::{Element, ElementError};
use crate::subgroup::{LabelWord, SubgroupSpec};
use crate::trees::{base_leaf_count, Forest, Tree};

pub use decompose::{decompose, decompose_step};
pub use fgroup::decompose_f;
pub use rewrite::{rewrite_h_large, rewrite_h_parabolic, rewrite_h_small, to_bv_set, to_minimal_set, Rewriting, Target};
pub use parabolic::{check_parabolic_rewrites, parabolic_table, ParabolicTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("unknown generator `{0}`")]
    Unknown(String),
    #[error("depth {0} is not above the base depth {1}")]
    Depth(usize, usize),
    #[error("index {0} out of range: {1}")]
    Range(usize, String),
    #[error("subgroup lacks generator {0}")]
    Subgroup(String),
    #[error("only single-rooted elements are decomposed, got {0} roots")]
    Roots(usize),
    #[error("element uses subgroup {0}, table uses {1}")]
    Spec(String, String),
    #[error("decomposition failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    X(usize),
    E(usize),
    H(usize),
    G(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenLetter {
    pub gen: Gen,
    pub inverse: bool,
}

impl GenLetter {
    pub fn new(gen: Gen) -> Self {
        GenLetter { gen, inverse: false }
    }

    pub fn inv(self) -> Self {
        GenLetter { gen: self.gen, inverse: !self.inverse }
    }
}

/// A freely reduced word in named generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GeneratorWord(Vec<GenLetter>);

impl GeneratorWord {
    pub fn empty() -> Self {
        GeneratorWord(Vec::new())
    }

    pub fn single(gen: Gen) -> Self {
        GeneratorWord(vec![GenLetter::new(gen)])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = GenLetter>) -> Self {
        let mut w = GeneratorWord::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn push(&mut self, l: GenLetter) {
        if self.0.last() == Some(&l.inv()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn append(&mut self, other: &GeneratorWord) {
        for &l in &other.0 {
            self.push(l);
        }
    }

    pub fn then(mut self, other: &GeneratorWord) -> Self {
        self.append(other);
        self
    }

    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn letters(&self) -> &[GenLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Distinct generators used.
    pub fn support(&self) -> Vec<Gen> {
        let mut v: Vec<Gen> = self.0.iter().map(|l| l.gen).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Concatenates words, reducing freely.
#[macro_export]
macro_rules! gword {
    ($($w:expr),* $(,)?) => {{
        let mut out = $crate::generators::GeneratorWord::empty();
        $( out.append(&$w); )*
        out
    }};
}

/// The named generators of `BV_n(H)` for one `n` and `H`.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    spec: Arc<SubgroupSpec>,
    base: Tree,
    e_trees: Vec<Tree>,
    e_index: HashMap<Tree, usize>,
    h_reduced: Vec<Element>,
    g_reduced: Vec<Element>,
}

impl GeneratorTable {
    pub fn standard(spec: Arc<SubgroupSpec>) -> GeneratorTable {
        let n = spec.arity();
        let base = Tree::base(n);
        let e_trees = Tree::enumerate(n, base.depth());
        let e_index = e_trees.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
        let mut t = GeneratorTable { spec, base, e_trees, e_index, h_reduced: Vec::new(), g_reduced: Vec::new() };
        t.h_reduced = (1..t.m()).map(|i| t.h(i).reduce()).collect();
        t.g_reduced = (0..t.spec.generator_count()).map(|k| t.g(k).reduce()).collect();
        t
    }

    pub fn spec(&self) -> &Arc<SubgroupSpec> {
        &self.spec
    }

    pub fn arity(&self) -> usize {
        self.spec.arity()
    }

    /// `m(n)`, the leaf count of `T(n)`.
    pub fn m(&self) -> usize {
        base_leaf_count(self.arity())
    }

    /// `T(n)`.
    pub fn base(&self) -> &Tree {
        &self.base
    }

    /// Depth of `T(n)`.
    pub fn base_depth(&self) -> usize {
        self.base.depth()
    }

    pub fn e_trees(&self) -> &[Tree] {
        &self.e_trees
    }

    pub fn e_index(&self, t: &Tree) -> Option<usize> {
        self.e_index.get(t).copied()
    }

    fn pair(&self, domain: &Tree, braid: BraidWord, labels: Vec<LabelWord>, range: &Tree) -> Element {
        Element::make(self.spec.clone(), Forest::from(domain.clone()), braid, labels, Forest::from(range.clone()))
            .expect("table entries are valid")
    }

    /// `(domain, β, Id, range)` on single trees.
    pub fn braid_pair(&self, domain: &Tree, braid: BraidWord, range: &Tree) -> Element {
        let l = domain.leaf_count();
        self.pair(domain, braid, vec![LabelWord::empty(); l], range)
    }

    /// `(domain, Id, Id, range)`.
    pub fn tree_pair(&self, domain: &Tree, range: &Tree) -> Element {
        self.braid_pair(domain, BraidWord::identity(domain.leaf_count()), range)
    }

    pub fn x(&self, i: usize) -> Element {
        let n = self.arity();
        let r = Tree::caret(n);
        let last = (n - 1) as u8;
        if i + 1 < n {
            self.tree_pair(&r.expand(&[last]).unwrap(), &r.expand(&[i as u8]).unwrap())
        } else {
            let top = r.expand(&[last]).unwrap();
            self.tree_pair(&top.expand(&[last, last]).unwrap(), &top.expand(&[last, 0]).unwrap())
        }
    }

    pub fn e(&self, k: usize) -> Element {
        self.tree_pair(&self.e_trees[k], &self.base)
    }

    pub fn h(&self, i: usize) -> Element {
        self.braid_pair(&self.base, BraidWord::sigma(self.m(), i as i32), &self.base)
    }

    /// `h_{m(n)-1}` as a single crossing on a tree of depth 2.
    pub fn last_h(&self) -> Element {
        let n = self.arity();
        let r = if n == 2 { Tree::caret(2).expand(&[1]).unwrap() } else { Tree::caret(n).expand(&[2]).unwrap() };
        self.braid_pair(&r, BraidWord::sigma(2 * n - 1, (2 * n - 2) as i32), &r)
    }

    pub fn g(&self, k: usize) -> Element {
        let n = self.arity();
        let mut labels = vec![LabelWord::empty(); n];
        labels[0] = self.spec.generator(self.spec.generator_name(k)).expect("index in range");
        self.pair(&Tree::caret(n), BraidWord::identity(n), labels, &Tree::caret(n))
    }

    pub fn element(&self, g: Gen) -> Element {
        match g {
            Gen::X(i) => self.x(i),
            Gen::E(k) => self.e(k),
            Gen::H(i) => self.h(i),
            Gen::G(k) => self.g(k),
        }
    }

    pub fn letter_element(&self, l: GenLetter) -> Element {
        let e = self.element(l.gen);
        if l.inverse {
            e.inverse()
        } else {
            e
        }
    }

    /// Left-to-right product, reduced after every step.
    pub fn evaluate(&self, w: &GeneratorWord) -> Element {
        let mut acc = Element::identity(self.spec.clone(), 1);
        let mut cache: HashMap<GenLetter, Element> = HashMap::new();
        for &l in w.letters() {
            let e = cache.entry(l).or_insert_with(|| self.letter_element(l));
            acc = acc.mul(e).expect("same subgroup and roots");
        }
        acc
    }

    /// The generator or inverse generator equal to `v`, among `h_i` and `g_s`.
    pub fn match_generator(&self, v: &Element) -> Option<GenLetter> {
        let r = v.reduce();
        let find = |r: &Element| {
            if let Some(i) = self.h_reduced.iter().position(|h| h.same_reduced(r)) {
                return Some(Gen::H(i + 1));
            }
            self.g_reduced.iter().position(|g| g.same_reduced(r)).map(Gen::G)
        };
        if let Some(g) = find(&r) {
            return Some(GenLetter::new(g));
        }
        find(&r.inverse().reduce()).map(|g| GenLetter::new(g).inv())
    }

    pub fn name(&self, g: Gen) -> String {
        match g {
            Gen::X(i) => format!("x_{i}"),
            Gen::E(k) => format!("e_{k}"),
            Gen::H(i) => format!("h_{i}"),
            Gen::G(k) => format!("g_{}", self.spec.generator_name(k)),
        }
    }

    /// Resolves a generator name.
    pub fn lookup(&self, name: &str) -> Result<Gen, GenError> {
        let unknown = || GenError::Unknown(name.into());
        let (kind, rest) = name.split_once('_').ok_or_else(unknown)?;
        let gen = match kind {
            "x" => Gen::X(rest.parse().map_err(|_| unknown())?),
            "e" => Gen::E(rest.parse().map_err(|_| unknown())?),
            "h" => Gen::H(rest.parse().map_err(|_| unknown())?),
            "g" => Gen::G(self.spec.index_of(rest).ok_or_else(unknown)?),
            _ => return Err(unknown()),
        };
        let ok = match gen {
            Gen::X(i) => i < self.arity(),
            Gen::E(k) => k < self.e_trees.len(),
            Gen::H(i) => i >= 1 && i < self.m(),
            Gen::G(_) => true,
        };
        if ok {
            Ok(gen)
        } else {
            Err(unknown())
        }
    }

    pub fn display<'a>(&'a self, w: &'a GeneratorWord) -> WordDisplay<'a> {
        WordDisplay { table: self, word: w }
    }

    /// The `2n`-element set for `H = B_n`: the `x_i`, `h_{m(n)-1}`
    /// and one `g` per Artin generator.
    pub fn minimal_set(&self) -> Vec<Gen> {
        let n = self.arity();
        let mut v: Vec<Gen> = (0..n).map(Gen::X).collect();
        v.push(Gen::H(self.m() - 1));
        v.extend((0..self.spec.generator_count()).map(Gen::G));
        v
    }

    /// The set `{x_i} ∪ {h_1..h_{n-1}} ∪ {h_{m(n)-1}} ∪ {g_s}`.
    pub fn bv_set(&self) -> Vec<Gen> {
        let n = self.arity();
        let mut v: Vec<Gen> = (0..n).map(Gen::X).collect();
        v.extend((1..n).map(Gen::H));
        v.push(Gen::H(self.m() - 1));
        v.extend((0..self.spec.generator_count()).map(Gen::G));
        v
    }
}

pub struct WordDisplay<'a> {
    table: &'a GeneratorTable,
    word: &'a GeneratorWord,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.word.letters().iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.table.name(l.gen))?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize) -> GeneratorTable {
        GeneratorTable::standard(Arc::new(SubgroupSpec::braid_group(n)))
    }

    #[test]
    fn sizes_and_depths() {
        for n in 2..=4 {
            let t = table(n);
            assert_eq!(t.minimal_set().len(), 2 * n);
            assert!(t.e(0).depth() == t.base_depth());
            assert!(t.h(1).depth() == t.base_depth());
            for i in 0..n {
                assert!(t.x(i).depth() <= t.base_depth());
            }
            assert_eq!(t.g(0).depth(), 1);
        }
        assert_eq!(table(2).e_trees().len(), 42);
    }

    #[test]
    fn last_h_on_small_trees() {
        for n in 2..=4 {
            let t = table(n);
            assert!(t.last_h().equals(&t.h(t.m() - 1)));
        }
    }

    #[test]
    fn evaluation_basics() {
        let t = table(2);
        assert!(t.evaluate(&GeneratorWord::empty()).is_identity());
        let w = GeneratorWord::from_letters([GenLetter::new(Gen::G(0)), GenLetter::new(Gen::G(0)).inv()]);
        assert!(w.is_empty());
        let hh = GeneratorWord(vec![GenLetter::new(Gen::H(1)), GenLetter::new(Gen::H(1))]);
        let m = t.m();
        let expect = t.braid_pair(t.base(), BraidWord::new(m, vec![1, 1]).unwrap(), t.base());
        assert!(t.evaluate(&hh).equals(&expect));
    }

    #[test]
    fn names_round_trip() {
        let t = table(3);
        for g in [Gen::X(2), Gen::E(5), Gen::H(8), Gen::G(1)] {
            assert_eq!(t.lookup(&t.name(g)).unwrap(), g);
        }
        assert!(t.lookup("h_9").is_err());
        assert!(t.lookup("x_3").is_err());
        assert_eq!(t.name(Gen::G(1)), "g_s2");
    }
}
