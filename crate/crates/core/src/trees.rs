//! Full finite n-ary trees and forests.
//!
//! Leaves are addressed by words over `{0, .., n-1}` read from the root.
//! Leaf order is always derived from the structure (left to right within a
//! tree, trees in order), so a forest never stores a separate leaf list.
//! Leaf positions used by the rest of the crate are 1-based, matching braid
//! strand positions.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("address {0} is not a leaf")]
    Address(LeafAddress),
    #[error("no final caret at {0}")]
    Caret(LeafAddress),
    #[error("arity mismatch: {0} vs {1}")]
    Arity(usize, usize),
    #[error("out of range: {0}")]
    Range(String),
}

/// A node of a full n-ary tree. The arity is carried by the owning
/// [`Tree`] or [`Forest`]; every caret has exactly that many children.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Leaf,
    Caret(Vec<Node>),
}

impl Node {
    pub fn caret(arity: usize) -> Node {
        Node::Caret(vec![Node::Leaf; arity])
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Node::Leaf)
    }

    pub fn carets(&self) -> usize {
        match self {
            Node::Leaf => 0,
            Node::Caret(ch) => 1 + ch.iter().map(Node::carets).sum::<usize>(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Node::Leaf => 1,
            Node::Caret(ch) => ch.iter().map(Node::leaf_count).sum(),
        }
    }

    fn collect_leaves(&self, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        match self {
            Node::Leaf => out.push(prefix.clone()),
            Node::Caret(ch) => {
                for (i, c) in ch.iter().enumerate() {
                    prefix.push(i as u8);
                    c.collect_leaves(prefix, out);
                    prefix.pop();
                }
            }
        }
    }

    /// Leaf words in left-to-right order.
    pub fn leaf_words(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        self.collect_leaves(&mut Vec::new(), &mut out);
        out
    }

    pub fn get(&self, word: &[u8]) -> Option<&Node> {
        let mut cur = self;
        for &d in word {
            match cur {
                Node::Caret(ch) => cur = ch.get(d as usize)?,
                Node::Leaf => return None,
            }
        }
        Some(cur)
    }

    fn get_mut(&mut self, word: &[u8]) -> Option<&mut Node> {
        let mut cur = self;
        for &d in word {
            match cur {
                Node::Caret(ch) => cur = ch.get_mut(d as usize)?,
                Node::Leaf => return None,
            }
        }
        Some(cur)
    }

    /// Words of the vertices whose children are all leaves.
    pub fn final_carets(&self) -> Vec<Vec<u8>> {
        fn walk(n: &Node, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if let Node::Caret(ch) = n {
                if ch.iter().all(Node::is_leaf) {
                    out.push(prefix.clone());
                    return;
                }
                for (i, c) in ch.iter().enumerate() {
                    prefix.push(i as u8);
                    walk(c, prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// True when `self` is a rooted subtree of `other` (i.e. `other` is an
    /// expansion of `self`).
    pub fn embeds_in(&self, other: &Node) -> bool {
        match (self, other) {
            (Node::Leaf, _) => true,
            (Node::Caret(_), Node::Leaf) => false,
            (Node::Caret(a), Node::Caret(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.embeds_in(y))
            }
        }
    }

    /// Smallest common expansion; `None` on arity mismatch.
    pub fn lcm(&self, other: &Node) -> Option<Node> {
        match (self, other) {
            (Node::Leaf, x) | (x, Node::Leaf) => Some(x.clone()),
            (Node::Caret(a), Node::Caret(b)) => {
                if a.len() != b.len() {
                    return None;
                }
                let ch = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| x.lcm(y))
                    .collect::<Option<Vec<_>>>()?;
                Some(Node::Caret(ch))
            }
        }
    }

    /// Writes the node compactly: `.` for a leaf, `(..)` for a caret.
    pub fn compact(&self) -> String {
        let mut s = String::new();
        fn go(n: &Node, s: &mut String) {
            match n {
                Node::Leaf => s.push('.'),
                Node::Caret(ch) => {
                    s.push('(');
                    for c in ch {
                        go(c, s);
                    }
                    s.push(')');
                }
            }
        }
        go(self, &mut s);
        s
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Leaf => f.write_str("."),
            Node::Caret(ch) => {
                f.write_str("(")?;
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Address of a leaf (or caret vertex) in a forest: a root index (0-based)
/// and a word over the alphabet `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeafAddress {
    pub root: usize,
    pub word: Vec<u8>,
}

impl LeafAddress {
    pub fn new(root: usize, word: impl Into<Vec<u8>>) -> Self {
        LeafAddress { root, word: word.into() }
    }

    /// Address in a single-rooted forest, given as a digit string like `"020"`.
    pub fn parse_digits(digits: &str) -> Self {
        let word = digits.bytes().map(|b| b - b'0').collect();
        LeafAddress { root: 0, word }
    }

    pub fn child(&self, i: usize) -> Self {
        let mut word = self.word.clone();
        word.push(i as u8);
        LeafAddress { root: self.root, word }
    }
}

impl fmt::Display for LeafAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root > 0 {
            write!(f, "{}:", self.root + 1)?;
        }
        if self.word.is_empty() {
            return f.write_str("ε");
        }
        for d in &self.word {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// A single full n-ary tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tree {
    pub arity: usize,
    pub root: Node,
}

impl Tree {
    pub fn trivial(arity: usize) -> Self {
        Tree { arity, root: Node::Leaf }
    }

    /// The depth-1 tree `R`.
    pub fn caret(arity: usize) -> Self {
        Tree { arity, root: Node::caret(arity) }
    }

    pub fn carets(&self) -> usize {
        self.root.carets()
    }

    /// Number of carets, called depth throughout the crate.
    pub fn depth(&self) -> usize {
        self.root.carets()
    }

    pub fn leaf_count(&self) -> usize {
        self.root.leaf_count()
    }

    pub fn leaves(&self) -> Vec<Vec<u8>> {
        self.root.leaf_words()
    }

    pub fn final_carets(&self) -> Vec<Vec<u8>> {
        self.root.final_carets()
    }

    /// `T[w]`: append a final caret at leaf `w`.
    pub fn expand(&self, word: &[u8]) -> Result<Tree, TreeError> {
        Ok(self.clone().into_forest().expand(&LeafAddress::new(0, word))?.into_tree())
    }

    /// `T[c]^{-1}`: remove the final caret whose vertex is `w`.
    pub fn reduce_caret(&self, word: &[u8]) -> Result<Tree, TreeError> {
        Ok(self
            .clone()
            .into_forest()
            .reduce_caret(&LeafAddress::new(0, word))?
            .into_tree())
    }

    pub fn embeds_in(&self, other: &Tree) -> bool {
        self.arity == other.arity && self.root.embeds_in(&other.root)
    }

    pub fn lcm(&self, other: &Tree) -> Result<Tree, TreeError> {
        if self.arity != other.arity {
            return Err(TreeError::Arity(self.arity, other.arity));
        }
        let root = self.root.lcm(&other.root).ok_or(TreeError::Arity(self.arity, other.arity))?;
        Ok(Tree { arity: self.arity, root })
    }

    pub fn into_forest(self) -> Forest {
        Forest { arity: self.arity, roots: vec![self.root] }
    }

    /// Spine tree `S_d`: `d` carets, each hung on the last leaf of the previous.
    pub fn spine(arity: usize, depth: usize) -> Result<Tree, TreeError> {
        if depth < 1 {
            return Err(TreeError::Range(format!("spine depth must be >= 1, got {depth}")));
        }
        if arity < 2 {
            return Err(TreeError::Range(format!("arity must be >= 2, got {arity}")));
        }
        let mut node = Node::caret(arity);
        for _ in 1..depth {
            let mut ch = vec![Node::Leaf; arity];
            ch[arity - 1] = node;
            node = Node::Caret(ch);
        }
        Ok(Tree { arity, root: node })
    }

    /// Mirror image of [`Tree::spine`]: every caret hangs on the first leaf.
    pub fn left_spine(arity: usize, depth: usize) -> Result<Tree, TreeError> {
        let mut t = Tree::spine(arity, depth)?;
        fn mirror(n: &mut Node) {
            if let Node::Caret(ch) = n {
                ch.reverse();
                ch.iter_mut().for_each(mirror);
            }
        }
        mirror(&mut t.root);
        Ok(t)
    }

    /// The base tree `T(n)`: `R[0][1][00][01]` for `n = 2`, `R[0][1][2]` otherwise.
    pub fn base(arity: usize) -> Tree {
        assert!(arity >= 2, "arity must be >= 2");
        let r = Tree::caret(arity);
        let t = r.expand(&[0]).and_then(|t| t.expand(&[1])).expect("leaves of R");
        if arity == 2 {
            t.expand(&[0, 0]).and_then(|t| t.expand(&[0, 1])).expect("leaves of R[0][1]")
        } else {
            t.expand(&[2]).expect("leaf 2 of R[0][1]")
        }
    }

    /// All trees of the given arity with exactly `carets` carets, in a fixed
    /// deterministic order.
    pub fn enumerate(arity: usize, carets: usize) -> Vec<Tree> {
        enumerate_nodes(arity, carets)
            .into_iter()
            .map(|root| Tree { arity, root })
            .collect()
    }
}

/// Leaf count `m(n)` of the base tree `T(n)`.
pub fn base_leaf_count(arity: usize) -> usize {
    if arity == 2 {
        6
    } else {
        4 * arity - 3
    }
}

fn enumerate_nodes(arity: usize, carets: usize) -> Vec<Node> {
    fn go(arity: usize, carets: usize, memo: &mut Vec<Option<Vec<Node>>>) -> Vec<Node> {
        if let Some(v) = &memo[carets] {
            return v.clone();
        }
        let out = if carets == 0 {
            vec![Node::Leaf]
        } else {
            // distribute carets-1 among arity children
            let mut acc: Vec<Vec<Node>> = vec![Vec::new()];
            let mut budgets: Vec<usize> = vec![carets - 1];
            for child in 0..arity {
                let mut next = Vec::new();
                let mut next_b = Vec::new();
                for (partial, &left) in acc.iter().zip(&budgets) {
                    let range: Vec<usize> = if child + 1 == arity { vec![left] } else { (0..=left).collect() };
                    for k in range {
                        for sub in go(arity, k, memo) {
                            let mut p = partial.clone();
                            p.push(sub);
                            next.push(p);
                            next_b.push(left - k);
                        }
                    }
                }
                acc = next;
                budgets = next_b;
            }
            acc.into_iter().map(Node::Caret).collect()
        };
        memo[carets] = Some(out.clone());
        out
    }
    let mut memo = vec![None; carets + 1];
    go(arity, carets, &mut memo)
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)
    }
}

/// An ordered sequence of `r >= 1` trees of a common arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Forest {
    pub arity: usize,
    pub roots: Vec<Node>,
}

impl Forest {
    pub fn trivial(arity: usize, r: usize) -> Self {
        Forest { arity, roots: vec![Node::Leaf; r] }
    }

    pub fn from_trees(trees: Vec<Tree>) -> Result<Self, TreeError> {
        let arity = trees.first().map(|t| t.arity).ok_or_else(|| TreeError::Range("empty forest".into()))?;
        if let Some(t) = trees.iter().find(|t| t.arity != arity) {
            return Err(TreeError::Arity(arity, t.arity));
        }
        Ok(Forest { arity, roots: trees.into_iter().map(|t| t.root).collect() })
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    pub fn tree(&self, i: usize) -> Tree {
        Tree { arity: self.arity, root: self.roots[i].clone() }
    }

    /// Only valid for single-rooted forests.
    pub fn into_tree(self) -> Tree {
        debug_assert_eq!(self.roots.len(), 1);
        Tree { arity: self.arity, root: self.roots.into_iter().next().expect("one root") }
    }

    pub fn carets(&self) -> usize {
        self.roots.iter().map(Node::carets).sum()
    }

    pub fn leaf_count(&self) -> usize {
        self.roots.iter().map(Node::leaf_count).sum()
    }

    /// Leaves in global left-to-right order.
    pub fn leaves(&self) -> Vec<LeafAddress> {
        self.roots
            .iter()
            .enumerate()
            .flat_map(|(r, n)| n.leaf_words().into_iter().map(move |w| LeafAddress::new(r, w)))
            .collect()
    }

    pub fn get(&self, addr: &LeafAddress) -> Option<&Node> {
        self.roots.get(addr.root)?.get(&addr.word)
    }

    pub fn is_leaf(&self, addr: &LeafAddress) -> bool {
        matches!(self.get(addr), Some(Node::Leaf))
    }

    /// 1-based global position of a leaf.
    pub fn position_of(&self, addr: &LeafAddress) -> Option<usize> {
        self.leaves().iter().position(|a| a == addr).map(|p| p + 1)
    }

    /// Leaf at 1-based position `pos`.
    pub fn leaf_at(&self, pos: usize) -> Option<LeafAddress> {
        pos.checked_sub(1).and_then(|p| self.leaves().into_iter().nth(p))
    }

    pub fn expand(&self, addr: &LeafAddress) -> Result<Forest, TreeError> {
        let mut out = self.clone();
        let node = out
            .roots
            .get_mut(addr.root)
            .and_then(|r| r.get_mut(&addr.word))
            .ok_or_else(|| TreeError::Address(addr.clone()))?;
        if !node.is_leaf() {
            return Err(TreeError::Address(addr.clone()));
        }
        *node = Node::caret(self.arity);
        Ok(out)
    }

    /// Expands the leaf at 1-based position `pos`.
    pub fn expand_at(&self, pos: usize) -> Result<Forest, TreeError> {
        let addr = self
            .leaf_at(pos)
            .ok_or_else(|| TreeError::Range(format!("leaf position {pos} of {}", self.leaf_count())))?;
        self.expand(&addr)
    }

    pub fn reduce_caret(&self, vertex: &LeafAddress) -> Result<Forest, TreeError> {
        let mut out = self.clone();
        let node = out
            .roots
            .get_mut(vertex.root)
            .and_then(|r| r.get_mut(&vertex.word))
            .ok_or_else(|| TreeError::Caret(vertex.clone()))?;
        match node {
            Node::Caret(ch) if ch.iter().all(Node::is_leaf) => {
                *node = Node::Leaf;
                Ok(out)
            }
            _ => Err(TreeError::Caret(vertex.clone())),
        }
    }

    /// Final carets as `(vertex address, 1-based position of the first leaf)`.
    pub fn final_caret_blocks(&self) -> Vec<(LeafAddress, usize)> {
        let mut out = Vec::new();
        let mut offset = 0;
        for (r, node) in self.roots.iter().enumerate() {
            let leaves = node.leaf_words();
            for w in node.final_carets() {
                let mut first = w.clone();
                first.push(0);
                let idx = leaves.iter().position(|l| *l == first).expect("caret leaf");
                out.push((LeafAddress::new(r, w), offset + idx + 1));
            }
            offset += leaves.len();
        }
        out
    }

    /// Root-wise least common multiple.
    pub fn lcm(&self, other: &Forest) -> Result<Forest, TreeError> {
        if self.arity != other.arity {
            return Err(TreeError::Arity(self.arity, other.arity));
        }
        if self.roots.len() != other.roots.len() {
            return Err(TreeError::Range(format!(
                "root count mismatch: {} vs {}",
                self.roots.len(),
                other.roots.len()
            )));
        }
        let roots = self
            .roots
            .iter()
            .zip(&other.roots)
            .map(|(a, b)| a.lcm(b).ok_or(TreeError::Arity(self.arity, other.arity)))
            .collect::<Result<_, _>>()?;
        Ok(Forest { arity: self.arity, roots })
    }

    pub fn embeds_in(&self, other: &Forest) -> bool {
        self.arity == other.arity
            && self.roots.len() == other.roots.len()
            && self.roots.iter().zip(&other.roots).all(|(a, b)| a.embeds_in(b))
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.roots.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl From<Tree> for Forest {
    fn from(t: Tree) -> Self {
        t.into_forest()
    }
}
