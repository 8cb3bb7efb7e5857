//! Words in `x_0 … x_{n-1}` for elements of `F_n` (trivial braid and labels).

use crate::element::Element;
use crate::trees::{Node, Tree};

use super::{Gen, GenError, GeneratorTable, GeneratorWord};

/// `x_i^{(k)} = (S_{k+2}, Id, Id, S_{k+1}[(n-1)^k i])` for `i <= n-2`.
pub fn x_power_element(table: &GeneratorTable, i: usize, k: usize) -> Element {
    let n = table.arity();
    let spine = Tree::spine(n, k + 1).expect("n >= 2");
    let mut word = vec![(n - 1) as u8; k];
    word.push(i as u8);
    table.tree_pair(&Tree::spine(n, k + 2).expect("n >= 2"), &spine.expand(&word).expect("leaf of the spine"))
}

/// `x_i^{(k)}` spelled in `x_0 … x_{n-1}`: a conjugate of `x_i` (or of
/// `x_{n-1}` when `i = 0`) by a power of `x_0`.
pub fn x_power_word(n: usize, i: usize, k: usize) -> GeneratorWord {
    let x = |j: usize| GeneratorWord::single(Gen::X(j));
    let (core, shift) = match (i, k) {
        (_, 0) => (x(i), 0),
        (0, _) => (x(n - 1), k - 1),
        _ => (x(i), k),
    };
    let mut w = GeneratorWord::empty();
    for _ in 0..shift {
        w.append(&x(0));
    }
    w.append(&core);
    for _ in 0..shift {
        w.append(&x(0).inverse());
    }
    w
}

/// A word for `(S_d, Id, Id, a)`: each step moves one caret off the right
/// spine back onto it.
fn spine_word(n: usize, a: &Tree) -> GeneratorWord {
    let mut steps = Vec::new();
    let mut t = a.root.clone();
    while let Some((k, i)) = first_off_spine(n, &t) {
        t = rotate_to_spine(n, &t, k, i);
        steps.push((i, k));
    }
    // (S_d → A) = (S_d → D_last) … (D_1 → A); steps were found from A backwards
    let mut w = GeneratorWord::empty();
    for &(i, k) in steps.iter().rev() {
        w.append(&x_power_word(n, i, k));
    }
    w
}

fn first_off_spine(n: usize, t: &Node) -> Option<(usize, usize)> {
    let mut node = t;
    let mut k = 0;
    while let Node::Caret(ch) = node {
        if let Some(i) = ch[..n - 1].iter().position(|c| !c.is_leaf()) {
            return Some((k, i));
        }
        node = &ch[n - 1];
        k += 1;
    }
    None
}

/// Given `A ⊇ Y = S_{k+1}[(n-1)^k i]`, returns `D ⊇ S_{k+2}` carrying the
/// same subtrees on its leaves in order.
fn rotate_to_spine(n: usize, a: &Node, k: usize, i: usize) -> Node {
    let Node::Caret(ch) = a else { unreachable!("caret on the spine") };
    if k > 0 {
        let mut ch = ch.clone();
        ch[n - 1] = rotate_to_spine(n, &ch[n - 1], k - 1, i);
        return Node::Caret(ch);
    }
    let Node::Caret(inner) = &ch[i] else { unreachable!("caret at child i") };
    // hanging subtrees, in Y's leaf order from child 0 of this spine node
    let mut hang: Vec<Node> = Vec::with_capacity(2 * n - 1);
    hang.extend_from_slice(&ch[..i]);
    hang.extend_from_slice(inner);
    hang.extend_from_slice(&ch[i + 1..]);
    let lower = Node::Caret(hang[n - 1..].to_vec());
    let mut upper = hang[..n - 1].to_vec();
    upper.push(lower);
    Node::Caret(upper)
}

/// A word in the `x_i` for an element with trivial braid and labels.
pub fn decompose_f(table: &GeneratorTable, v: &Element) -> Result<GeneratorWord, GenError> {
    if v.roots() != 1 {
        return Err(GenError::Roots(v.roots()));
    }
    let v = v.reduce();
    if !v.braid().is_trivial() || v.labels().iter().any(|w| !w.is_trivial(v.spec())) {
        return Err(GenError::Internal("element is not in F_n".into()));
    }
    if v.depth() == 0 {
        return Ok(GeneratorWord::empty());
    }
    let n = table.arity();
    let a = v.domain().tree(0);
    let b = v.range().tree(0);
    Ok(spine_word(n, &a).inverse().then(&spine_word(n, &b)))
}

/// `x`-word for the generator `e_k`.
pub fn e_word(table: &GeneratorTable, k: usize) -> GeneratorWord {
    let n = table.arity();
    spine_word(n, &table.e_trees()[k]).inverse().then(&spine_word(n, table.base()))
}
