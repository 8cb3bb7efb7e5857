//! Rewriting the `h_i` and `e_T` in terms of smaller generating sets.
//!
//! `h_i` for `i < n` comes from the `g`, the `e` and higher `h` by moving a
//! single label along the first `n` strands; `h_i` for `n <= i <= m(n)-2`
//! comes from lower `h` by conjugating with tree pairs; `e_T` lies in `F_n`.

use std::collections::HashMap;

use crate::element::Element;
use crate::trees::Tree;

use super::fgroup::e_word;
use super::{Gen, GenError, GenLetter, GeneratorTable, GeneratorWord};

fn one(g: Gen) -> GeneratorWord {
    GeneratorWord::single(g)
}

/// `e_T` as a word, empty for `T = T(n)`.
fn e_of(table: &GeneratorTable, t: &Tree) -> GeneratorWord {
    if t == table.base() {
        GeneratorWord::empty()
    } else {
        one(Gen::E(table.e_index(t).expect("tree of base depth")))
    }
}

/// Index of the subgroup generator bound to exactly `σ_i`.
pub fn sigma_generator(table: &GeneratorTable, i: usize) -> Result<usize, GenError> {
    let spec = table.spec();
    let target = crate::braid::BraidWord::sigma(spec.arity(), i as i32);
    (0..spec.generator_count())
        .find(|&k| spec.generator_braid(k).equals(&target))
        .ok_or_else(|| GenError::Subgroup(format!("bound to s{i}")))
}

/// A tree of base depth whose first `n` leaves hang from one final caret.
fn first_caret_tree(table: &GeneratorTable) -> Tree {
    let n = table.arity();
    if n > 2 {
        return table.base().clone();
    }
    let mut t = Tree::caret(n).expand(&[0]).expect("leaf 0");
    while t.depth() < table.base_depth() {
        let last = t.leaves().pop().expect("nonempty");
        t = t.expand(&last).expect("leaf");
    }
    t
}

/// Label-moving words for the rewriting of `h_i`, `i < n`.
///
/// `inner[q]` says whether `h_q` is itself rewritten (`q` in the set) or kept
/// as a generator; with every `q` inside this spells `h_i` in `e` and `g`.
struct LabelMover<'a> {
    table: &'a GeneratorTable,
    inner: Vec<bool>,
    z_memo: HashMap<usize, GeneratorWord>,
    h_memo: HashMap<usize, GeneratorWord>,
}

impl<'a> LabelMover<'a> {
    fn new(table: &'a GeneratorTable, inner: Vec<bool>) -> Self {
        LabelMover { table, inner, z_memo: HashMap::new(), h_memo: HashMap::new() }
    }

    fn g(&self, i: usize) -> Result<GeneratorWord, GenError> {
        Ok(one(Gen::G(sigma_generator(self.table, i)?)))
    }

    /// `(T(n), σ_i, {σ_i on strands 1..n}, T(n))`.
    fn v(&self, i: usize) -> Result<GeneratorWord, GenError> {
        let e_q = e_of(self.table, &first_caret_tree(self.table));
        Ok(e_q.inverse().then(&self.g(i)?).then(&e_q))
    }

    /// `σ_i` as the label of strand `k + 1` (0-based `k`), nothing else.
    fn w(&mut self, i: usize, k: usize) -> Result<GeneratorWord, GenError> {
        if k == 0 {
            let s = Tree::spine(self.table.arity(), self.table.base_depth()).expect("positive depth");
            let e_s = e_of(self.table, &s);
            return Ok(e_s.inverse().then(&self.g(i)?).then(&e_s));
        }
        if k < i {
            let r = self.r(k)?;
            let w0 = self.w(i, 0)?;
            return Ok(r.clone().then(&w0).then(&r.inverse()));
        }
        let v = self.v(i)?;
        let prev = self.w(i, k - 1)?;
        Ok(v.clone().then(&prev).then(&v.inverse()))
    }

    /// `z'_k ⋯ z'_1`.
    fn r(&mut self, k: usize) -> Result<GeneratorWord, GenError> {
        let mut out = GeneratorWord::empty();
        for q in (1..=k).rev() {
            let z = if self.inner[q] { self.z(q)? } else { one(Gen::H(q)) };
            out.append(&z);
        }
        Ok(out)
    }

    /// `(T(n), σ_i, {σ_i on strands i+2..n}, T(n))`.
    fn z(&mut self, i: usize) -> Result<GeneratorWord, GenError> {
        if let Some(w) = self.z_memo.get(&i) {
            return Ok(w.clone());
        }
        let mut out = self.v(i)?;
        for k in 0..=i {
            out.append(&self.w(i, k)?.inverse());
        }
        self.z_memo.insert(i, out.clone());
        Ok(out)
    }

    fn h(&mut self, i: usize) -> Result<GeneratorWord, GenError> {
        if !self.inner[i] {
            return Ok(one(Gen::H(i)));
        }
        if let Some(w) = self.h_memo.get(&i) {
            return Ok(w.clone());
        }
        let n = self.table.arity();
        let out = if i == n - 1 {
            self.z(n - 1)?
        } else {
            let next = self.h(i + 1)?;
            let w = self.w(i, i - 1)?;
            let z = self.z(i)?;
            next.clone()
                .then(&w)
                .then(&z)
                .then(&next)
                .then(&z.inverse())
                .then(&w.inverse())
                .then(&next.inverse())
        };
        self.h_memo.insert(i, out.clone());
        Ok(out)
    }
}

/// Words for the pieces of the label-moving rewriting, exposed for checking.
pub mod pieces {
    use super::*;

    pub fn v(table: &GeneratorTable, i: usize) -> Result<GeneratorWord, GenError> {
        LabelMover::new(table, vec![true; table.arity()]).v(i)
    }

    pub fn w(table: &GeneratorTable, i: usize, k: usize) -> Result<GeneratorWord, GenError> {
        LabelMover::new(table, vec![true; table.arity()]).w(i, k)
    }

    pub fn z(table: &GeneratorTable, i: usize) -> Result<GeneratorWord, GenError> {
        LabelMover::new(table, vec![true; table.arity()]).z(i)
    }

    /// Tree used to place `g_i` on the first `n` leaves of a base-depth tree.
    pub fn first_caret(table: &GeneratorTable) -> Tree {
        first_caret_tree(table)
    }
}

/// `h_i` for `1 <= i < n` as a word in `e_T` and `g_s`.
pub fn rewrite_h_small(table: &GeneratorTable, i: usize) -> Result<GeneratorWord, GenError> {
    let n = table.arity();
    if i == 0 || i >= n {
        return Err(GenError::Range(i, format!("small h index must lie in 1..{n}")));
    }
    LabelMover::new(table, vec![true; n]).h(i)
}

/// `h_i` for `i` in `inside` (a subset of `1..n`), as a word in the `e_T`,
/// the `h_j` with `j` outside and `g_j` for `j` inside.
pub fn rewrite_h_parabolic(table: &GeneratorTable, i: usize, inside: &[usize]) -> Result<GeneratorWord, GenError> {
    let n = table.arity();
    if !inside.contains(&i) || i >= n {
        return Err(GenError::Range(i, "index must lie in the chosen set".into()));
    }
    let mut mask = vec![false; n];
    for &q in inside {
        if q == 0 || q >= n {
            return Err(GenError::Range(q, format!("parabolic index must lie in 1..{n}")));
        }
        mask[q] = true;
    }
    LabelMover::new(table, mask).h(i)
}

/// Trees for the rewriting of large `h`.
pub mod trees {
    use super::*;

    /// Vertex of the rightmost final caret of `T(n)`.
    pub fn rightmost_caret(n: usize) -> Vec<u8> {
        if n == 2 {
            vec![1]
        } else {
            vec![2]
        }
    }

    /// The two trees conjugating `h_1` into `h_n`.
    pub fn first_pair(table: &GeneratorTable) -> (Tree, Tree) {
        let n = table.arity();
        let t = table.base().reduce_caret(&rightmost_caret(n)).expect("final caret");
        let (a, b): (&[u8], &[u8]) = if n == 2 { (&[0, 0, 0], &[0, 0, 1]) } else { (&[0, 0], &[0, 1]) };
        (t.expand(a).expect("leaf"), t.expand(b).expect("leaf"))
    }

    /// The trees shifting a crossing right by `n - 1` positions.
    pub fn shift_pair(table: &GeneratorTable) -> (Tree, Tree) {
        let n = table.arity();
        let last = (n - 1) as u8;
        let t1 = if n > 3 {
            table
                .base()
                .reduce_caret(&rightmost_caret(n))
                .and_then(|t| t.expand(&[last]))
                .expect("leaf n-1")
        } else {
            table.base().clone()
        };
        let t2 = t1.reduce_caret(&[last]).expect("final caret");
        let leftmost = t2.leaves().into_iter().next().expect("nonempty");
        (t1.clone(), t2.expand(&leftmost).expect("leaf"))
    }
}

/// `h_i` for `n <= i <= m(n)-2` as a word in `e_T` and lower `h`.
pub fn rewrite_h_large(table: &GeneratorTable, i: usize) -> Result<GeneratorWord, GenError> {
    let n = table.arity();
    let m = table.m();
    if i < n || i + 2 > m {
        return Err(GenError::Range(i, format!("large h index must lie in {n}..={}", m - 2)));
    }
    if i == n {
        let (t1, t2) = trees::first_pair(table);
        let mut w = e_of(table, &t1).inverse().then(&one(Gen::H(1))).then(&e_of(table, &t2));
        for j in 1..n {
            w.push(GenLetter::new(Gen::H(j)).inv());
        }
        return Ok(w);
    }
    let (tp, tpp) = trees::shift_pair(table);
    let (a, b) = (e_of(table, &tpp), e_of(table, &tp));
    Ok(a.inverse().then(&b).then(&one(Gen::H(i - n + 1))).then(&b.inverse()).then(&a))
}

/// Which generating set a [`Rewriting`] lands in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// `x_i`, `h_{m(n)-1}` and the `g_s`.
    Minimal,
    /// `x_i`, `h_1 … h_{n-1}`, `h_{m(n)-1}` and the `g_s`.
    Bv,
}

/// A word together with one rewriting rule per generator outside the target
/// set: a straight-line program whose expansion is a word in the target set.
///
/// [`Rewriting::evaluate`] multiplies rule by rule, which by associativity is
/// the product of [`Rewriting::expand`] while keeping every intermediate
/// element small.
#[derive(Clone, Debug)]
pub struct Rewriting<'a> {
    table: &'a GeneratorTable,
    top: GeneratorWord,
    rules: HashMap<Gen, GeneratorWord>,
}

impl<'a> Rewriting<'a> {
    pub fn new(table: &'a GeneratorTable, top: &GeneratorWord, target: Target) -> Result<Self, GenError> {
        let mut rules = HashMap::new();
        let mut todo: Vec<Gen> = top.support();
        while let Some(g) = todo.pop() {
            if rules.contains_key(&g) {
                continue;
            }
            if let Some(raw) = rule(table, g, target)? {
                todo.extend(raw.support());
                rules.insert(g, raw);
            }
        }
        Ok(Rewriting { table, top: top.clone(), rules })
    }

    pub fn rules(&self) -> &HashMap<Gen, GeneratorWord> {
        &self.rules
    }

    /// The flat word in the target set, freely reduced.
    pub fn expand(&self) -> GeneratorWord {
        let mut memo: HashMap<Gen, GeneratorWord> = HashMap::new();
        self.expand_word(&self.top, &mut memo)
    }

    fn expand_word(&self, w: &GeneratorWord, memo: &mut HashMap<Gen, GeneratorWord>) -> GeneratorWord {
        let mut out = GeneratorWord::empty();
        for &l in w.letters() {
            let piece = match self.rules.get(&l.gen) {
                None => one(l.gen),
                Some(raw) => {
                    if !memo.contains_key(&l.gen) {
                        let e = self.expand_word(raw, memo);
                        memo.insert(l.gen, e);
                    }
                    memo[&l.gen].clone()
                }
            };
            out.append(&if l.inverse { piece.inverse() } else { piece });
        }
        out
    }

    /// The value of the expansion.
    pub fn evaluate(&self) -> Element {
        let mut memo: HashMap<Gen, Element> = HashMap::new();
        self.evaluate_word(&self.top, &mut memo)
    }

    fn evaluate_word(&self, w: &GeneratorWord, memo: &mut HashMap<Gen, Element>) -> Element {
        let mut acc = Element::identity(self.table.spec().clone(), 1);
        for &l in w.letters() {
            if !memo.contains_key(&l.gen) {
                let v = match self.rules.get(&l.gen) {
                    None => self.table.element(l.gen),
                    Some(raw) => self.evaluate_word(raw, memo),
                };
                memo.insert(l.gen, v);
            }
            let v = &memo[&l.gen];
            let v = if l.inverse { v.inverse() } else { v.clone() };
            acc = acc.mul(&v).expect("same subgroup and roots");
        }
        acc
    }
}

fn rule(table: &GeneratorTable, g: Gen, target: Target) -> Result<Option<GeneratorWord>, GenError> {
    let n = table.arity();
    let m = table.m();
    Ok(match g {
        Gen::X(_) | Gen::G(_) => None,
        Gen::E(k) => Some(e_word(table, k)),
        Gen::H(i) if i == m - 1 => None,
        Gen::H(i) if i >= n => Some(rewrite_h_large(table, i)?),
        Gen::H(i) if target == Target::Minimal => Some(rewrite_h_small(table, i)?),
        Gen::H(_) => None,
    })
}

/// Rewrites into `x_i`, `h_1 … h_{n-1}`, `h_{m(n)-1}` and the `g_s`.
pub fn to_bv_set(table: &GeneratorTable, w: &GeneratorWord) -> Result<GeneratorWord, GenError> {
    Ok(Rewriting::new(table, w, Target::Bv)?.expand())
}

/// Rewrites into `x_i`, `h_{m(n)-1}` and the `g_s`. Needs a generator bound
/// to each `σ_i`.
pub fn to_minimal_set(table: &GeneratorTable, w: &GeneratorWord) -> Result<GeneratorWord, GenError> {
    Ok(Rewriting::new(table, w, Target::Minimal)?.expand())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::braid::BraidWord;
    use crate::subgroup::{LabelWord, SubgroupSpec};

    fn table(n: usize) -> GeneratorTable {
        GeneratorTable::standard(Arc::new(SubgroupSpec::braid_group(n)))
    }

    fn labelled(t: &GeneratorTable, braid: Vec<i32>, labels: &[(usize, usize)]) -> Element {
        let m = t.m();
        let mut ls = vec![LabelWord::empty(); m];
        for &(pos, i) in labels {
            ls[pos] = t.spec().generator(&format!("s{i}")).unwrap();
        }
        Element::make(
            t.spec().clone(),
            t.base().clone().into(),
            BraidWord::new(m, braid).unwrap(),
            ls,
            t.base().clone().into(),
        )
        .unwrap()
    }

    #[test]
    fn label_pieces() {
        for n in 2..=4 {
            let t = table(n);
            for i in 1..n {
                let all: Vec<(usize, usize)> = (0..n).map(|j| (j, i)).collect();
                assert!(t.evaluate(&pieces::v(&t, i).unwrap()).equals(&labelled(&t, vec![i as i32], &all)));
                for k in 0..=i {
                    let w = t.evaluate(&pieces::w(&t, i, k).unwrap());
                    assert!(w.equals(&labelled(&t, vec![], &[(k, i)])), "n={n} i={i} k={k}");
                }
                let tail: Vec<(usize, usize)> = (i + 1..n).map(|j| (j, i)).collect();
                assert!(t.evaluate(&pieces::z(&t, i).unwrap()).equals(&labelled(&t, vec![i as i32], &tail)));
            }
        }
    }

    #[test]
    fn v_is_g_above_two() {
        for n in 3..=4 {
            let t = table(n);
            for i in 1..n {
                let all: Vec<(usize, usize)> = (0..n).map(|j| (j, i)).collect();
                assert!(labelled(&t, vec![i as i32], &all).equals(&t.g(i - 1)));
            }
        }
        let t = table(2);
        assert!(!labelled(&t, vec![1], &[(0, 1), (1, 1)]).equals(&t.g(0)));
    }

    #[test]
    fn small_h() {
        for n in 2..=4 {
            let t = table(n);
            for i in 1..n {
                let w = rewrite_h_small(&t, i).unwrap();
                assert!(w.support().iter().all(|g| matches!(g, Gen::E(_) | Gen::G(_))));
                assert!(t.evaluate(&w).equals(&t.h(i)), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn conjugated_crossing() {
        for n in 3..=4 {
            let t = table(n);
            for i in 1..n - 1 {
                let z = t.evaluate(&pieces::z(&t, i).unwrap());
                let lhs = z.mul(&t.h(i + 1)).unwrap().mul(&z.inverse()).unwrap();
                let m = t.m();
                let mut ls = vec![LabelWord::empty(); m];
                let s = t.spec().generator(&format!("s{i}")).unwrap();
                if i >= 1 {
                    ls[i - 1] = s.clone();
                }
                ls[i + 1] = s.inverse();
                let rhs = Element::make(
                    t.spec().clone(),
                    t.base().clone().into(),
                    BraidWord::new(m, vec![i as i32, i as i32 + 1, -(i as i32)]).unwrap(),
                    ls,
                    t.base().clone().into(),
                )
                .unwrap();
                assert!(lhs.equals(&rhs), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn large_h() {
        for n in 2..=4 {
            let t = table(n);
            for i in n..t.m() - 1 {
                let w = rewrite_h_large(&t, i).unwrap();
                assert!(t.evaluate(&w).equals(&t.h(i)), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn shift_identity_on_trees() {
        for n in 2..=4 {
            let t = table(n);
            let (tp, tpp) = trees::shift_pair(&t);
            let m = t.m();
            for j in 2..m - n {
                let a = t.braid_pair(&tp, BraidWord::sigma(m, j as i32), &tp);
                let b = t.braid_pair(&tpp, BraidWord::sigma(m, (j + n - 1) as i32), &tpp);
                assert!(a.equals(&b), "n={n} j={j}");
            }
        }
    }

    #[test]
    fn minimal_and_bv_sets() {
        for n in 2..=3 {
            let t = table(n);
            let set = t.minimal_set();
            let bv = t.bv_set();
            for g in (1..t.m()).map(Gen::H).chain((0..t.e_trees().len()).map(Gen::E)) {
                let w = to_minimal_set(&t, &GeneratorWord::single(g)).unwrap();
                assert!(w.support().iter().all(|x| set.contains(x)), "{:?}", g);
                assert!(t.evaluate(&w).equals(&t.element(g)), "n={n} {g:?}");
                let w = to_bv_set(&t, &GeneratorWord::single(g)).unwrap();
                assert!(w.support().iter().all(|x| bv.contains(x)));
                assert!(t.evaluate(&w).equals(&t.element(g)));
                let r = Rewriting::new(&t, &GeneratorWord::single(g), Target::Minimal).unwrap();
                assert!(r.evaluate().equals(&t.element(g)));
            }
        }
    }

    #[test]
    fn small_h_needs_sigma_generators() {
        let t = GeneratorTable::standard(Arc::new(SubgroupSpec::identity(3)));
        assert!(matches!(rewrite_h_small(&t, 1), Err(GenError::Subgroup(_))));
        assert!(t.evaluate(&rewrite_h_large(&t, 5).unwrap()).equals(&t.h(5)));
    }

    #[test]
    fn parabolic_rewrite() {
        let t = table(4);
        for inside in [vec![1], vec![2], vec![1, 3], vec![1, 2, 3]] {
            for &i in &inside {
                let w = rewrite_h_parabolic(&t, i, &inside).unwrap();
                for g in w.support() {
                    match g {
                        Gen::H(j) => assert!(!inside.contains(&j)),
                        Gen::G(k) => assert!(inside.contains(&(k + 1))),
                        _ => {}
                    }
                }
                assert!(t.evaluate(&w).equals(&t.h(i)), "{inside:?} {i}");
            }
        }
    }

    #[test]
    fn label_shape_of_z_products() {
        for n in 3..=5 {
            let t = table(n);
            let mut lm = LabelMover::new(&t, vec![true; n]);
            let r = |p: usize| BraidWord::new(n, (1..=p as i32).rev().collect()).unwrap();
            for k in 1..n - 1 {
                let e = t.evaluate(&lm.r(k).unwrap()).expand_domain_to(&t.base().clone().into()).unwrap();
                assert!(e.braid().equals(&r(k).widen(t.m())));
                for (j, l) in e.labels().iter().enumerate() {
                    let want = match j {
                        0 | 1 => BraidWord::identity(n),
                        _ if j < k + 2 => r(j - 1),
                        _ if j < n => r(k),
                        _ => BraidWord::identity(n),
                    };
                    assert!(l.to_braid(t.spec()).equals(&want), "n={n} k={k} j={j}");
                }
            }
        }
    }
}
