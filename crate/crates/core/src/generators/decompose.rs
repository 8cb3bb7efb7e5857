//! Decomposition of single-rooted elements into `e_T`, `h_i` and `g_s`.
//!
//! Above the base depth an element is split into factors of smaller depth:
//! the braid part is routed through a tree with three final carets, and each
//! label letter is conjugated onto the first leaf of a spine. At the base
//! depth, `(A, β, Id, B) = e_A · h(β) · e_B⁻¹`.

use std::collections::HashMap;

use crate::braid::BraidWord;
use crate::element::Element;
use crate::subgroup::LabelWord;
use crate::trees::{Forest, Tree};

use super::{Gen, GenError, GenLetter, GeneratorTable, GeneratorWord};

type Key = (Forest, Vec<i32>, Vec<LabelWord>, Forest);

fn key(v: &Element) -> Key {
    (v.domain().clone(), v.braid().letters().to_vec(), v.labels().to_vec(), v.range().clone())
}

fn check(table: &GeneratorTable, v: &Element) -> Result<(), GenError> {
    if v.roots() != 1 {
        return Err(GenError::Roots(v.roots()));
    }
    if **v.spec() != **table.spec() {
        return Err(GenError::Spec(v.spec().name().into(), table.spec().name().into()));
    }
    Ok(())
}

/// A word over `e_T`, `h_i` and `g_s` evaluating to `v`.
pub fn decompose(table: &GeneratorTable, v: &Element) -> Result<GeneratorWord, GenError> {
    check(table, v)?;
    Decomposer { table, memo: HashMap::new() }.word(v)
}

/// One step: factors of depth below that of `v`, whose product is `v`.
/// Only defined above the base depth.
pub fn decompose_step(table: &GeneratorTable, v: &Element) -> Result<Vec<Element>, GenError> {
    check(table, v)?;
    let v = v.reduce();
    let d0 = table.base_depth();
    if v.depth() <= d0 {
        return Err(GenError::Depth(v.depth(), d0));
    }
    step(table, &v)
}

/// `σ_{j-1} ⋯ σ_1`, taking position `j` to position 1.
fn to_front(strands: usize, j: usize) -> BraidWord {
    BraidWord::new(strands, (1..j as i32).rev().collect()).expect("within range")
}

fn tree_of(f: &Forest) -> Tree {
    f.tree(0)
}

fn step(table: &GeneratorTable, v: &Element) -> Result<Vec<Element>, GenError> {
    let n = table.arity();
    let d = v.depth();
    let l = v.strands();
    let (t1, t2) = (tree_of(v.domain()), tree_of(v.range()));
    let mut out = peel(table, &table.braid_pair(&t1, v.braid().clone(), &t2), d)?;
    let spine = Tree::spine(n, d).expect("positive depth");
    for (j, word) in v.labels().iter().enumerate() {
        if word.is_empty() {
            continue;
        }
        let route = peel(table, &table.braid_pair(&t2, to_front(l, j + 1), &spine), d)?;
        let back: Vec<Element> = route.iter().rev().map(Element::inverse).collect();
        for letter in word.letters() {
            out.extend(route.iter().cloned());
            let g = table.g(letter.generator);
            out.push(if letter.inverse { g.inverse() } else { g });
            out.extend(back.iter().cloned());
        }
    }
    Ok(out)
}

/// Splits a braid-only element of depth `d` into reduced factors of depth
/// below `d`.
fn peel(table: &GeneratorTable, u: &Element, d: usize) -> Result<Vec<Element>, GenError> {
    let u = u.reduce();
    if u.is_identity() {
        return Ok(Vec::new());
    }
    if u.depth() < d {
        return Ok(vec![u]);
    }
    let n = table.arity();
    let l = u.strands();
    let (t1, t2) = (tree_of(u.domain()), tree_of(u.range()));
    if u.braid().is_trivial() {
        if let Some(route) = route_trivial(n, d, &t1, &t2) {
            let mut out = Vec::new();
            let mut ok = true;
            for pair in route.windows(2) {
                let f = table.tree_pair(&pair[0], &pair[1]).reduce();
                ok &= f.depth() < d;
                out.push(f);
            }
            if ok {
                return Ok(out);
            }
        }
    }
    let t3 = if t1.final_carets().len() >= 3 {
        t1.clone()
    } else if t2.final_carets().len() >= 3 {
        t2.clone()
    } else {
        three_caret_tree(table, d)
    };
    let b1 = u.domain().final_caret_blocks();
    let b2 = u.range().final_caret_blocks();
    let b3 = Forest::from(t3.clone()).final_caret_blocks();
    let shortest = |from: &[(crate::trees::LeafAddress, usize)], to: &[(crate::trees::LeafAddress, usize)]| {
        let mut best: Option<BraidWord> = None;
        for (_, p) in from {
            for (_, q) in to {
                let r = BraidWord::ribbon(l, n, *p, *q).expect("blocks fit");
                if best.as_ref().is_none_or(|b| r.len() < b.len()) {
                    best = Some(r);
                }
            }
        }
        best.expect("trees of positive depth have final carets")
    };
    let r1 = shortest(&b1, &b3);
    let r2 = shortest(&b3, &b2);
    let middle = r1.inverse().compose(u.braid())?.compose(&r2.inverse())?.free_reduced();

    let mut factors = vec![table.braid_pair(&t1, r1, &t3)];
    for &x in middle.letters() {
        factors.push(table.braid_pair(&t3, BraidWord::new(l, vec![x]).expect("letter in range"), &t3));
    }
    factors.push(table.braid_pair(&t3, r2, &t2));
    let mut out = Vec::with_capacity(factors.len());
    for f in factors {
        let f = f.reduce();
        if f.depth() >= d {
            return Err(GenError::Internal(format!("factor of depth {} does not reduce below {d}", f.depth())));
        }
        if !f.is_identity() {
            out.push(f);
        }
    }
    Ok(out)
}

/// A tree of depth `d` whose final carets include blocks starting at the
/// given pairwise disjoint positions.
fn tree_with_blocks(n: usize, d: usize, starts: &[usize]) -> Option<Tree> {
    let mut starts = starts.to_vec();
    starts.sort_unstable();
    if starts.windows(2).any(|w| w[1] < w[0] + n) || starts.len() > d {
        return None;
    }
    let rest = d - starts.len();
    let mut t = if rest == 0 { Tree::trivial(n) } else { Tree::spine(n, rest).ok()? };
    let items = 1 + rest * (n - 1);
    for (k, &p) in starts.iter().enumerate().rev() {
        let idx = p.checked_sub(1 + k * (n - 1))?;
        if idx >= items {
            return None;
        }
        let leaf = t.leaves()[idx].clone();
        t = t.expand(&leaf).ok()?;
    }
    Some(t)
}

/// Trees `t1 = a_0, a_1, …, a_k = t2` such that consecutive pairs share a
/// final caret in the same position, so each `(a_j, Id, Id, a_{j+1})`
/// reduces.
fn route_trivial(n: usize, d: usize, t1: &Tree, t2: &Tree) -> Option<Vec<Tree>> {
    let blocks = |t: &Tree| -> Vec<usize> {
        Forest::from(t.clone()).final_caret_blocks().into_iter().map(|(_, p)| p).collect()
    };
    let (b1, b2) = (blocks(t1), blocks(t2));
    for &p in &b1 {
        for &q in &b2 {
            if let Some(mid) = tree_with_blocks(n, d, &[p, q]) {
                return Some(vec![t1.clone(), mid, t2.clone()]);
            }
        }
    }
    let l = 1 + d * (n - 1);
    for &p in &b1 {
        for &q in &b2 {
            for r in 1..=l + 1 - n {
                if let (Some(a), Some(b)) = (tree_with_blocks(n, d, &[p, r]), tree_with_blocks(n, d, &[r, q])) {
                    return Some(vec![t1.clone(), a, b, t2.clone()]);
                }
            }
        }
    }
    None
}

/// `T(n)` with its rightmost leaf expanded until the depth is `d`; it keeps
/// exactly three final carets.
fn three_caret_tree(table: &GeneratorTable, d: usize) -> Tree {
    let mut t = table.base().clone();
    while t.depth() < d {
        let last = t.leaves().pop().expect("nonempty");
        t = t.expand(&last).expect("leaf");
    }
    t
}

fn braid_letters(w: &BraidWord) -> GeneratorWord {
    GeneratorWord::from_letters(
        w.letters().iter().map(|&x| GenLetter { gen: Gen::H(x.unsigned_abs() as usize), inverse: x < 0 }),
    )
}

struct Decomposer<'a> {
    table: &'a GeneratorTable,
    memo: HashMap<Key, GeneratorWord>,
}

/// `(R, Id, {h, Id, …}, R)` is a product of `g` letters.
fn first_leaf_label(table: &GeneratorTable, v: &Element) -> Option<GeneratorWord> {
    let r = Forest::from(Tree::caret(table.arity()));
    if *v.domain() != r || *v.range() != r || !v.braid().is_trivial() || v.labels()[1..].iter().any(|w| !w.is_empty()) {
        return None;
    }
    Some(GeneratorWord::from_letters(
        v.labels()[0].letters().iter().map(|l| GenLetter { gen: Gen::G(l.generator), inverse: l.inverse }),
    ))
}

impl Decomposer<'_> {
    fn word(&mut self, v: &Element) -> Result<GeneratorWord, GenError> {
        let v = v.reduce();
        if v.is_identity() {
            return Ok(GeneratorWord::empty());
        }
        let k = key(&v);
        if let Some(w) = self.memo.get(&k) {
            return Ok(w.clone());
        }
        let w = if let Some(g) = self.table.match_generator(&v) {
            GeneratorWord::from_letters([g])
        } else if let Some(w) = first_leaf_label(self.table, &v) {
            w
        } else if v.depth() <= self.table.base_depth() {
            self.base(&v)
        } else {
            let mut w = GeneratorWord::empty();
            for f in step(self.table, &v)? {
                w.append(&self.word(&f)?);
            }
            w
        };
        self.memo.insert(k, w.clone());
        Ok(w)
    }

    fn e(&self, t: &Tree) -> GeneratorWord {
        if t == self.table.base() {
            GeneratorWord::empty()
        } else {
            GeneratorWord::single(Gen::E(self.table.e_index(t).expect("tree of base depth")))
        }
    }

    fn base(&self, v: &Element) -> GeneratorWord {
        let n = self.table.arity();
        let d0 = self.table.base_depth();
        let mut v = v.clone();
        while v.depth() < d0 {
            v = v.expand_at_range_leaf(1).expect("position 1 exists");
        }
        let (a, b) = (tree_of(v.domain()), tree_of(v.range()));
        let spine = Tree::spine(n, d0).expect("positive depth");
        let e_b = self.e(&b);
        let mut w = self.e(&a).then(&braid_letters(v.braid())).then(&e_b.inverse());
        let l = v.strands();
        for (j, word) in v.labels().iter().enumerate() {
            let route = e_b.clone().then(&braid_letters(&to_front(l, j + 1))).then(&self.e(&spine).inverse());
            for letter in word.letters() {
                w.append(&route);
                w.push(GenLetter { gen: Gen::G(letter.generator), inverse: letter.inverse });
                w.append(&route.inverse());
            }
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::subgroup::SubgroupSpec;

    fn table(n: usize) -> GeneratorTable {
        GeneratorTable::standard(Arc::new(SubgroupSpec::braid_group(n)))
    }

    #[test]
    fn generators_decompose_to_themselves() {
        let t = table(3);
        assert_eq!(t.display(&decompose(&t, &t.h(2)).unwrap()).to_string(), "h_2");
        assert_eq!(t.display(&decompose(&t, &t.g(1).inverse()).unwrap()).to_string(), "g_s2^-1");
        assert!(decompose(&t, &Element::identity(t.spec().clone(), 1)).unwrap().is_empty());
        let gg = t.g(0).mul(&t.g(1).inverse()).unwrap().mul(&t.g(0)).unwrap();
        assert_eq!(t.display(&decompose(&t, &gg).unwrap()).to_string(), "g_s1 g_s2^-1 g_s1");
    }

    #[test]
    fn step_lowers_depth() {
        let t = table(2);
        for seed in 0..20 {
            let v = Element::random(t.spec().clone(), 1, 7, seed).reduce();
            match decompose_step(&t, &v) {
                Ok(fs) => {
                    let mut acc = Element::identity(t.spec().clone(), 1);
                    for f in &fs {
                        assert!(f.depth() < v.depth());
                        acc = acc.mul(f).unwrap();
                    }
                    assert!(acc.equals(&v), "seed {seed}");
                }
                Err(GenError::Depth(d, _)) => assert!(d <= t.base_depth()),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn random_elements_round_trip() {
        for n in 2..=3 {
            let t = table(n);
            for seed in 0..10 {
                let v = Element::random(t.spec().clone(), 1, 6, seed);
                let w = decompose(&t, &v).unwrap();
                assert!(t.evaluate(&w).equals(&v), "n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn tree_pairs_peel_without_crossings() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 2..=3 {
            let t = table(n);
            for _ in 0..25 {
                let d = t.base_depth() + 1 + rand::Rng::gen_range(&mut rng, 0..2);
                let a = crate::element::random_forest(n, 1, d, &mut rng).tree(0);
                let b = crate::element::random_forest(n, 1, d, &mut rng).tree(0);
                let v = t.tree_pair(&a, &b).reduce();
                if v.depth() <= t.base_depth() {
                    continue;
                }
                let fs = decompose_step(&t, &v).unwrap();
                for f in &fs {
                    assert!(f.braid().is_trivial() && f.labels().iter().all(|w| w.is_empty()));
                }
                let mut acc = Element::identity(t.spec().clone(), 1);
                for f in &fs {
                    acc = acc.mul(f).unwrap();
                }
                assert!(acc.equals(&v));
            }
        }
    }

    #[test]
    fn blocks_are_placed() {
        let t = tree_with_blocks(2, 4, &[1, 4]).unwrap();
        let starts: Vec<usize> = Forest::from(t).final_caret_blocks().into_iter().map(|(_, p)| p).collect();
        assert!(starts.contains(&1) && starts.contains(&4));
        assert!(tree_with_blocks(3, 4, &[1, 2]).is_none());
    }

    #[test]
    fn labelled_depth_five_element() {
        // a crossing and one label on the first strand, as in the worked
        // decomposition of a depth-5 element of BV_3(B_3)
        let t = table(3);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
        for k in 0..2 {
            let a = crate::element::random_forest(3, 1, 5, &mut rng);
            let b = crate::element::random_forest(3, 1, 5, &mut rng);
            let mut labels = vec![LabelWord::empty(); 11];
            labels[0] = t.spec().generator(t.spec().generator_name(k)).unwrap();
            let v = Element::make(t.spec().clone(), a, BraidWord::sigma(11, 2), labels, b).unwrap();
            let w = decompose(&t, &v).unwrap();
            assert!(w.support().iter().all(|g| matches!(g, Gen::E(_) | Gen::H(_) | Gen::G(_))));
            assert!(w.support().contains(&Gen::G(k)));
            assert!(t.evaluate(&w).equals(&v));
        }
    }

    #[test]
    fn multi_root_rejected() {
        let t = table(2);
        let v = Element::identity(t.spec().clone(), 2);
        assert_eq!(decompose(&t, &v), Err(GenError::Roots(2)));
    }
}
