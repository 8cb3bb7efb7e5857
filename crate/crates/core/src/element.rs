//! Elements `(T, β, λ, T′)` of `BV_{n,r}(H)`.
//!
//! The label at range position `i` sits at the bottom of the strand ending
//! at `i`, which starts at `π⁻¹(i)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::braid::{BraidError, BraidWord};
use crate::subgroup::{LabelLetter, LabelWord, SubgroupSpec};
use crate::trees::{Forest, TreeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElementError {
    #[error("invalid element: {0}")]
    Validation(String),
    #[error("position {0} out of range 1..={1}")]
    Range(usize, usize),
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

#[derive(Clone, Debug)]
pub struct Element {
    spec: Arc<SubgroupSpec>,
    domain: Forest,
    braid: BraidWord,
    labels: Vec<LabelWord>,
    range: Forest,
}

impl PartialEq for Element {
    /// Syntactic equality. Use [`Element::equals`] for the group.
    fn eq(&self, other: &Self) -> bool {
        same_spec(&self.spec, &other.spec)
            && self.domain == other.domain
            && self.braid == other.braid
            && self.labels == other.labels
            && self.range == other.range
    }
}

impl Eq for Element {}

fn same_spec(a: &Arc<SubgroupSpec>, b: &Arc<SubgroupSpec>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Element {
    pub fn make(
        spec: Arc<SubgroupSpec>,
        domain: Forest,
        braid: BraidWord,
        labels: Vec<LabelWord>,
        range: Forest,
    ) -> Result<Element, ElementError> {
        let n = spec.arity();
        if domain.arity != n || range.arity != n {
            return Err(ElementError::Validation(format!(
                "forest arity {} / {} does not match subgroup arity {n}",
                domain.arity, range.arity
            )));
        }
        if domain.root_count() != range.root_count() {
            return Err(ElementError::Validation(format!(
                "domain has {} roots, range has {}",
                domain.root_count(),
                range.root_count()
            )));
        }
        let l = domain.leaf_count();
        if range.leaf_count() != l {
            return Err(ElementError::Validation(format!(
                "domain has {l} leaves, range has {}",
                range.leaf_count()
            )));
        }
        if braid.strands() != l {
            return Err(ElementError::Validation(format!("braid on {} strands, expected {l}", braid.strands())));
        }
        if labels.len() != l {
            return Err(ElementError::Validation(format!("{} labels, expected {l}", labels.len())));
        }
        if let Some(k) = labels.iter().position(|w| !w.is_valid_for(&spec)) {
            return Err(ElementError::Validation(format!("label {} uses an unknown generator", k + 1)));
        }
        Ok(Element { spec, domain, braid, labels, range })
    }

    pub fn identity(spec: Arc<SubgroupSpec>, r: usize) -> Element {
        let n = spec.arity();
        Element {
            domain: Forest::trivial(n, r),
            range: Forest::trivial(n, r),
            braid: BraidWord::identity(r),
            labels: vec![LabelWord::empty(); r],
            spec,
        }
    }

    pub fn spec(&self) -> &Arc<SubgroupSpec> {
        &self.spec
    }

    pub fn arity(&self) -> usize {
        self.spec.arity()
    }

    pub fn roots(&self) -> usize {
        self.domain.root_count()
    }

    pub fn domain(&self) -> &Forest {
        &self.domain
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn labels(&self) -> &[LabelWord] {
        &self.labels
    }

    pub fn range(&self) -> &Forest {
        &self.range
    }

    pub fn strands(&self) -> usize {
        self.braid.strands()
    }

    /// Number of carets of each forest.
    pub fn depth(&self) -> usize {
        self.domain.carets()
    }

    /// Same element with the labels replaced by a respelling over another
    /// subgroup spec of the same arity.
    pub fn with_spec(&self, spec: Arc<SubgroupSpec>, labels: Vec<LabelWord>) -> Result<Element, ElementError> {
        Element::make(spec, self.domain.clone(), self.braid.clone(), labels, self.range.clone())
    }

    /// Clones the strand ending at range position `i` into `n` strands.
    pub fn expand_at_range_leaf(&self, i: usize) -> Result<Element, ElementError> {
        let l = self.strands();
        if i == 0 || i > l {
            return Err(ElementError::Range(i, l));
        }
        let n = self.arity();
        let j = self.braid.permutation().inverse().apply(i);
        let h = &self.labels[i - 1];
        let braid = self.braid.cable_strand(j, n, &h.to_braid(&self.spec))?;
        let mut labels = Vec::with_capacity(l + n - 1);
        labels.extend_from_slice(&self.labels[..i - 1]);
        labels.extend(std::iter::repeat_n(h.clone(), n));
        labels.extend_from_slice(&self.labels[i..]);
        Ok(Element {
            spec: self.spec.clone(),
            domain: self.domain.expand_at(j)?,
            braid,
            labels,
            range: self.range.expand_at(i)?,
        })
    }

    pub fn expand_at_domain_leaf(&self, j: usize) -> Result<Element, ElementError> {
        let l = self.strands();
        if j == 0 || j > l {
            return Err(ElementError::Range(j, l));
        }
        self.expand_at_range_leaf(self.braid.permutation().apply(j))
    }

    /// Expands until the range equals `target`, which must contain it.
    pub fn expand_range_to(&self, target: &Forest) -> Result<Element, ElementError> {
        if !self.range.embeds_in(target) {
            return Err(ElementError::Incompatible(format!("{} does not embed in {target}", self.range)));
        }
        let mut v = self.clone();
        while let Some(pos) = first_growable(&v.range, target) {
            v = v.expand_at_range_leaf(pos)?;
        }
        Ok(v)
    }

    pub fn expand_domain_to(&self, target: &Forest) -> Result<Element, ElementError> {
        if !self.domain.embeds_in(target) {
            return Err(ElementError::Incompatible(format!("{} does not embed in {target}", self.domain)));
        }
        let mut v = self.clone();
        while let Some(pos) = first_growable(&v.domain, target) {
            v = v.expand_at_domain_leaf(pos)?;
        }
        Ok(v)
    }

    /// One reduction of a matching caret pair, scanning leftmost first.
    pub fn reduce_once(&self) -> Option<Element> {
        let n = self.arity();
        let perm = self.braid.permutation();
        let range_blocks = self.range.final_caret_blocks();
        for (dvert, p) in self.domain.final_caret_blocks() {
            let images: Vec<usize> = (p..p + n).map(|k| perm.apply(k)).collect();
            let q = *images.iter().min().expect("n >= 2");
            let Some((rvert, _)) = range_blocks.iter().find(|(_, s)| *s == q) else {
                continue;
            };
            if images.iter().max() != Some(&(q + n - 1)) {
                continue;
            }
            let Ok((inner, outer)) = self.braid.extract_cable(p, n) else {
                continue;
            };
            let first = &self.labels[q - 1];
            let fb = first.to_braid(&self.spec);
            if !fb.equals(&inner) {
                continue;
            }
            if !self.labels[q..q + n - 1].iter().all(|w| w.braid_equal(first, &self.spec)) {
                continue;
            }
            let mut labels = self.labels.clone();
            labels.drain(q..q + n - 1);
            return Some(Element {
                spec: self.spec.clone(),
                domain: self.domain.reduce_caret(&dvert).expect("final caret"),
                braid: outer,
                labels,
                range: self.range.reduce_caret(rvert).expect("final caret"),
            });
        }
        None
    }

    pub fn reduce(&self) -> Element {
        let mut v = self.clone();
        while let Some(w) = v.reduce_once() {
            v = w;
        }
        v.braid = shortest_spelling(&v.braid);
        v
    }

    /// The product `self · other`, with `self` applied first.
    pub fn compose(&self, other: &Element) -> Result<Element, ElementError> {
        if !same_spec(&self.spec, &other.spec) {
            return Err(ElementError::Incompatible(format!(
                "subgroups {} and {}",
                self.spec.name(),
                other.spec.name()
            )));
        }
        if self.roots() != other.roots() {
            return Err(ElementError::Incompatible(format!("{} roots vs {}", self.roots(), other.roots())));
        }
        let middle = self.range.lcm(&other.domain)?;
        let v = self.expand_range_to(&middle)?;
        let w = other.expand_domain_to(&middle)?;
        let pw_inv = w.braid.permutation().inverse();
        let labels = (1..=w.strands())
            .map(|i| v.labels[pw_inv.apply(i) - 1].concat(&w.labels[i - 1]))
            .collect();
        Ok(Element {
            spec: self.spec.clone(),
            domain: v.domain,
            braid: v.braid.compose(&w.braid)?.free_reduced(),
            labels,
            range: w.range,
        })
    }

    /// Reduced product.
    pub fn mul(&self, other: &Element) -> Result<Element, ElementError> {
        Ok(self.compose(other)?.reduce())
    }

    pub fn inverse(&self) -> Element {
        let perm_inv = self.braid.permutation().inverse();
        let mut labels = vec![LabelWord::empty(); self.labels.len()];
        for (i, w) in self.labels.iter().enumerate() {
            labels[perm_inv.apply(i + 1) - 1] = w.inverse();
        }
        Element {
            spec: self.spec.clone(),
            domain: self.range.clone(),
            braid: self.braid.inverse(),
            labels,
            range: self.domain.clone(),
        }
    }

    /// Equality in the group.
    pub fn equals(&self, other: &Element) -> bool {
        if !same_spec(&self.spec, &other.spec) || self.roots() != other.roots() {
            return false;
        }
        let a = self.reduce();
        let b = other.reduce();
        a.same_reduced(&b)
    }

    /// Compares two reduced representatives.
    pub fn same_reduced(&self, other: &Element) -> bool {
        self.domain == other.domain
            && self.range == other.range
            && self.braid.equals(&other.braid)
            && self.labels.iter().zip(&other.labels).all(|(x, y)| x.braid_equal(y, &self.spec))
    }

    pub fn is_identity(&self) -> bool {
        let v = self.reduce();
        v.depth() == 0 && v.braid.is_trivial() && v.labels.iter().all(|w| w.is_trivial(&v.spec))
    }

    pub fn random(spec: Arc<SubgroupSpec>, r: usize, max_depth: usize, seed: u64) -> Element {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(spec, r, max_depth, &mut rng)
    }

    pub fn random_with<R: Rng>(spec: Arc<SubgroupSpec>, r: usize, max_depth: usize, rng: &mut R) -> Element {
        let n = spec.arity();
        let d = rng.gen_range(0..=max_depth);
        let domain = random_forest(n, r, d, rng);
        let range = random_forest(n, r, d, rng);
        let l = domain.leaf_count();
        let len = if l > 1 { rng.gen_range(0..=(2 * l).min(12)) } else { 0 };
        let letters = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..l as i32);
                if rng.gen_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect();
        let braid = BraidWord::new(l, letters).expect("letters in range");
        let labels = (0..l).map(|_| random_label(&spec, 2, rng)).collect();
        Element { spec, domain, braid, labels, range }
    }
}

/// The shorter of the free and handle reductions of `b`.
fn shortest_spelling(b: &BraidWord) -> BraidWord {
    let free = b.free_reduced();
    if free.len() < 3 {
        return free;
    }
    let handle = free.handle_reduced();
    if handle.len() < free.len() {
        handle
    } else {
        free
    }
}

pub fn random_label<R: Rng>(spec: &SubgroupSpec, max_len: usize, rng: &mut R) -> LabelWord {
    let g = spec.generator_count();
    if g == 0 {
        return LabelWord::empty();
    }
    let len = rng.gen_range(0..=max_len);
    LabelWord::from_letters(
        (0..len)
            .map(|_| LabelLetter { generator: rng.gen_range(0..g), inverse: rng.gen_bool(0.5) })
            .collect(),
    )
}

pub fn random_forest<R: Rng>(n: usize, r: usize, carets: usize, rng: &mut R) -> Forest {
    let mut f = Forest::trivial(n, r);
    for _ in 0..carets {
        let pos = rng.gen_range(1..=f.leaf_count());
        f = f.expand_at(pos).expect("position in range");
    }
    f
}

/// First leaf position of `f` that is an internal node of `target`.
fn first_growable(f: &Forest, target: &Forest) -> Option<usize> {
    f.leaves()
        .iter()
        .position(|a| !target.is_leaf(a))
        .map(|p| p + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{LeafAddress, Tree};

    fn b(n: usize) -> Arc<SubgroupSpec> {
        Arc::new(SubgroupSpec::braid_group(n))
    }

    fn g1() -> Element {
        let spec = b(2);
        let s1 = spec.label("s1").unwrap();
        let r = Forest::from(Tree::caret(2));
        Element::make(spec, r.clone(), BraidWord::identity(2), vec![s1, LabelWord::empty()], r).unwrap()
    }

    #[test]
    fn validation() {
        let spec = b(2);
        let r = Forest::from(Tree::caret(2));
        let bad = Element::make(spec.clone(), r.clone(), BraidWord::identity(3), vec![LabelWord::empty(); 2], r.clone());
        assert!(matches!(bad, Err(ElementError::Validation(_))));
        let bad = Element::make(spec.clone(), r.clone(), BraidWord::identity(2), vec![], r.clone());
        assert!(bad.is_err());
        let t = Forest::trivial(2, 1);
        assert!(Element::make(spec, t, BraidWord::identity(2), vec![LabelWord::empty(); 2], r).is_err());
    }

    #[test]
    fn expansion_of_g1() {
        let g = g1();
        let e = g.expand_at_range_leaf(1).unwrap();
        let r0 = Forest::from(Tree::caret(2).expand(&[0]).unwrap());
        assert_eq!(e.domain(), &r0);
        assert_eq!(e.range(), &r0);
        assert_eq!(e.braid().letters(), &[1]);
        let spec = g.spec().clone();
        assert_eq!(e.labels(), &[spec.label("s1").unwrap(), spec.label("s1").unwrap(), LabelWord::empty()]);
        assert_eq!(e.reduce_once().unwrap(), g);
        assert!(e.equals(&g));
        assert!(g.reduce_once().is_none());
    }

    #[test]
    fn identity_caret_reduces() {
        let spec = b(3);
        let r = Forest::from(Tree::caret(3));
        let v = Element::make(spec.clone(), r.clone(), BraidWord::identity(3), vec![LabelWord::empty(); 3], r).unwrap();
        assert_eq!(v.reduce(), Element::identity(spec, 1));
    }

    #[test]
    fn g1_products() {
        let g = g1();
        let gg = g.compose(&g).unwrap();
        let spec = g.spec().clone();
        assert_eq!(gg.labels()[0], spec.label("s1 s1").unwrap());
        let inv = g.inverse();
        assert_eq!(inv.labels()[0], spec.label("S1").unwrap());
        assert!(g.compose(&inv).unwrap().is_identity());
        assert!(!g.equals(&Element::identity(spec, 1)));
    }

    #[test]
    fn depth_and_expansion_bookkeeping() {
        let spec = b(3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = Element::random_with(spec, 2, 3, &mut rng);
        let e = v.expand_at_range_leaf(1).unwrap();
        assert_eq!(e.depth(), v.depth() + 1);
        assert!(e.equals(&v));
        let e = v.expand_at_domain_leaf(v.strands()).unwrap();
        assert!(e.equals(&v));
        let leaf = e.domain().leaves()[0].clone();
        assert!(e.domain().is_leaf(&leaf) && leaf.root == LeafAddress::new(0, vec![]).root);
    }

    #[test]
    fn random_is_deterministic() {
        let spec = b(2);
        assert_eq!(Element::random(spec.clone(), 1, 4, 9), Element::random(spec, 1, 4, 9));
    }
}
