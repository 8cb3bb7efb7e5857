//! Braided strand diagrams as layered wiring diagrams.
//!
//! A diagram is a sequence of slices acting on a row of wires. Positions are
//! 1-based wire indices at the moment the slice applies. Rotation data is the
//! left-to-right order of a split's outputs or a merge's inputs; crossing data
//! is the sign of each `Cross`.

pub mod confluence;
pub mod moves;
pub mod svg;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::braid::BraidWord;
use crate::element::{Element, ElementError};
use crate::subgroup::{LabelWord, SubgroupSpec};
use crate::trees::{Forest, Node};

pub use confluence::{check_local_confluence, check_local_confluence_with, random_diagram, ConfluenceReport};
pub use moves::{apply_move, enabled_moves, normal_form, normal_form_with, MoveError, MoveInstance, MoveKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("slice {index} does not fit on {wires} wires")]
    Wire { index: usize, wires: usize },
    #[error("not an element: {0}")]
    NotAnElement(String),
    #[error("cannot stack: {0} sinks on {1} sources")]
    Stack(usize, usize),
    #[error(transparent)]
    Element(#[from] ElementError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Slice {
    Split(usize),
    Merge(usize),
    White(usize, LabelWord),
    Cross(usize, i8),
}

impl Slice {
    pub fn position(&self) -> usize {
        match self {
            Slice::Split(p) | Slice::Merge(p) | Slice::White(p, _) | Slice::Cross(p, _) => *p,
        }
    }

    /// `(position, input width, output width)`.
    pub fn span(&self, n: usize) -> (usize, usize, usize) {
        match self {
            Slice::Split(p) => (*p, 1, n),
            Slice::Merge(p) => (*p, n, 1),
            Slice::White(p, _) => (*p, 1, 1),
            Slice::Cross(p, _) => (*p, 2, 2),
        }
    }

    pub(crate) fn with_position(&self, p: usize) -> Slice {
        match self {
            Slice::Split(_) => Slice::Split(p),
            Slice::Merge(_) => Slice::Merge(p),
            Slice::White(_, h) => Slice::White(p, h.clone()),
            Slice::Cross(_, s) => Slice::Cross(p, *s),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Slice::Split(_) => 0,
            Slice::Cross(..) | Slice::White(..) => 1,
            Slice::Merge(_) => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    spec: Arc<SubgroupSpec>,
    sources: usize,
    sinks: usize,
    slices: Vec<Slice>,
}

impl Diagram {
    pub fn new(spec: Arc<SubgroupSpec>, sources: usize, slices: Vec<Slice>) -> Result<Diagram, DiagramError> {
        let n = spec.arity();
        let mut w = sources;
        for (index, s) in slices.iter().enumerate() {
            let (p, i, o) = s.span(n);
            let ok = p >= 1
                && p + i - 1 <= w
                && match s {
                    Slice::Cross(_, k) => *k == 1 || *k == -1,
                    Slice::White(_, h) => h.is_valid_for(&spec),
                    _ => true,
                };
            if !ok {
                return Err(DiagramError::Wire { index, wires: w });
            }
            w = w + o - i;
        }
        Ok(Diagram { spec, sources, sinks: w, slices })
    }

    pub(crate) fn from_parts(spec: Arc<SubgroupSpec>, sources: usize, slices: Vec<Slice>) -> Diagram {
        let d = Diagram::new(spec, sources, slices);
        debug_assert!(d.is_ok(), "{d:?}");
        d.expect("rewrites keep wire bookkeeping")
    }

    pub fn spec(&self) -> &Arc<SubgroupSpec> {
        &self.spec
    }

    pub fn arity(&self) -> usize {
        self.spec.arity()
    }

    pub fn sources(&self) -> usize {
        self.sources
    }

    pub fn sinks(&self) -> usize {
        self.sinks
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    /// Number of splits plus merges.
    pub fn vertex_measure(&self) -> usize {
        self.slices.iter().filter(|s| matches!(s, Slice::Split(_) | Slice::Merge(_))).count()
    }

    /// Wire count before each slice, plus the final count.
    pub fn wire_counts(&self) -> Vec<usize> {
        let n = self.arity();
        let mut out = Vec::with_capacity(self.slices.len() + 1);
        let mut w = self.sources;
        out.push(w);
        for s in &self.slices {
            let (_, i, o) = s.span(n);
            w = w + o - i;
            out.push(w);
        }
        out
    }

    /// `self` above `other`.
    pub fn stack(&self, other: &Diagram) -> Result<Diagram, DiagramError> {
        if self.sinks != other.sources {
            return Err(DiagramError::Stack(self.sinks, other.sources));
        }
        let mut slices = self.slices.clone();
        slices.extend(other.slices.iter().cloned());
        Ok(Diagram { spec: self.spec.clone(), sources: self.sources, sinks: other.sinks, slices })
    }

    pub fn from_element(v: &Element) -> Diagram {
        let mut slices = Vec::new();
        split_sequence(v.domain(), &mut slices);
        for &x in v.braid().letters() {
            slices.push(Slice::Cross(x.unsigned_abs() as usize, x.signum() as i8));
        }
        for (i, h) in v.labels().iter().enumerate() {
            if !h.is_empty() {
                slices.push(Slice::White(i + 1, h.clone()));
            }
        }
        let mut merges = Vec::new();
        split_sequence(v.range(), &mut merges);
        slices.extend(merges.into_iter().rev().map(|s| Slice::Merge(s.position())));
        Diagram::from_parts(v.spec().clone(), v.roots(), slices)
    }

    /// Cuts a normal form into an element.
    pub fn to_element(&self) -> Result<Element, DiagramError> {
        if self.sources != self.sinks {
            return Err(DiagramError::NotAnElement(format!("{} sources, {} sinks", self.sources, self.sinks)));
        }
        let nf = normal_form(self).map_err(|e| DiagramError::NotAnElement(e.to_string()))?;
        let cut = nf.cut().ok_or_else(|| DiagramError::NotAnElement("normal form is not cut-shaped".into()))?;
        Ok(Element::make(self.spec.clone(), cut.domain, cut.braid, cut.labels, cut.range)?)
    }

    /// Reads the diagram as (domain, braid, labels, range) when its canonical
    /// linearization has all splits first and all merges last.
    pub fn cut(&self) -> Option<Cut> {
        let n = self.arity();
        let lin = self.linearize(|s, p| (s.rank(), p));
        let ranks: Vec<u8> = lin.iter().map(Slice::rank).collect();
        if ranks.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        let mut domain = Forest::trivial(n, self.sources);
        let mut k = 0;
        while let Some(Slice::Split(p)) = lin.get(k) {
            domain = domain.expand_at(*p).ok()?;
            k += 1;
        }
        let l = domain.leaf_count();
        let mid_start = k;
        while matches!(lin.get(k), Some(Slice::Cross(..) | Slice::White(..))) {
            k += 1;
        }
        let mid = &lin[mid_start..k];
        let mut range = Forest::trivial(n, self.sinks);
        for s in lin[k..].iter().rev() {
            range = range.expand_at(s.position()).ok()?;
        }
        if range.leaf_count() != l {
            return None;
        }
        let letters: Vec<i32> = mid
            .iter()
            .filter_map(|s| match s {
                Slice::Cross(p, k) => Some(*k as i32 * *p as i32),
                _ => None,
            })
            .collect();
        let braid = BraidWord::new(l.max(1), letters).ok()?;
        let mut labels = vec![LabelWord::empty(); l];
        for (k, s) in mid.iter().enumerate() {
            if let Slice::White(p, h) = s {
                let mut pos = *p;
                for t in &mid[k + 1..] {
                    if let Slice::Cross(c, _) = t {
                        if pos == *c {
                            pos += 1;
                        } else if pos == *c + 1 {
                            pos -= 1;
                        }
                    }
                }
                labels[pos - 1] = labels[pos - 1].concat(h);
            }
        }
        Some(Cut { domain, braid, labels, range })
    }

    /// Direct predecessors of every slice.
    pub(crate) fn dependencies(&self) -> Vec<Vec<usize>> {
        let n = self.arity();
        let mut producer: Vec<Option<usize>> = vec![None; self.sources];
        let mut deps = Vec::with_capacity(self.slices.len());
        for (k, s) in self.slices.iter().enumerate() {
            let (p, i, o) = s.span(n);
            let mut d: Vec<usize> = producer[p - 1..p - 1 + i].iter().flatten().copied().collect();
            d.sort_unstable();
            d.dedup();
            deps.push(d);
            producer.splice(p - 1..p - 1 + i, std::iter::repeat_n(Some(k), o));
        }
        deps
    }

    /// Reorders the slices into `order`, a linear extension of the
    /// dependency order, adjusting positions by far-commutation.
    pub(crate) fn reordered(&self, order: &[usize]) -> Diagram {
        let n = self.arity();
        let mut items: Vec<(usize, Slice)> = self.slices.iter().cloned().enumerate().collect();
        let rank: Vec<usize> = {
            let mut r = vec![0; order.len()];
            for (k, &id) in order.iter().enumerate() {
                r[id] = k;
            }
            r
        };
        // insertion sort by target rank, one exchange at a time
        for k in 1..items.len() {
            let mut j = k;
            while j > 0 && rank[items[j - 1].0] > rank[items[j].0] {
                let (first, second) = exchange(&items[j - 1].1, &items[j].1, n).expect("linear extension");
                let (ida, idb) = (items[j - 1].0, items[j].0);
                items[j - 1] = (idb, first);
                items[j] = (ida, second);
                j -= 1;
            }
        }
        let slices = items.into_iter().map(|(_, s)| s).collect();
        Diagram { spec: self.spec.clone(), sources: self.sources, sinks: self.sinks, slices }
    }

    /// Greedy topological linearization choosing the available slice with
    /// the least `key(slice, current position)`.
    pub(crate) fn linearize<K: Ord>(&self, key: impl Fn(&Slice, usize) -> K) -> Vec<Slice> {
        let n = self.arity();
        let mut rem: Vec<Slice> = self.slices.clone();
        let mut out = Vec::with_capacity(rem.len());
        while !rem.is_empty() {
            let mut best: Option<(K, usize, Slice)> = None;
            for k in 0..rem.len() {
                if let Some(s) = bubble_front(&rem, k, n) {
                    let kk = key(&s, s.position());
                    if best.as_ref().is_none_or(|(b, _, _)| kk < *b) {
                        best = Some((kk, k, s));
                    }
                }
            }
            let (_, k, s) = best.expect("some slice is always available");
            rem = remove_bubbled(&rem, k, n);
            out.push(s);
        }
        out
    }

    /// Canonical representative of the far-commutation class.
    pub fn canonical(&self) -> Diagram {
        let slices = self.linearize(|_, p| p);
        Diagram { spec: self.spec.clone(), sources: self.sources, sinks: self.sinks, slices }
    }
}

/// Exchanges adjacent slices `a; b` into `b'; a'` when `b` does not consume
/// an output of `a`.
pub(crate) fn exchange(a: &Slice, b: &Slice, n: usize) -> Option<(Slice, Slice)> {
    let (pa, ia, oa) = a.span(n);
    let (pb, ib, ob) = b.span(n);
    if pb >= pa + oa {
        Some((b.with_position(pb + ia - oa), a.clone()))
    } else if pb + ib <= pa {
        Some((b.clone(), a.with_position(pa + ob - ib)))
    } else {
        None
    }
}

/// The slice at `k` as it would read if moved to the front of `rem`.
fn bubble_front(rem: &[Slice], k: usize, n: usize) -> Option<Slice> {
    let mut s = rem[k].clone();
    for j in (0..k).rev() {
        let (b, _) = exchange(&rem[j], &s, n)?;
        s = b;
    }
    Some(s)
}

fn remove_bubbled(rem: &[Slice], k: usize, n: usize) -> Vec<Slice> {
    let mut v = rem.to_vec();
    for j in (0..k).rev() {
        let (b, a) = exchange(&v[j], &v[j + 1], n).expect("checked");
        v[j] = b;
        v[j + 1] = a;
    }
    v.remove(0);
    v
}

/// Splits realizing a forest from its trivial roots, in preorder.
fn split_sequence(f: &Forest, out: &mut Vec<Slice>) {
    fn walk(node: &Node, pos: usize, out: &mut Vec<Slice>) {
        if let Node::Caret(ch) = node {
            out.push(Slice::Split(pos));
            let mut p = pos;
            for c in ch {
                walk(c, p, out);
                p += c.leaf_count();
            }
        }
    }
    let mut pos = 1;
    for r in &f.roots {
        walk(r, pos, out);
        pos += r.leaf_count();
    }
}

/// A diagram read as a generalized tree-pair.
#[derive(Clone, Debug)]
pub struct Cut {
    pub domain: Forest,
    pub braid: BraidWord,
    pub labels: Vec<LabelWord>,
    pub range: Forest,
}

impl Cut {
    fn same(&self, other: &Cut, spec: &SubgroupSpec) -> bool {
        self.domain == other.domain
            && self.range == other.range
            && self.braid.equals(&other.braid)
            && self.labels.len() == other.labels.len()
            && self.labels.iter().zip(&other.labels).all(|(a, b)| a.braid_equal(b, spec))
    }
}

/// Equality of diagrams: far-commutation classes with white labels compared
/// as braids. Diagrams whose linearization is cut-shaped are compared as
/// tree-pairs, which also identifies isotopic crossing regions.
pub fn diagram_equal(a: &Diagram, b: &Diagram) -> bool {
    if a.spec != b.spec || a.sources != b.sources || a.sinks != b.sinks {
        return false;
    }
    if let (Some(x), Some(y)) = (a.cut(), b.cut()) {
        return x.same(&y, &a.spec);
    }
    let (x, y) = (a.canonical(), b.canonical());
    x.slices.len() == y.slices.len()
        && x.slices.iter().zip(&y.slices).all(|(s, t)| match (s, t) {
            (Slice::White(p, h), Slice::White(q, k)) => p == q && h.braid_equal(k, &a.spec),
            _ => s == t,
        })
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "diagram{{n={}, sources={}, sinks={};", self.arity(), self.sources, self.sinks)?;
        for s in &self.slices {
            match s {
                Slice::Split(p) => write!(f, " split {p}")?,
                Slice::Merge(p) => write!(f, " merge {p}")?,
                Slice::Cross(p, k) => write!(f, " {}{p}", if *k > 0 { 's' } else { 'S' })?,
                Slice::White(p, h) => write!(f, " white {p} [{}]", h.display(&self.spec))?,
            }
            f.write_str(";")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::Tree;

    fn b2() -> Arc<SubgroupSpec> {
        Arc::new(SubgroupSpec::braid_group(2))
    }

    #[test]
    fn wire_bookkeeping() {
        let spec = b2();
        assert!(Diagram::new(spec.clone(), 1, vec![Slice::Merge(1)]).is_err());
        let d = Diagram::new(spec.clone(), 1, vec![Slice::Split(1), Slice::Split(2), Slice::Cross(2, 1)]).unwrap();
        assert_eq!(d.sinks(), 3);
        assert!(Diagram::new(spec, 2, vec![Slice::Cross(2, 1)]).is_err());
    }

    #[test]
    fn g1_diagram() {
        let spec = b2();
        let r = Forest::from(Tree::caret(2));
        let g = Element::make(spec.clone(), r.clone(), BraidWord::identity(2), vec![spec.label("s1").unwrap(), LabelWord::empty()], r).unwrap();
        let d = Diagram::from_element(&g);
        assert_eq!(d.slices(), &[Slice::Split(1), Slice::White(1, spec.label("s1").unwrap()), Slice::Merge(1)]);
        assert!(Diagram::from_element(&Element::identity(spec, 1)).is_empty());
    }

    #[test]
    fn far_commutation_equality() {
        let spec = Arc::new(SubgroupSpec::braid_group(2));
        let a = Diagram::new(spec.clone(), 5, vec![Slice::Cross(1, 1), Slice::Cross(4, 1)]).unwrap();
        let b = Diagram::new(spec.clone(), 5, vec![Slice::Cross(4, 1), Slice::Cross(1, 1)]).unwrap();
        assert!(diagram_equal(&a, &b));
        let c = Diagram::new(spec.clone(), 2, vec![Slice::Cross(1, 1)]).unwrap();
        let d = Diagram::new(spec, 2, vec![Slice::Cross(1, -1)]).unwrap();
        assert!(!diagram_equal(&c, &d));
    }

    #[test]
    fn exchange_shifts_positions() {
        // split at 1 then cross at 4 on 4 wires: cross moves above as 3
        let (b, a) = exchange(&Slice::Split(1), &Slice::Cross(4, 1), 2).unwrap();
        assert_eq!((b, a), (Slice::Cross(3, 1), Slice::Split(1)));
        let (b, a) = exchange(&Slice::Split(3), &Slice::Cross(1, 1), 2).unwrap();
        assert_eq!((b, a), (Slice::Cross(1, 1), Slice::Split(3)));
        assert!(exchange(&Slice::Split(1), &Slice::Cross(2, 1), 2).is_none());
        let (b, a) = exchange(&Slice::Merge(2), &Slice::Split(1), 2).unwrap();
        assert_eq!((b, a), (Slice::Split(1), Slice::Merge(3)));
    }

    #[test]
    fn reorder_matches_linearization() {
        let spec = b2();
        let d = Diagram::new(spec, 2, vec![Slice::Split(2), Slice::Split(1), Slice::Cross(1, 1), Slice::Merge(3)]).unwrap();
        let r = d.reordered(&[1, 0, 2, 3]);
        assert_eq!(r.slices()[0], Slice::Split(1));
        assert_eq!(r.slices()[1], Slice::Split(3));
        assert!(diagram_equal(&r, &d));
    }
}
