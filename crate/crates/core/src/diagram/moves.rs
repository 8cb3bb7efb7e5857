//! The six local moves on diagrams and the normal form they define.
//!
//! Moves are oriented so that splits rise, merges sink, whites sink and
//! crossings gather between them:
//!
//! 1. split, braid with a tube, merge  → one strand with a white;
//! 2. merge directly above a split     → parallel wires;
//! 3. white above a crossing           → crossing, white on the far side;
//! 4. two whites on one wire           → one white (path order);
//! 5. crossing above a split, or merge above a crossing → cabled crossings;
//! 6. white above a split, or merge above a white → cabled braid and whites.

use std::fmt;

use thiserror::Error;

use super::{Diagram, Slice};
use crate::braid::BraidWord;
use crate::subgroup::LabelWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("move {kind} does not match at slices {first}, {second}: {reason}")]
    Pattern { kind: MoveKind, first: usize, second: usize, reason: String },
    #[error("move {kind} changed the vertex measure from {before} to {after}")]
    Measure { kind: MoveKind, before: usize, after: usize },
    #[error("no normal form within {0} steps")]
    Limit(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    One,
    Two,
    Three,
    Four,
    Five,
    Six,
}

impl MoveKind {
    pub fn number(self) -> u8 {
        match self {
            MoveKind::One => 1,
            MoveKind::Two => 2,
            MoveKind::Three => 3,
            MoveKind::Four => 4,
            MoveKind::Five => 5,
            MoveKind::Six => 6,
        }
    }

    /// Moves that must strictly lower the number of splits and merges.
    pub fn removes_vertices(self) -> bool {
        matches!(self, MoveKind::One | MoveKind::Two)
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// A move applied to the slices at indices `first < second`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveInstance {
    pub kind: MoveKind,
    pub first: usize,
    pub second: usize,
}

const STEP_LIMIT: usize = 20_000;

/// The first slice after `i` reading the wire at output `offset` of slice `i`.
fn next_touching(d: &Diagram, i: usize, offset: usize) -> Option<usize> {
    let n = d.arity();
    let (p, _, _) = d.slices[i].span(n);
    let mut w = p + offset;
    for (k, s) in d.slices.iter().enumerate().skip(i + 1) {
        let (q, a, b) = s.span(n);
        if w >= q && w < q + a {
            return Some(k);
        }
        if w >= q + a {
            w = w + b - a;
        }
    }
    None
}

fn output_count(s: &Slice, n: usize) -> usize {
    s.span(n).2
}

/// Local moves (2 to 6) in slice order.
fn local_moves(d: &Diagram) -> Vec<MoveInstance> {
    let n = d.arity();
    let mut out = Vec::new();
    for (i, s) in d.slices.iter().enumerate() {
        for off in 0..output_count(s, n).min(2) {
            if matches!(s, Slice::Split(_)) {
                break;
            }
            let Some(k) = next_touching(d, i, off) else { continue };
            let kind = match (s, &d.slices[k]) {
                (Slice::Merge(_), Slice::Split(_)) => MoveKind::Two,
                (Slice::Merge(_), Slice::White(..)) => MoveKind::Six,
                (Slice::Merge(_), Slice::Cross(..)) => MoveKind::Five,
                (Slice::White(..), Slice::Cross(..)) => MoveKind::Three,
                (Slice::White(..), Slice::White(..)) => MoveKind::Four,
                (Slice::White(..), Slice::Split(_)) => MoveKind::Six,
                (Slice::Cross(..), Slice::Split(_)) => MoveKind::Five,
                _ => continue,
            };
            out.push(MoveInstance { kind, first: i, second: k });
        }
    }
    out
}

fn one_moves(d: &Diagram, limit: usize) -> Vec<MoveInstance> {
    let mut out = Vec::new();
    for (i, s) in d.slices.iter().enumerate() {
        if !matches!(s, Slice::Split(_)) {
            continue;
        }
        for (j, t) in d.slices.iter().enumerate().skip(i + 1) {
            if matches!(t, Slice::Merge(_)) && collapse_tube(d, i, j).is_some() {
                out.push(MoveInstance { kind: MoveKind::One, first: i, second: j });
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}

/// Every match site of every move.
pub fn enabled_moves(d: &Diagram) -> Vec<MoveInstance> {
    let mut out = one_moves(d, usize::MAX);
    out.extend(local_moves(d));
    out.sort();
    out
}

fn first_move(d: &Diagram) -> Option<MoveInstance> {
    local_moves(d).into_iter().next().or_else(|| one_moves(d, 1).into_iter().next())
}

fn mismatch(m: &MoveInstance, reason: &str) -> MoveError {
    MoveError::Pattern { kind: m.kind, first: m.first, second: m.second, reason: reason.into() }
}

/// Applies a move, checking its pattern.
pub fn apply_move(d: &Diagram, m: &MoveInstance) -> Result<Diagram, MoveError> {
    let len = d.slices.len();
    if m.first >= m.second || m.second >= len {
        return Err(mismatch(m, "slice indices out of order"));
    }
    if m.kind == MoveKind::One {
        return collapse_tube(d, m.first, m.second).ok_or_else(|| mismatch(m, "no tube between split and merge"));
    }
    let n = d.arity();
    let first = &d.slices[m.first];
    let touches = (0..output_count(first, n)).any(|off| next_touching(d, m.first, off) == Some(m.second));
    if !touches {
        return Err(mismatch(m, "second slice does not read an output of the first"));
    }
    let (e, j) = adjacent(d, m.first, m.second);
    let a = &e.slices[j];
    let b = &e.slices[j + 1];
    let replacement = rewrite(&e, m.kind, a, b).ok_or_else(|| mismatch(m, "slice kinds do not fit the move"))?;
    let mut slices = e.slices[..j].to_vec();
    slices.extend(replacement);
    slices.extend_from_slice(&e.slices[j + 2..]);
    Ok(Diagram::from_parts(e.spec.clone(), e.sources, slices))
}

/// Reorders so that slices `i` and `k` become adjacent; returns the new index of `i`.
fn adjacent(d: &Diagram, i: usize, k: usize) -> (Diagram, usize) {
    let n = d.arity();
    let mut order: Vec<usize> = (0..i).collect();
    if output_count(&d.slices[i], n) == 1 {
        order.extend(i + 1..k);
        order.push(i);
        order.push(k);
    } else {
        order.push(i);
        order.push(k);
        order.extend(i + 1..k);
    }
    order.extend(k + 1..d.slices.len());
    let j = order.iter().position(|&x| x == i).expect("present");
    (d.reordered(&order), j)
}

fn cable_crossings(letters: impl IntoIterator<Item = usize>, sign: i8) -> Vec<Slice> {
    letters.into_iter().map(|p| Slice::Cross(p, sign)).collect()
}

fn label_crossings(d: &Diagram, h: &LabelWord, p: usize) -> Vec<Slice> {
    h.to_braid(&d.spec)
        .letters()
        .iter()
        .map(|&x| Slice::Cross(x.unsigned_abs() as usize + p - 1, x.signum() as i8))
        .collect()
}

fn rewrite(d: &Diagram, kind: MoveKind, a: &Slice, b: &Slice) -> Option<Vec<Slice>> {
    let n = d.arity();
    match (kind, a, b) {
        (MoveKind::Two, Slice::Merge(p), Slice::Split(q)) if p == q => Some(vec![]),
        (MoveKind::Three, Slice::White(p, h), Slice::Cross(c, s)) => {
            let to = if p == c { c + 1 } else if *p == c + 1 { *c } else { return None };
            Some(vec![Slice::Cross(*c, *s), Slice::White(to, h.clone())])
        }
        (MoveKind::Four, Slice::White(p, h1), Slice::White(q, h2)) if p == q => {
            let h = h1.concat(h2);
            Some(if h.is_trivial(&d.spec) { vec![] } else { vec![Slice::White(*p, h)] })
        }
        (MoveKind::Five, Slice::Cross(c, s), Slice::Split(q)) => {
            let mut out;
            if q == c {
                // left output came from the right input
                out = vec![Slice::Split(c + 1)];
                out.extend(cable_crossings(*c..c + n, *s));
            } else if *q == c + 1 {
                out = vec![Slice::Split(*c)];
                out.extend(cable_crossings((*c..c + n).rev(), *s));
            } else {
                return None;
            }
            Some(out)
        }
        (MoveKind::Five, Slice::Merge(m), Slice::Cross(c, s)) => {
            let mut out;
            if m == c {
                out = cable_crossings((*m..m + n).rev(), *s);
                out.push(Slice::Merge(m + 1));
            } else if *m == c + 1 {
                out = cable_crossings(*c..c + n, *s);
                out.push(Slice::Merge(*c));
            } else {
                return None;
            }
            Some(out)
        }
        (MoveKind::Six, Slice::Merge(p), Slice::White(q, h)) if p == q => {
            let mut out = label_crossings(d, h, *p);
            out.extend((0..n).map(|k| Slice::White(p + k, h.clone())));
            out.push(Slice::Merge(*p));
            Some(out)
        }
        (MoveKind::Six, Slice::White(p, h), Slice::Split(q)) if p == q => {
            let mut out = vec![Slice::Split(*p)];
            out.extend(label_crossings(d, h, *p));
            out.extend((0..n).map(|k| Slice::White(p + k, h.clone())));
            Some(out)
        }
        _ => None,
    }
}

/// Move 1 at split `i` and merge `j`: collects everything causally between
/// them, checks it is a braid in which the split's wires form a tube whose
/// strands all carry the tube's inner braid as label, and collapses it.
fn collapse_tube(d: &Diagram, i: usize, j: usize) -> Option<Diagram> {
    let n = d.arity();
    let spec = &d.spec;
    if !matches!(d.slices[i], Slice::Split(_)) || !matches!(d.slices[j], Slice::Merge(_)) || i >= j {
        return None;
    }
    let deps = d.dependencies();
    let mut after = vec![false; d.slices.len()];
    after[i] = true;
    for k in i + 1..=j {
        after[k] = deps[k].iter().any(|&x| after[x]);
    }
    let mut before = vec![false; d.slices.len()];
    before[j] = true;
    for k in (i..j).rev() {
        before[k] = (k + 1..=j).any(|m| before[m] && deps[m].contains(&k));
    }
    if !after[j] || !before[i] {
        return None;
    }
    let between: Vec<usize> = (i + 1..j).filter(|&k| after[k] && before[k]).collect();
    if between.iter().any(|&k| matches!(d.slices[k], Slice::Split(_) | Slice::Merge(_))) {
        return None;
    }
    let mut order: Vec<usize> = (0..i).collect();
    order.extend((i + 1..j).filter(|&k| !after[k]));
    let si = order.len();
    order.push(i);
    order.extend(&between);
    order.push(j);
    order.extend((i + 1..j).filter(|&k| after[k] && !before[k]));
    order.extend(j + 1..d.slices.len());
    let e = d.reordered(&order);
    let mj = si + 1 + between.len();
    let p = e.slices[si].position();
    let q = e.slices[mj].position();
    let wires = e.wire_counts()[si + 1];

    let mut at: Vec<usize> = (0..=wires).collect();
    let mut comps = vec![LabelWord::empty(); wires + 1];
    let mut letters = Vec::new();
    for s in &e.slices[si + 1..mj] {
        match s {
            Slice::Cross(c, k) => {
                letters.push(*k as i32 * *c as i32);
                at.swap(*c, c + 1);
            }
            Slice::White(w, h) => comps[at[*w]] = comps[at[*w]].concat(h),
            _ => unreachable!("checked above"),
        }
    }
    let braid = BraidWord::new(wires, letters).ok()?;
    let perm = braid.permutation();
    if (p..p + n).map(|s| perm.apply(s)).min() != Some(q) {
        return None;
    }
    let (inner, outer) = braid.extract_cable(p, n).ok()?;
    if !(p..p + n).all(|s| comps[s].to_braid(spec).equals(&inner)) {
        return None;
    }
    let pi = outer.permutation();
    let mut whites: Vec<(usize, LabelWord)> = Vec::new();
    for s in 1..=wires {
        if (p + 1..p + n).contains(&s) {
            continue;
        }
        let h = &comps[s];
        if h.is_empty() || (s == p && h.is_trivial(spec)) {
            continue;
        }
        let o = if s < p + n { s } else { s - (n - 1) };
        whites.push((pi.apply(o), h.clone()));
    }
    whites.sort_by_key(|(pos, _)| *pos);
    let mut slices = e.slices[..si].to_vec();
    slices.extend(outer.letters().iter().map(|&x| Slice::Cross(x.unsigned_abs() as usize, x.signum() as i8)));
    slices.extend(whites.into_iter().map(|(pos, h)| Slice::White(pos, h)));
    slices.extend_from_slice(&e.slices[mj + 1..]);
    Some(Diagram::from_parts(e.spec.clone(), e.sources, slices))
}

/// Rewrites to a diagram with no enabled move, checking the vertex measure
/// on every step.
pub fn normal_form(d: &Diagram) -> Result<Diagram, MoveError> {
    normal_form_with(d, &apply_move)
}

pub fn normal_form_with(
    d: &Diagram,
    apply: &dyn Fn(&Diagram, &MoveInstance) -> Result<Diagram, MoveError>,
) -> Result<Diagram, MoveError> {
    let mut cur = d.clone();
    for _ in 0..STEP_LIMIT {
        let Some(m) = first_move(&cur) else {
            return Ok(cur);
        };
        cur = step(&cur, &m, apply)?;
    }
    Err(MoveError::Limit(STEP_LIMIT))
}

/// One checked rewrite step.
pub(crate) fn step(
    d: &Diagram,
    m: &MoveInstance,
    apply: &dyn Fn(&Diagram, &MoveInstance) -> Result<Diagram, MoveError>,
) -> Result<Diagram, MoveError> {
    let before = d.vertex_measure();
    let next = apply(d, m)?;
    let after = next.vertex_measure();
    if after > before || (m.kind.removes_vertices() && after >= before) {
        return Err(MoveError::Measure { kind: m.kind, before, after });
    }
    Ok(next)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::diagram::diagram_equal;
    use crate::element::Element;
    use crate::subgroup::SubgroupSpec;
    use crate::trees::{Forest, Tree};

    fn b2() -> Arc<SubgroupSpec> {
        Arc::new(SubgroupSpec::braid_group(2))
    }

    fn dia(sources: usize, slices: Vec<Slice>) -> Diagram {
        Diagram::new(b2(), sources, slices).unwrap()
    }

    #[test]
    fn empty_has_no_moves() {
        let d = dia(1, vec![]);
        assert!(enabled_moves(&d).is_empty());
        assert_eq!(normal_form(&d).unwrap(), d);
    }

    #[test]
    fn merge_split_cancels() {
        let d = dia(2, vec![Slice::Merge(1), Slice::Split(1)]);
        let ms = enabled_moves(&d);
        assert_eq!(ms, vec![MoveInstance { kind: MoveKind::Two, first: 0, second: 1 }]);
        assert!(apply_move(&d, &ms[0]).unwrap().is_empty());
    }

    #[test]
    fn white_slides_and_merges() {
        let spec = b2();
        let s1 = spec.label("s1").unwrap();
        let d = dia(2, vec![Slice::White(1, s1.clone()), Slice::Cross(1, 1)]);
        let m = enabled_moves(&d)[0];
        assert_eq!(m.kind, MoveKind::Three);
        assert_eq!(apply_move(&d, &m).unwrap().slices(), &[Slice::Cross(1, 1), Slice::White(2, s1.clone())]);
        let d = dia(1, vec![Slice::White(1, s1.clone()), Slice::White(1, s1.clone())]);
        let r = apply_move(&d, &enabled_moves(&d)[0]).unwrap();
        assert_eq!(r.slices(), &[Slice::White(1, spec.label("s1 s1").unwrap())]);
        let d = dia(1, vec![Slice::White(1, s1.clone()), Slice::White(1, s1.inverse())]);
        assert!(normal_form(&d).unwrap().is_empty());
    }

    #[test]
    fn crossing_through_split() {
        let d = dia(2, vec![Slice::Cross(1, 1), Slice::Split(1)]);
        let r = apply_move(&d, &enabled_moves(&d)[0]).unwrap();
        assert_eq!(r.slices(), &[Slice::Split(2), Slice::Cross(1, 1), Slice::Cross(2, 1)]);
        let d = dia(2, vec![Slice::Cross(1, -1), Slice::Split(2)]);
        let r = apply_move(&d, &enabled_moves(&d)[0]).unwrap();
        assert_eq!(r.slices(), &[Slice::Split(1), Slice::Cross(2, -1), Slice::Cross(1, -1)]);
        let d = dia(3, vec![Slice::Merge(1), Slice::Cross(1, 1)]);
        let r = apply_move(&d, &enabled_moves(&d)[0]).unwrap();
        assert_eq!(r.slices(), &[Slice::Cross(2, 1), Slice::Cross(1, 1), Slice::Merge(2)]);
    }

    #[test]
    fn expanded_g1_has_one_tube() {
        let spec = b2();
        let r = Forest::from(Tree::caret(2));
        let g = Element::make(spec.clone(), r.clone(), BraidWord::identity(2), vec![spec.label("s1").unwrap(), LabelWord::empty()], r)
            .unwrap();
        let d = Diagram::from_element(&g.expand_at_range_leaf(1).unwrap());
        let ones: Vec<_> = enabled_moves(&d).into_iter().filter(|m| m.kind == MoveKind::One).collect();
        assert_eq!(ones.len(), 1);
        let nf = normal_form(&d).unwrap();
        assert!(diagram_equal(&nf, &Diagram::from_element(&g)));
        assert!(nf.to_element().unwrap().equals(&g));
    }

    #[test]
    fn mismatched_pattern_is_reported() {
        let d = dia(2, vec![Slice::Cross(1, 1), Slice::Cross(1, 1)]);
        let m = MoveInstance { kind: MoveKind::Two, first: 0, second: 1 };
        assert!(matches!(apply_move(&d, &m), Err(MoveError::Pattern { .. })));
    }
}
