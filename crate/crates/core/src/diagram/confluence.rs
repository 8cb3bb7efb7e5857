//! Empirical local-confluence check: every pair of moves enabled on a random
//! diagram must lead to equal normal forms.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::moves::{apply_move, enabled_moves, normal_form_with, step, MoveError, MoveInstance};
use super::{diagram_equal, Diagram, Slice};
use crate::element::{random_label, Element};
use crate::subgroup::SubgroupSpec;

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub diagram: Diagram,
    pub first: MoveInstance,
    pub second: Option<MoveInstance>,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct ConfluenceReport {
    pub diagrams: usize,
    pub moves: usize,
    pub pairs: usize,
    pub counterexamples: Vec<Counterexample>,
}

pub type ApplyFn = dyn Fn(&Diagram, &MoveInstance) -> Result<Diagram, MoveError>;

/// Checks `count` random diagrams over `B_2` with at most `max_slices` slices.
pub fn check_local_confluence(seed: u64, count: usize, max_slices: usize) -> ConfluenceReport {
    check_local_confluence_with(seed, count, max_slices, &apply_move)
}

pub fn check_local_confluence_with(seed: u64, count: usize, max_slices: usize, apply: &ApplyFn) -> ConfluenceReport {
    let spec = Arc::new(SubgroupSpec::braid_group(2));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ConfluenceReport::default();
    for _ in 0..count {
        let d = random_diagram(&spec, max_slices, &mut rng);
        check_one(&d, apply, &mut report);
    }
    report
}

fn check_one(d: &Diagram, apply: &ApplyFn, report: &mut ConfluenceReport) {
    report.diagrams += 1;
    let moves = enabled_moves(d);
    report.moves += moves.len();
    let mut forms: Vec<(MoveInstance, Diagram)> = Vec::new();
    for m in moves {
        let nf = step(d, &m, apply).and_then(|r| normal_form_with(&r, apply));
        match nf {
            Ok(nf) => forms.push((m, nf)),
            Err(e) => report.counterexamples.push(Counterexample {
                diagram: d.clone(),
                first: m,
                second: None,
                detail: e.to_string(),
            }),
        }
    }
    let k = forms.len();
    report.pairs += k * k.saturating_sub(1) / 2;
    if let Some((m0, nf0)) = forms.first() {
        for (m, nf) in &forms[1..] {
            if !diagram_equal(nf0, nf) {
                report.counterexamples.push(Counterexample {
                    diagram: d.clone(),
                    first: *m0,
                    second: Some(*m),
                    detail: format!("{nf0} vs {nf}"),
                });
            }
        }
    }
}

/// Either a raw random slice sequence or the stacked diagrams of two small
/// random elements.
pub fn random_diagram<R: Rng>(spec: &Arc<SubgroupSpec>, max_slices: usize, rng: &mut R) -> Diagram {
    if rng.gen_bool(0.5) {
        for _ in 0..8 {
            let r = rng.gen_range(1..=2);
            let v = Element::random_with(spec.clone(), r, 2, rng);
            let w = Element::random_with(spec.clone(), r, 2, rng);
            let d = Diagram::from_element(&v).stack(&Diagram::from_element(&w)).expect("same roots");
            if d.len() <= max_slices {
                return d;
            }
        }
    }
    raw_diagram(spec, max_slices, rng)
}

fn raw_diagram<R: Rng>(spec: &Arc<SubgroupSpec>, max_slices: usize, rng: &mut R) -> Diagram {
    let n = spec.arity();
    let sources = rng.gen_range(1..=2);
    let len = rng.gen_range(1..=max_slices.max(1));
    let mut w = sources;
    let mut slices = Vec::with_capacity(len);
    for _ in 0..len {
        let s = loop {
            match rng.gen_range(0..4) {
                0 if w + n - 1 <= 6 => break Slice::Split(rng.gen_range(1..=w)),
                1 if w >= n => break Slice::Merge(rng.gen_range(1..=w + 1 - n)),
                2 if w >= 2 => break Slice::Cross(rng.gen_range(1..w), if rng.gen_bool(0.5) { 1 } else { -1 }),
                3 => {
                    let h = random_label(spec, 2, rng);
                    if !h.is_empty() {
                        break Slice::White(rng.gen_range(1..=w), h);
                    }
                }
                _ => {}
            }
        };
        let (_, i, o) = s.span(n);
        w = w + o - i;
        slices.push(s);
    }
    Diagram::from_parts(spec.clone(), sources, slices)
}
