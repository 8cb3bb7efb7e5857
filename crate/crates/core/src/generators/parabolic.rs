//! Generating sets of `BV_n(α⁻¹ A_X α)` for parabolic subgroups `A_X ≤ B_n`.

use std::sync::Arc;

use crate::braid::BraidWord;
use crate::element::Element;
use crate::subgroup::{LabelLetter, LabelWord, SubgroupSpec};

use super::rewrite::rewrite_h_parabolic;
use super::{GenError, GeneratorTable};

/// Longest respelling tried when moving labels into the parabolic spec.
const RESPELL_LIMIT: usize = 3;

#[derive(Clone, Debug)]
pub struct ParabolicTable {
    subset: Vec<usize>,
    alpha: BraidWord,
    spec: Arc<SubgroupSpec>,
    members: Vec<(String, Element)>,
}

impl ParabolicTable {
    /// Indices `i` of the chosen `σ_i`, increasing.
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn alpha(&self) -> &BraidWord {
        &self.alpha
    }

    /// `α⁻¹ A_X α`, one generator per chosen `σ_i`.
    pub fn spec(&self) -> &Arc<SubgroupSpec> {
        &self.spec
    }

    /// The `2n` generators, spelled over [`ParabolicTable::spec`].
    pub fn members(&self) -> &[(String, Element)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn parabolic_spec(n: usize, subset: &[usize], alpha: &BraidWord) -> SubgroupSpec {
    let tag: String = subset.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".");
    let plain = alpha.is_trivial();
    let name = if plain { format!("A.{tag}") } else { format!("A.{tag}.conj") };
    let gens = subset
        .iter()
        .map(|&i| {
            let b = alpha.inverse().compose(&BraidWord::sigma(n, i as i32)).and_then(|b| b.compose(alpha));
            let gname = if plain { format!("s{i}") } else { format!("t{i}") };
            (gname, b.expect("same strand count").free_reduced())
        })
        .collect();
    SubgroupSpec::custom(&name, n, gens).expect("names are valid")
}

/// All words over the spec generators of length at most `limit`, shortest first.
fn words(spec: &SubgroupSpec, limit: usize) -> Vec<LabelWord> {
    let letters: Vec<LabelLetter> = (0..spec.generator_count())
        .flat_map(|g| [false, true].map(|inverse| LabelLetter { generator: g, inverse }))
        .collect();
    let mut out = vec![LabelWord::empty()];
    let mut layer = vec![Vec::<LabelLetter>::new()];
    for _ in 0..limit {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                let mut v = w.clone();
                v.push(l);
                let reduced = LabelWord::from_letters(v.clone());
                if reduced.len() == v.len() {
                    out.push(reduced);
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    out
}

fn respell(v: &Element, target: &Arc<SubgroupSpec>, candidates: &[(LabelWord, BraidWord)]) -> Option<Element> {
    let source = v.spec();
    let labels = v
        .labels()
        .iter()
        .map(|l| {
            let b = l.to_braid(source);
            candidates.iter().find(|(_, c)| c.equals(&b)).map(|(w, _)| w.clone())
        })
        .collect::<Option<Vec<_>>>()?;
    v.with_spec(target.clone(), labels).ok()
}

/// The `2n` generators of `BV_n(α⁻¹ A_X α)`: the `x_i`, `h_i` for `σ_i ∉ X`,
/// `h_{m(n)-1}` and `g_i` for `σ_i ∈ X`, conjugated by `h_α` (and the `g_i`
/// first by `g_α`) when `α` is not trivial.
pub fn parabolic_table(n: usize, subset: &[usize], alpha: &BraidWord) -> Result<ParabolicTable, GenError> {
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    if let Some(&bad) = subset.iter().find(|&&i| i == 0 || i >= n) {
        return Err(GenError::Range(bad, format!("not an Artin generator of B_{n}")));
    }
    if alpha.strands() != n {
        return Err(GenError::Range(alpha.strands(), format!("α must lie in B_{n}")));
    }
    let full = Arc::new(SubgroupSpec::braid_group(n));
    let table = GeneratorTable::standard(full.clone());
    let m = table.m();

    let h_alpha = table.braid_pair(table.base(), alpha.widen(m), table.base());
    let alpha_label = LabelWord::from_letters(
        alpha
            .letters()
            .iter()
            .map(|&x| LabelLetter { generator: x.unsigned_abs() as usize - 1, inverse: x < 0 })
            .collect(),
    );
    let mut g_alpha_labels = vec![LabelWord::empty(); n];
    g_alpha_labels[0] = alpha_label;
    let r = crate::trees::Forest::from(crate::trees::Tree::caret(n));
    let g_alpha = Element::make(full.clone(), r.clone(), BraidWord::identity(n), g_alpha_labels, r)?;
    let conj = |v: &Element| -> Result<Element, GenError> { Ok(h_alpha.inverse().mul(v)?.mul(&h_alpha)?) };

    let mut raw: Vec<(String, Element)> = Vec::with_capacity(2 * n);
    for i in 0..n {
        raw.push((format!("x_{i}"), conj(&table.x(i))?));
    }
    for i in (1..n).filter(|i| !subset.contains(i)) {
        raw.push((format!("h_{i}"), conj(&table.h(i))?));
    }
    raw.push((format!("h_{}", m - 1), conj(&table.h(m - 1))?));
    for &i in &subset {
        let g = table.g(i - 1);
        let g = g_alpha.inverse().mul(&g)?.mul(&g_alpha)?;
        raw.push((format!("g_{i}"), conj(&g)?));
    }

    let spec = Arc::new(parabolic_spec(n, &subset, alpha));
    let candidates: Vec<(LabelWord, BraidWord)> =
        words(&spec, RESPELL_LIMIT).into_iter().map(|w| (w.clone(), w.to_braid(&spec))).collect();
    let mut members = Vec::with_capacity(raw.len());
    for (name, v) in raw {
        let v = v.reduce();
        let w = respell(&v, &spec, &candidates)
            .ok_or_else(|| GenError::Internal(format!("labels of {name} leave the parabolic subgroup")))?;
        members.push((name, w));
    }
    Ok(ParabolicTable { subset, alpha: alpha.clone(), spec, members })
}

/// Checks every rewriting of `h_i`, `σ_i ∈ X`, in terms of `e`, the `h_j`
/// outside `X` and the `g_j` inside, after conjugating by `h_α`.
pub fn check_parabolic_rewrites(n: usize, subset: &[usize], alpha: &BraidWord) -> Result<bool, GenError> {
    let full = Arc::new(SubgroupSpec::braid_group(n));
    let table = GeneratorTable::standard(full);
    let m = table.m();
    let h_alpha = table.braid_pair(table.base(), alpha.widen(m), table.base());
    for &i in subset {
        let w = rewrite_h_parabolic(&table, i, subset)?;
        let v = table.evaluate(&w);
        let lhs = h_alpha.inverse().mul(&v)?.mul(&h_alpha)?;
        let rhs = h_alpha.inverse().mul(&table.h(i))?.mul(&h_alpha)?;
        if !v.equals(&table.h(i)) || !lhs.equals(&rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}
