//! The acceptance suite behind `bvn selftest`.
//!
//! Each criterion returns an [`Outcome`]; none of them panics on failure.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use bvn_core::diagram::{check_local_confluence, normal_form};
use bvn_core::generators::rewrite::{pieces, trees};
use bvn_core::generators::{
    check_parabolic_rewrites, decompose, parabolic_table, rewrite_h_large, rewrite_h_parabolic, rewrite_h_small,
    Rewriting, Target,
};
use bvn_core::{
    diagram_equal, BraidWord, Diagram, Element, Gen, GeneratorTable, LabelWord, Slice, SubgroupSpec, Tree,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::grammar::{format_element, parse_element, Specs};

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

/// Sample sizes. `Full` is the acceptance size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Full,
    Quick,
}

impl Scale {
    fn of(self, full: usize) -> usize {
        match self {
            Scale::Full => full,
            Scale::Quick => (full / 10).max(1),
        }
    }
}

/// Tally of checks with the first failure kept for the report.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn outcome(self, id: u8, name: &'static str, summary: String) -> Outcome {
        let passed = self.failures == 0 && self.checks > 0;
        let detail = match self.first {
            None => format!("{summary}, {} checks, 0 failures", self.checks),
            Some(f) => format!("{summary}, {} checks, {} failures; first: {f}", self.checks, self.failures),
        };
        Outcome { id, name, passed, detail }
    }
}

/// Criteria 1 to 9 followed by the in-process part of criterion 10.
pub fn run_all(seed: u64, scale: Scale) -> Vec<Outcome> {
    vec![
        braid_kernel(seed, scale),
        group_axioms(seed, scale),
        reduced_forms(seed, scale),
        confluence(seed, scale),
        bijection(seed, scale),
        finite_generation(seed, scale),
        label_identities(),
        parabolic(seed),
        ribbons(),
        grammar_round_trip(seed, scale),
    ]
}

fn grid() -> Vec<(Arc<SubgroupSpec>, usize)> {
    let mut out = Vec::new();
    for n in [2, 3] {
        for spec in [SubgroupSpec::identity(n), SubgroupSpec::braid_group(n)] {
            let spec = Arc::new(spec);
            for r in [1, 2] {
                out.push((spec.clone(), r));
            }
        }
    }
    out
}

fn random_letter<R: Rng>(l: usize, rng: &mut R) -> i32 {
    let i = rng.gen_range(1..l as i32);
    if rng.gen_bool(0.5) {
        i
    } else {
        -i
    }
}

/// A defining relator of `B_l` (or a cancelling pair), cyclically rotated
/// and possibly inverted.
fn random_relator<R: Rng>(l: usize, rng: &mut R) -> Vec<i32> {
    let i = rng.gen_range(1..l as i32);
    let mut rel = match rng.gen_range(0..3) {
        0 if i + 1 < l as i32 => vec![i, i + 1, i, -(i + 1), -i, -(i + 1)],
        1 => {
            let far: Vec<i32> = (1..l as i32).filter(|j| (j - i).abs() >= 2).collect();
            if far.is_empty() {
                vec![i, -i]
            } else {
                let j = far[rng.gen_range(0..far.len())];
                vec![i, j, -i, -j]
            }
        }
        _ => vec![i, -i],
    };
    let k = rng.gen_range(0..rel.len());
    rel.rotate_left(k);
    if rng.gen_bool(0.5) {
        rel = rel.iter().rev().map(|x| -x).collect();
    }
    rel
}

/// 1: relations, random trivial words, random words with nontrivial permutation.
pub fn braid_kernel(seed: u64, scale: Scale) -> Outcome {
    let mut t = Tally::default();
    for l in 2..=6usize {
        for i in 1..l as i32 {
            for j in 1..l as i32 {
                let w = if (i - j).abs() == 1 {
                    vec![i, j, i, -j, -i, -j]
                } else if (i - j).abs() >= 2 {
                    vec![i, j, -i, -j]
                } else {
                    vec![i, -i]
                };
                let b = BraidWord::new(l, w.clone()).expect("letters in range");
                t.check(b.is_trivial(), || format!("relator {w:?} on {l} strands"));
                if (i - j).abs() == 1 {
                    let c = BraidWord::new(l, vec![i, j, -i, -j]).expect("letters in range");
                    t.check(!c.is_trivial(), || format!("σ{i} σ{j} commute on {l} strands"));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..scale.of(1000) {
        let l = rng.gen_range(2..=6);
        let mut w: Vec<i32> = Vec::new();
        for _ in 0..rng.gen_range(1..=6) {
            let rel = random_relator(l, &mut rng);
            let at = rng.gen_range(0..=w.len());
            w.splice(at..at, rel);
        }
        // conjugate by a random word
        let c: Vec<i32> = (0..rng.gen_range(0..4)).map(|_| random_letter(l, &mut rng)).collect();
        let mut full = c.clone();
        full.extend(&w);
        full.extend(c.iter().rev().map(|x| -x));
        let b = BraidWord::new(l, full).expect("letters in range");
        t.check(b.is_trivial(), || format!("trivial word {b} on {l} strands"));
    }
    for _ in 0..scale.of(1000) {
        let l = rng.gen_range(2..=6);
        let len = rng.gen_range(1..=16);
        let mut w: Vec<i32> = (0..len).map(|_| random_letter(l, &mut rng)).collect();
        if BraidWord::new(l, w.clone()).expect("letters in range").permutation().is_identity() {
            w.push(random_letter(l, &mut rng));
        }
        let b = BraidWord::new(l, w).expect("letters in range");
        t.check(!b.is_trivial() && !b.equals(&BraidWord::identity(l)), || format!("{b} reported trivial"));
    }
    t.outcome(1, "braid kernel soundness", "relations for l <= 6, random trivial and nontrivial words".into())
}

/// 2: associativity, identity and inverses on random triples.
pub fn group_axioms(seed: u64, scale: Scale) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let mut t = Tally::default();
    for (spec, r) in grid() {
        let id = Element::identity(spec.clone(), r);
        for _ in 0..scale.of(200) {
            let u = Element::random_with(spec.clone(), r, 3, &mut rng);
            let v = Element::random_with(spec.clone(), r, 3, &mut rng);
            let w = Element::random_with(spec.clone(), r, 3, &mut rng);
            let ctx = || format!("{} / {} / {}", format_element(&u), format_element(&v), format_element(&w));
            let left = u.mul(&v).and_then(|x| x.mul(&w));
            let right = v.mul(&w).and_then(|x| u.mul(&x));
            let assoc = matches!((&left, &right), (Ok(a), Ok(b)) if a.equals(b));
            t.check(assoc, || format!("associativity: {}", ctx()));
            let unit = u.mul(&id).is_ok_and(|x| x.equals(&u)) && id.mul(&u).is_ok_and(|x| x.equals(&u));
            t.check(unit, || format!("identity: {}", ctx()));
            let inv = u.mul(&u.inverse()).is_ok_and(|x| x.is_identity())
                && u.inverse().mul(&u).is_ok_and(|x| x.is_identity());
            t.check(inv, || format!("inverse: {}", ctx()));
        }
    }
    t.outcome(2, "group axioms", format!("{} triples per (n, r, H)", scale.of(200)))
}

/// 3: two random expansion sequences reduce to the same form.
pub fn reduced_forms(seed: u64, scale: Scale) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    let mut t = Tally::default();
    let grid = grid();
    for k in 0..scale.of(200) {
        let (spec, r) = &grid[k % grid.len()];
        let v = Element::random_with(spec.clone(), *r, 3, &mut rng);
        let mut a = v.clone();
        let mut b = v.clone();
        for _ in 0..rng.gen_range(0..=5) {
            a = if rng.gen_bool(0.5) {
                a.expand_at_range_leaf(rng.gen_range(1..=a.strands()))
            } else {
                a.expand_at_domain_leaf(rng.gen_range(1..=a.strands()))
            }
            .expect("leaf in range");
        }
        for _ in 0..rng.gen_range(0..=5) {
            b = if rng.gen_bool(0.5) {
                b.expand_at_range_leaf(rng.gen_range(1..=b.strands()))
            } else {
                b.expand_at_domain_leaf(rng.gen_range(1..=b.strands()))
            }
            .expect("leaf in range");
        }
        let (ra, rb) = (a.reduce(), b.reduce());
        t.check(ra.same_reduced(&rb), || format!("{} and {}", format_element(&ra), format_element(&rb)));
    }
    t.outcome(3, "unique reduced form", format!("{} elements", scale.of(200)))
}

/// 4: every pair of enabled moves on random diagrams joins.
pub fn confluence(seed: u64, scale: Scale) -> Outcome {
    let count = scale.of(500);
    let r = check_local_confluence(seed, count, 12);
    let mut t = Tally::default();
    t.check(r.diagrams == count, || format!("{} of {count} diagrams checked", r.diagrams));
    // one check per joined move pair
    t.checks += r.pairs.saturating_sub(r.counterexamples.len());
    for c in &r.counterexamples {
        t.check(false, || format!("{}: {}", c.diagram, c.detail));
    }
    t.outcome(
        4,
        "local confluence",
        format!("{} diagrams, {} moves, {} counterexamples", r.diagrams, r.moves, r.counterexamples.len()),
    )
}

/// Whites per wire of a cut-shaped normal form.
fn whites_per_path(d: &Diagram) -> usize {
    let n = d.arity();
    let mut wires = vec![0usize; d.sources()];
    let mut most = 0;
    for s in d.slices() {
        let (p, i, o) = s.span(n);
        match s {
            Slice::White(..) => {
                wires[p - 1] += 1;
                most = most.max(wires[p - 1]);
            }
            Slice::Cross(..) => wires.swap(p - 1, p),
            _ => {
                let carried = wires[p - 1..p - 1 + i].iter().copied().max().unwrap_or(0);
                wires.splice(p - 1..p - 1 + i, std::iter::repeat_n(carried, o));
            }
        }
    }
    most
}

/// 5: diagram to element round trip and the shape of normal forms.
pub fn bijection(seed: u64, scale: Scale) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(5));
    let mut t = Tally::default();
    let grid = grid();
    for k in 0..scale.of(200) {
        let (spec, r) = &grid[k % grid.len()];
        let v = Element::random_with(spec.clone(), *r, 3, &mut rng);
        let mut e = v.clone();
        for _ in 0..rng.gen_range(0..3) {
            e = e.expand_at_range_leaf(rng.gen_range(1..=e.strands())).expect("leaf in range");
        }
        let ctx = || format_element(&v);
        let d = Diagram::from_element(&e);
        match d.to_element() {
            Ok(back) => t.check(back.equals(&v) && back.same_reduced(&v.reduce()), || format!("round trip {}", ctx())),
            Err(err) => t.check(false, || format!("{}: {err}", ctx())),
        }
        match normal_form(&d) {
            Ok(nf) => {
                let cut = nf.cut();
                t.check(cut.is_some(), || format!("normal form of {} merges before it splits", ctx()));
                t.check(whites_per_path(&nf) <= 1, || format!("normal form of {} has two whites on a path", ctx()));
                let plain = nf.slices().iter().all(|s| !matches!(s, Slice::White(_, h) if h.is_trivial(spec)));
                t.check(plain, || format!("normal form of {} keeps a trivial white", ctx()));
                if let Some(c) = cut {
                    let red = v.reduce();
                    t.check(c.domain == *red.domain() && c.range == *red.range(), || {
                        format!("crossings of {} sit outside the reduced trees", ctx())
                    });
                }
                let direct = normal_form(&Diagram::from_element(&v));
                t.check(direct.is_ok_and(|x| diagram_equal(&x, &nf)), || format!("two normal forms for {}", ctx()));
            }
            Err(err) => t.check(false, || format!("{}: {err}", ctx())),
        }
    }
    t.outcome(5, "diagram bijection", format!("{} elements", scale.of(200)))
}

/// 6: decompositions into exactly `2n` generators evaluate back.
pub fn finite_generation(seed: u64, scale: Scale) -> Outcome {
    let mut t = Tally::default();
    let mut longest = 0;
    for n in [2, 3] {
        let table = GeneratorTable::standard(Arc::new(SubgroupSpec::braid_group(n)));
        let set = table.minimal_set();
        t.check(set.len() == 2 * n, || format!("{} generators for n={n}", set.len()));
        for k in 0..scale.of(100) {
            let v = Element::random(table.spec().clone(), 1, 6, seed.wrapping_mul(1000).wrapping_add(k as u64));
            let ctx = || format_element(&v);
            let r = match decompose(&table, &v).and_then(|w| Rewriting::new(&table, &w, Target::Minimal)) {
                Ok(r) => r,
                Err(e) => {
                    t.check(false, || format!("{}: {e}", ctx()));
                    continue;
                }
            };
            let flat = r.expand();
            longest = longest.max(flat.len());
            t.check(flat.support().iter().all(|g| set.contains(g)), || format!("{} leaves the set", ctx()));
            t.check(r.evaluate().equals(&v), || format!("{} does not evaluate back", ctx()));
            // the flat word itself, multiplied letter by letter
            if n == 2 || k < 3 {
                t.check(table.evaluate(&flat).equals(&v), || format!("flat word of {}", ctx()));
            }
        }
    }
    let table = GeneratorTable::standard(Arc::new(SubgroupSpec::identity(2)));
    let set = table.bv_set();
    let names: Vec<String> = set.iter().map(|&g| table.name(g)).collect();
    t.check(names == ["x_0", "x_1", "h_1", "h_5"], || format!("n=2, H=Id set is {names:?}"));
    for k in 0..scale.of(100) {
        let v = Element::random(table.spec().clone(), 1, 6, seed.wrapping_mul(2000).wrapping_add(k as u64));
        let ok = decompose(&table, &v).and_then(|w| Rewriting::new(&table, &w, Target::Bv)).is_ok_and(|r| {
            let flat = r.expand();
            flat.support().iter().all(|g| set.contains(g)) && table.evaluate(&flat).equals(&v)
        });
        t.check(ok, || format!("n=2, H=Id: {}", format_element(&v)));
    }
    t.outcome(
        6,
        "finite generation by 2n elements",
        format!("n=2,3 with H=B_n and n=2 with H=Id, longest word {longest} letters"),
    )
}

fn labelled(t: &GeneratorTable, braid: Vec<i32>, labels: &[(usize, LabelWord)]) -> Element {
    let m = t.m();
    let mut ls = vec![LabelWord::empty(); m];
    for (pos, w) in labels {
        ls[*pos] = w.clone();
    }
    let base = t.base().clone();
    Element::make(t.spec().clone(), base.clone().into(), BraidWord::new(m, braid).expect("in range"), ls, base.into())
        .expect("valid element")
}

/// 7: the label-moving and crossing-shifting identities.
pub fn label_identities() -> Outcome {
    let mut t = Tally::default();
    for n in 2..=4 {
        let table = GeneratorTable::standard(Arc::new(SubgroupSpec::braid_group(n)));
        let s = |i: usize| table.spec().generator(&format!("s{i}")).expect("Artin generator");
        for i in 1..n {
            let all: Vec<(usize, LabelWord)> = (0..n).map(|j| (j, s(i))).collect();
            let v_lit = labelled(&table, vec![i as i32], &all);
            if n >= 3 {
                t.check(v_lit.equals(&table.g(i - 1)), || format!("v_{i} != g_{i} for n={n}"));
            } else {
                // for n = 2 the first caret of T(2) is not final
                t.check(!v_lit.equals(&table.g(i - 1)), || "v_1 = g_1 for n=2".into());
            }
            let v = pieces::v(&table, i).map(|w| table.evaluate(&w));
            t.check(v.is_ok_and(|v| v.equals(&v_lit)), || format!("v_{i} word for n={n}"));
            for k in 0..=i {
                let w = pieces::w(&table, i, k).map(|w| table.evaluate(&w));
                t.check(w.is_ok_and(|w| w.equals(&labelled(&table, vec![], &[(k, s(i))]))), || {
                    format!("w_{i}^({k}) for n={n}")
                });
            }
            let tail: Vec<(usize, LabelWord)> = (i + 1..n).map(|j| (j, s(i))).collect();
            let z = pieces::z(&table, i).map(|w| table.evaluate(&w));
            t.check(z.is_ok_and(|z| z.equals(&labelled(&table, vec![i as i32], &tail))), || {
                format!("z_{i} for n={n}")
            });
            let h = rewrite_h_small(&table, i).map(|w| table.evaluate(&w));
            t.check(h.is_ok_and(|h| h.equals(&table.h(i))), || format!("h_{i} product for n={n}"));
        }
        for i in 1..n.saturating_sub(1) {
            let ok = pieces::z(&table, i).map(|w| table.evaluate(&w)).is_ok_and(|z| {
                let lhs = z.mul(&table.h(i + 1)).and_then(|x| x.mul(&z.inverse()));
                let ii = i as i32;
                let rhs = labelled(&table, vec![ii, ii + 1, -ii], &[(i - 1, s(i)), (i + 1, s(i).inverse())]);
                lhs.is_ok_and(|l| l.equals(&rhs))
            });
            t.check(ok, || format!("z_{i} h_{} z_{i}^-1 for n={n}", i + 1));
        }
        for i in n..table.m() - 1 {
            let h = rewrite_h_large(&table, i).map(|w| table.evaluate(&w));
            t.check(h.is_ok_and(|h| h.equals(&table.h(i))), || format!("h_{i} for n={n}"));
        }
        let (tp, tpp) = trees::shift_pair(&table);
        let m = table.m();
        for j in 2..m - n {
            let a = table.braid_pair(&tp, BraidWord::sigma(m, j as i32), &tp);
            let b = table.braid_pair(&tpp, BraidWord::sigma(m, (j + n - 1) as i32), &tpp);
            t.check(a.equals(&b), || format!("shift of σ_{j} for n={n}"));
        }
    }
    let t4 = GeneratorTable::standard(Arc::new(SubgroupSpec::braid_group(4)));
    let (tp, tpp) = trees::shift_pair(&t4);
    let m = t4.m();
    t.check(
        t4.braid_pair(&tp, BraidWord::sigma(m, 8), &tp).equals(&t4.braid_pair(&tpp, BraidWord::sigma(m, 11), &tpp)),
        || "σ_8 does not shift to σ_11 for n=4".into(),
    );
    let t3 = GeneratorTable::standard(Arc::new(SubgroupSpec::braid_group(3)));
    for inside in [vec![1], vec![2]] {
        for &i in &inside {
            let ok = rewrite_h_parabolic(&t3, i, &inside).is_ok_and(|w| {
                let allowed = w.support().iter().all(|g| match g {
                    Gen::H(j) => !inside.contains(j),
                    Gen::G(k) => inside.contains(&(k + 1)),
                    Gen::E(_) => true,
                    Gen::X(_) => false,
                });
                allowed && t3.evaluate(&w).equals(&t3.h(i))
            });
            t.check(ok, || format!("h_{i} inside {inside:?} for n=3"));
        }
    }
    t.outcome(7, "label and crossing identities", "n=2..4".into())
}

fn random_braid<R: Rng>(n: usize, rng: &mut R) -> BraidWord {
    loop {
        let len = rng.gen_range(1..=4);
        let b = BraidWord::new(n, (0..len).map(|_| random_letter(n, rng)).collect()).expect("in range");
        if !b.is_trivial() {
            return b.free_reduced();
        }
    }
}

/// 8: generating sets of parabolic subgroups.
pub fn parabolic(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(8));
    let n = 3;
    let alphas = [BraidWord::identity(n), random_braid(n, &mut rng), random_braid(n, &mut rng)];
    let mut t = Tally::default();
    for subset in [vec![], vec![1], vec![2], vec![1, 2]] {
        for a in &alphas {
            let ctx = || format!("X={subset:?}, α={a}");
            match parabolic_table(n, &subset, a) {
                Ok(table) => {
                    t.check(table.len() == 2 * n, || format!("{}: {} members", ctx(), table.len()));
                    for (name, v) in table.members() {
                        let ok = v.labels().iter().all(|l| l.is_valid_for(table.spec()))
                            && v.spec() == table.spec()
                            && v.labels().iter().all(|l| l.len() <= 1);
                        t.check(ok, || format!("{}: labels of {name}", ctx()));
                    }
                }
                Err(e) => t.check(false, || format!("{}: {e}", ctx())),
            }
            let rewrites = check_parabolic_rewrites(n, &subset, a);
            t.check(rewrites.is_ok_and(|b| b), || format!("{}: rewritten h", ctx()));
        }
    }
    let shown: Vec<String> = alphas[1..].iter().map(|a| a.to_string()).collect();
    t.outcome(8, "parabolic generating sets", format!("n=3, all 4 subsets, α in {{ε, {}}}", shown.join(", ")))
}

/// Shortest positive braid carrying the block `from..from+width` rigidly to
/// `to..`, by breadth-first search over permutations reached by crossings
/// that add an inversion.
fn brute_force_ribbon(l: usize, width: usize, from: usize, to: usize) -> Option<Vec<i32>> {
    // perm[s] = current position of the strand that started at s
    let start: Vec<usize> = (0..l).collect();
    let done = |p: &[usize]| (0..width).all(|j| p[from - 1 + j] == to - 1 + j);
    let mut seen: HashMap<Vec<usize>, Vec<i32>> = HashMap::from([(start.clone(), Vec::new())]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        let word = seen[&p].clone();
        if done(&p) {
            return Some(word);
        }
        let at: Vec<usize> = {
            let mut a = vec![0; l];
            for (s, &q) in p.iter().enumerate() {
                a[q] = s;
            }
            a
        };
        for i in 0..l - 1 {
            // strands at positions i, i+1 cross for the first time
            if at[i] > at[i + 1] {
                continue;
            }
            let mut q = p.clone();
            q.swap(at[i], at[i + 1]);
            if !seen.contains_key(&q) {
                let mut w = word.clone();
                w.push(i as i32 + 1);
                seen.insert(q.clone(), w);
                queue.push_back(q);
            }
        }
    }
    None
}

/// 9: ribbons between every pair of final carets agree with brute force.
pub fn ribbons() -> Outcome {
    let mut t = Tally::default();
    let mut memo: HashMap<(usize, usize, usize, usize), Option<Vec<i32>>> = HashMap::new();
    let mut pairs = 0usize;
    for n in 2..=6usize {
        for carets in 1.. {
            let l = 1 + carets * (n - 1);
            if l > 6 {
                break;
            }
            let all = Tree::enumerate(n, carets);
            let blocks: Vec<Vec<usize>> = all
                .iter()
                .map(|tr| bvn_core::Forest::from(tr.clone()).final_caret_blocks().into_iter().map(|(_, p)| p).collect())
                .collect();
            for b1 in &blocks {
                for b2 in &blocks {
                    pairs += 1;
                    for &p in b1 {
                        for &q in b2 {
                            let found = memo.entry((l, n, p, q)).or_insert_with(|| brute_force_ribbon(l, n, p, q));
                            let ours = BraidWord::ribbon(l, n, p, q);
                            let ok = match (found, ours) {
                                (Some(w), Ok(r)) => {
                                    let bf = BraidWord::new(l, w.clone()).expect("in range");
                                    r.len() == bf.len() && r.is_simple() && r.equals(&bf)
                                }
                                _ => false,
                            };
                            t.check(ok, || format!("n={n}, l={l}, block {p} -> {q}"));
                        }
                    }
                }
            }
        }
    }
    t.outcome(9, "ribbon minimality", format!("{pairs} tree pairs with at most 6 leaves, arities 2..6"))
}

/// 10 (in-process part): format, parse and compare random elements.
pub fn grammar_round_trip(seed: u64, scale: Scale) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(10));
    let mut t = Tally::default();
    let grid = grid();
    let specs = Specs::new();
    for k in 0..scale.of(100) {
        let (spec, r) = &grid[k % grid.len()];
        let v = Element::random_with(spec.clone(), *r, 4, &mut rng);
        let text = format_element(&v);
        match parse_element(&text, &specs) {
            Ok(w) => {
                t.check(w == v && w.equals(&v), || format!("{text} reparses differently"));
                t.check(format_element(&w) == text, || format!("{text} formats differently"));
            }
            Err(e) => t.check(false, || format!("{text}: {e}")),
        }
    }
    t.outcome(10, "grammar round trip", format!("{} random elements", scale.of(100)))
}
