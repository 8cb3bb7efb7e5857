//! The braid kernel checked against the Artin action on a free group, which
//! is faithful and so decides triviality independently of handle reduction.

use bvn_core::BraidWord;
use proptest::prelude::*;

type FreeWord = Vec<i32>;

fn free_push(w: &mut FreeWord, x: i32) {
    if w.last() == Some(&-x) {
        w.pop();
    } else {
        w.push(x);
    }
}

fn substitute(word: &FreeWord, images: &[FreeWord]) -> FreeWord {
    let mut out = Vec::new();
    for &x in word {
        let img = &images[x.unsigned_abs() as usize - 1];
        if x > 0 {
            for &y in img {
                free_push(&mut out, y);
            }
        } else {
            for &y in img.iter().rev() {
                free_push(&mut out, -y);
            }
        }
    }
    out
}

fn artin_trivial(l: usize, letters: &[i32]) -> bool {
    let mut images: Vec<FreeWord> = (1..=l as i32).map(|i| vec![i]).collect();
    for &a in letters {
        let i = a.unsigned_abs() as usize;
        let mut gen: Vec<FreeWord> = (1..=l as i32).map(|j| vec![j]).collect();
        let (xi, xj) = (i as i32, i as i32 + 1);
        if a > 0 {
            gen[i - 1] = vec![xi, xj, -xi];
            gen[i] = vec![xi];
        } else {
            gen[i - 1] = vec![xj];
            gen[i] = vec![-xj, xi, xj];
        }
        images = images.iter().map(|w| substitute(w, &gen)).collect();
    }
    images.iter().enumerate().all(|(k, w)| w == &vec![k as i32 + 1])
}

fn word(max_l: usize, max_len: usize) -> impl Strategy<Value = (usize, Vec<i32>)> {
    (2..=max_l).prop_flat_map(move |l| {
        let gen = (1..l as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
        (Just(l), prop::collection::vec(gen, 0..=max_len))
    })
}

#[test]
fn artin_action_sanity() {
    assert!(artin_trivial(3, &[1, 2, 1, -2, -1, -2]));
    assert!(!artin_trivial(3, &[1, 2, -1, -2]));
    assert!(artin_trivial(3, &[1, -1]));
}

#[test]
fn known_hard_identities() {
    // full twist is central in B_4
    let delta2: Vec<i32> = [1, 2, 3, 1, 2, 1].repeat(2);
    for g in 1..4 {
        let mut w = vec![g];
        w.extend(&delta2);
        w.push(-g);
        w.extend(delta2.iter().rev().map(|x| -x));
        assert!(BraidWord::new(4, w.clone()).unwrap().is_trivial());
        assert!(artin_trivial(4, &w));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn triviality_matches_artin((l, w) in word(5, 10)) {
        let b = BraidWord::new(l, w.clone()).unwrap();
        prop_assert_eq!(b.is_trivial(), artin_trivial(l, &w));
    }

    #[test]
    fn commutator_triviality_matches_artin((l, u) in word(4, 4), v in prop::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 0..4)) {
        // u v u^-1 v^-1 is trivial only when u and v commute
        let v: Vec<i32> = v.into_iter().filter(|x: &i32| x.unsigned_abs() < l as u32).collect();
        let mut w = u.clone();
        w.extend(&v);
        w.extend(u.iter().rev().map(|x| -x));
        w.extend(v.iter().rev().map(|x| -x));
        let b = BraidWord::new(l, w.clone()).unwrap();
        prop_assert_eq!(b.is_trivial(), artin_trivial(l, &w));
    }

    #[test]
    fn inverse_cancels((l, w) in word(6, 16)) {
        let b = BraidWord::new(l, w).unwrap();
        prop_assert!(b.compose(&b.inverse()).unwrap().is_trivial());
        prop_assert!(b.inverse().compose(&b).unwrap().is_trivial());
        prop_assert_eq!(b.inverse().inverse(), b.clone());
        prop_assert!(b.handle_reduced().equals(&b));
    }

    #[test]
    fn permutation_is_homomorphism((l, u) in word(6, 8), v in prop::collection::vec(1i32..6, 0..8)) {
        let v: Vec<i32> = v.into_iter().filter(|x| (*x as usize) < l).collect();
        let u = BraidWord::new(l, u).unwrap();
        let v = BraidWord::new(l, v).unwrap();
        let uv = u.compose(&v).unwrap();
        prop_assert_eq!(uv.permutation(), u.permutation().then(&v.permutation()));
        prop_assert_eq!(u.inverse().permutation(), u.permutation().inverse());
    }

    #[test]
    fn cable_then_extract((l, u) in word(4, 6), (n, inner) in word(3, 3), k in 1usize..5) {
        let k = 1 + (k - 1) % l;
        let u = BraidWord::new(l, u).unwrap();
        let inner = BraidWord::new(n, inner).unwrap();
        let c = u.cable_strand(k, n, &inner).unwrap();
        prop_assert_eq!(c.strands(), l + n - 1);
        let (i2, o2) = c.extract_cable(k, n).unwrap();
        prop_assert!(i2.equals(&inner));
        prop_assert!(o2.equals(&u));
        // cabling respects composition
        let uu = u.compose(&u).unwrap();
        let k2 = u.permutation().apply(k);
        let id = BraidWord::identity(n);
        let lhs = uu.cable_strand(k, n, &id).unwrap();
        let rhs = u.cable_strand(k, n, &id).unwrap().compose(&u.cable_strand(k2, n, &id).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn deletion_of_trivial_is_trivial((l, u) in word(5, 6), mask in 1u32..32) {
        let u = BraidWord::new(l, u).unwrap();
        let t = u.compose(&u.inverse()).unwrap();
        let keep: Vec<usize> = (1..=l).filter(|p| mask & (1 << (p - 1)) != 0).collect();
        prop_assume!(!keep.is_empty());
        prop_assert!(t.delete_strands(&keep).unwrap().is_trivial());
    }
}

/// Enumerates all simple braids on `l` strands by permutation and checks the
/// ribbon word against the unique one with the rigid block permutation.
#[test]
fn ribbons_against_brute_force() {
    for l in 2..=6usize {
        for width in 1..l {
            for from in 1..=l - width + 1 {
                for to in 1..=l - width + 1 {
                    let r = BraidWord::ribbon(l, width, from, to).unwrap();
                    // expected permutation: block keeps its order, others keep theirs
                    let mut order: Vec<usize> = (1..=l).filter(|p| *p < from || *p >= from + width).collect();
                    let block: Vec<usize> = (from..from + width).collect();
                    order.splice(to - 1..to - 1, block);
                    let mut expected = vec![0; l];
                    for (pos, s) in order.iter().enumerate() {
                        expected[s - 1] = pos + 1;
                    }
                    assert_eq!(r.permutation().images(), &expected[..], "l={l} w={width} {from}->{to}");
                    let inversions = (0..l)
                        .flat_map(|a| (a + 1..l).map(move |b| (a, b)))
                        .filter(|&(a, b)| expected[a] > expected[b])
                        .count();
                    assert!(r.is_simple());
                    assert_eq!(r.len(), inversions);
                    assert_eq!(r.len(), width * from.abs_diff(to));
                    // over-crossings: the block passes over strands on its left when moving left
                    let (inner, _) = r.extract_cable(from, width).unwrap();
                    assert!(inner.is_trivial());
                }
            }
        }
    }
}
