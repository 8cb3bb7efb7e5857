use std::sync::Arc;

use bvn_core::diagram::normal_form;
use bvn_core::generators::decompose;
use bvn_core::{BraidWord, Diagram, Element, GeneratorTable, SubgroupSpec};
use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(rng: &mut ChaCha8Rng, strands: usize, len: usize) -> BraidWord {
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(strands, letters).unwrap()
}

fn braids(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let words: Vec<BraidWord> = (0..32).map(|_| random_word(&mut rng, 6, 40)).collect();
    c.bench_function("braid triviality, 6 strands, 80 letters", |b| {
        b.iter(|| {
            for w in &words {
                black_box(w.compose(&w.inverse()).unwrap().is_trivial());
            }
        })
    });
}

fn elements(c: &mut Criterion) {
    let spec = Arc::new(SubgroupSpec::braid_group(3));
    let pairs: Vec<(Element, Element)> = (0..32)
        .map(|k| (Element::random(spec.clone(), 1, 4, k), Element::random(spec.clone(), 1, 4, 100 + k)))
        .collect();
    c.bench_function("compose and reduce, n=3 depth 4", |b| {
        b.iter(|| {
            for (u, v) in &pairs {
                black_box(u.mul(v).unwrap());
            }
        })
    });
    c.bench_function("equality, n=3 depth 4", |b| {
        b.iter(|| {
            for (u, v) in &pairs {
                black_box(u.mul(v).unwrap().equals(&v.mul(u).unwrap()));
            }
        })
    });
}

fn diagrams(c: &mut Criterion) {
    let spec = Arc::new(SubgroupSpec::braid_group(2));
    let ds: Vec<Diagram> = (0..16)
        .map(|k| Diagram::from_element(&Element::random(spec.clone(), 1, 3, k).expand_at_range_leaf(1).unwrap()))
        .collect();
    c.bench_function("diagram normal form, n=2", |b| {
        b.iter(|| {
            for d in &ds {
                black_box(normal_form(d).unwrap());
            }
        })
    });
}

fn decomposition(c: &mut Criterion) {
    let table = GeneratorTable::standard(Arc::new(SubgroupSpec::braid_group(3)));
    let mut k = 0;
    c.bench_function("decompose, n=3 depth 6", |b| {
        b.iter_batched(
            || {
                k += 1;
                Element::random(table.spec().clone(), 1, 6, k)
            },
            |v| black_box(decompose(&table, &v).unwrap()),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, braids, elements, diagrams, decomposition);
criterion_main!(benches);
