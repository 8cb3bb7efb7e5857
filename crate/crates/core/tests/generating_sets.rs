use std::sync::Arc;
use std::time::Instant;

use bvn_core::generators::{decompose, Rewriting, Target};
use bvn_core::{Element, GeneratorTable, SubgroupSpec};

#[test]
fn minimal_set_words_evaluate_back() {
    for n in 2..=3 {
        let table = GeneratorTable::standard(Arc::new(SubgroupSpec::braid_group(n)));
        let set = table.minimal_set();
        let start = Instant::now();
        let mut longest = 0;
        for seed in 0..100 {
            let v = Element::random(table.spec().clone(), 1, 6, 1000 + seed);
            let r = Rewriting::new(&table, &decompose(&table, &v).unwrap(), Target::Minimal).unwrap();
            let w = r.expand();
            longest = longest.max(w.len());
            assert!(w.support().iter().all(|g| set.contains(g)));
            assert!(r.evaluate().equals(&v), "n={n} seed={seed}");
        }
        eprintln!("n={n}: {:?}, longest word {longest}", start.elapsed());
    }
}
