use std::collections::HashMap;

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use dmcrystal::cactus::{r_word, ActionTable, GeneratorToken, GeneratorWord};
use dmcrystal::heap::{enumerate_rpps, Heap};
use dmcrystal::tableau::{enumerate_rows, row_crystal, RowTableau};
use dmcrystal::verify::{run_suite, Suite, SuiteConfig};
use dmcrystal::weyl::NodeSet;

fn bench_enumeration(c: &mut Criterion) {
    c.bench_function("enumerate_rows m=5 n=3", |b| {
        b.iter(|| enumerate_rows(black_box(5), black_box(3)))
    });
    c.bench_function("row_crystal m=5 n=3", |b| {
        b.iter(|| row_crystal(black_box(5), black_box(3)))
    });
    let heap = Heap::minuscule(5);
    c.bench_function("enumerate_rpps m=5 n=3", |b| {
        b.iter(|| enumerate_rpps(black_box(&heap), black_box(3)))
    });
}

fn bench_toggles(c: &mut Criterion) {
    let rows = enumerate_rows(4, 3);
    c.bench_function("toggle all rows m=4 n=3", |b| {
        b.iter(|| {
            for r in &rows {
                for i in 1..=4 {
                    black_box(r.toggle(i));
                }
            }
        })
    });
    let heap = Heap::minuscule(4);
    let rpps = enumerate_rpps(&heap, 3);
    c.bench_function("toggle all rpps m=4 n=3", |b| {
        b.iter(|| {
            for r in &rpps {
                for i in 1..=4 {
                    black_box(r.toggle(&heap, i));
                }
            }
        })
    });
}

fn bench_cactus(c: &mut Criterion) {
    let graph = row_crystal(4, 2);
    let rows = enumerate_rows(4, 2);
    let index: HashMap<RowTableau, usize> =
        rows.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
    c.bench_function("full cactus permutation m=4 n=2", |b| {
        b.iter(|| {
            let mut at = ActionTable::new(&graph, |i, x| index[&rows[x].toggle(i)]);
            black_box(at.cactus_perm(&NodeSet::new(1..=4)).unwrap().len())
        })
    });
    c.bench_function("c_1 ~ r_1 agreement m=4 n=2", |b| {
        let c1 = GeneratorWord::new(vec![GeneratorToken::Cactus(NodeSet::new([1]))]);
        let r1 = r_word(4, 1);
        b.iter(|| {
            let mut at = ActionTable::new(&graph, |i, x| index[&rows[x].toggle(i)]);
            black_box(at.words_equal(&c1, &r1).unwrap())
        })
    });
}

fn bench_suites(c: &mut Criterion) {
    let config = SuiteConfig::default();
    c.bench_function("type-d suite m=4 n=2", |b| {
        b.iter(|| black_box(run_suite(Suite::TypeD, 4, 2, &config)).pass())
    });
    c.bench_function("axioms suite m=4 n=1", |b| {
        b.iter(|| black_box(run_suite(Suite::Axioms, 4, 1, &config)).pass())
    });
}

criterion_group!(benches, bench_enumeration, bench_toggles, bench_cactus, bench_suites);
criterion_main!(benches);
