use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use lefschetz_bench::{bg, diagonal, heisenberg_contact};
use lefschetz_core::{betti_table, contact_lefschetz, contactize, symplectic_lefschetz};

fn betti(c: &mut Criterion) {
    let (sym, con) = bg();
    c.bench_function("betti_table bg", |b| b.iter(|| betti_table(black_box(&sym.algebra))));
    c.bench_function("betti_table bg contact", |b| b.iter(|| betti_table(black_box(&con.algebra))));
    let h7 = heisenberg_contact(3);
    c.bench_function("betti_table h7", |b| b.iter(|| betti_table(black_box(&h7.algebra))));
}

fn lefschetz(c: &mut Criterion) {
    let (sym, con) = bg();
    c.bench_function("symplectic_lefschetz bg s=2", |b| b.iter(|| symplectic_lefschetz(black_box(&sym), 2).unwrap()));
    c.bench_function("contact_lefschetz bg s=2", |b| b.iter(|| contact_lefschetz(black_box(&con), 2).unwrap()));
    let (dsym, _) = diagonal(&[3]);
    c.bench_function("contactize diagonal k=3", |b| b.iter(|| contactize(black_box(&dsym))));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = betti, lefschetz
}
criterion_main!(benches);
