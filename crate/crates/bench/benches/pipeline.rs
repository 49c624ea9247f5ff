use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use qdouble_core::characters::character_table;
use qdouble_core::double::Double;
use qdouble_core::fusion::{fusion_data, verlinde_tensor};
use qdouble_core::groups::catalog;

fn groups(c: &mut Criterion) {
    c.bench_function("enumerate Sigma216x3", |b| b.iter(|| catalog(black_box("Sigma216x3")).unwrap()));
    let g = catalog("Sigma168").unwrap();
    c.bench_function("character table Sigma168", |b| b.iter(|| character_table(black_box(&g)).unwrap()));
}

fn double(c: &mut Criterion) {
    let g = catalog("binary_icosahedral").unwrap();
    c.bench_function("modular data binary_icosahedral", |b| {
        b.iter(|| Double::new(black_box(&g)).unwrap().modular_data().unwrap())
    });
    let g = catalog("Sigma36x3").unwrap();
    let md = Double::new(&g).unwrap().modular_data().unwrap();
    c.bench_function("aggregates Sigma36x3", |b| b.iter(|| fusion_data(black_box(&md), false).unwrap()));
    let g = catalog("Sigma168").unwrap();
    let md = Double::new(&g).unwrap().modular_data().unwrap();
    c.bench_function("verlinde tensor Sigma168", |b| b.iter(|| verlinde_tensor(black_box(&md)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = groups, double
}
criterion_main!(benches);
