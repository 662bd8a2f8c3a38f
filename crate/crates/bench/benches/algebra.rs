use criterion::{criterion_group, criterion_main, Criterion};
use perdom::cohomology::{table_closed, table_open};
use perdom::complexes::{dim_v_by_rank, verify_k};
use perdom::slopes::ClosedFamily;
use perdom::weyl::ParabolicType;
use perdom_bench::regular_five;
use std::hint::black_box;

fn tables(c: &mut Criterion) {
    let ss = ClosedFamily::semistable();
    let g = regular_five();
    c.bench_function("table_open d=5", |b| b.iter(|| table_open(black_box(&g), &ss).unwrap()));
    c.bench_function("table_closed d=5", |b| b.iter(|| table_closed(black_box(&g), &ss).unwrap()));
}

fn ranks(c: &mut Criterion) {
    let borel = ParabolicType::borel(4);
    c.bench_function("verify_k d=4 q=2 I0=B", |b| b.iter(|| verify_k(black_box(&borel), 2).unwrap()));
    c.bench_function("dim_v_by_rank d=4 q=3 B", |b| b.iter(|| dim_v_by_rank(black_box(&borel), 3).unwrap()));
}

criterion_group!(benches, tables, ranks);
criterion_main!(benches);
