use criterion::{criterion_group, criterion_main, Criterion};
use perdom::complexes::{build_stalk, stalk_homology};
use perdom::exactalg::{proper_subspaces, FieldSpec};
use perdom::flagenum::{count_points, for_each_flag, DEFAULT_BUDGET};
use perdom::slopes::ClosedFamily;
use perdom_bench::{planes_in_four, three_step};
use std::hint::black_box;

fn point_counts(c: &mut Criterion) {
    let ss = ClosedFamily::semistable();
    let g = three_step();
    c.bench_function("count_points (2,1,-3) q=2 n=3", |b| b.iter(|| count_points(black_box(&g), &ss, 2, 3, DEFAULT_BUDGET).unwrap()));
    let g = planes_in_four();
    c.bench_function("count_points (1^2,-1^2) q=2 n=2", |b| b.iter(|| count_points(black_box(&g), &ss, 2, 2, DEFAULT_BUDGET).unwrap()));
}

fn stalks(c: &mut Criterion) {
    let ss = ClosedFamily::semistable();
    let g = three_step();
    let rational = proper_subspaces(&FieldSpec::prime(2).unwrap(), 3);
    let field = FieldSpec::new(2, 2).unwrap();
    c.bench_function("stalk homology (2,1,-3) q=2 n=2", |b| {
        b.iter(|| {
            let mut acyclic = 0;
            for_each_flag(&g, &field, |flag| {
                let stalk = build_stalk(&flag, &ss, &rational).unwrap();
                if stalk_homology(&stalk).unwrap().iter().all(|&h| h == 0) {
                    acyclic += 1;
                }
            });
            acyclic
        })
    });
}

criterion_group!(benches, point_counts, stalks);
criterion_main!(benches);
