use criterion::{black_box, criterion_group, criterion_main, Criterion};

use snarkit::coloring::{decompose_tight, SolverOptions};
use snarkit::constructions::{flower_snark, petersen, windmill};
use snarkit::cycles::scc_exact;
use snarkit::graph::canonical_form;
use snarkit::matching::{enumerate_perfect_matchings, perfect_matching_index};
use snarkit::parameters::l_value;

fn matchings(c: &mut Criterion) {
    let f7 = flower_snark(7).unwrap();
    let w = windmill();
    c.bench_function("enumerate_matchings/flower7", |b| {
        b.iter(|| enumerate_perfect_matchings(black_box(&f7)).unwrap())
    });
    c.bench_function("enumerate_matchings/windmill", |b| {
        b.iter(|| enumerate_perfect_matchings(black_box(&w)).unwrap())
    });
    c.bench_function("pm_index/flower7", |b| {
        b.iter(|| perfect_matching_index(black_box(&f7), 6).unwrap())
    });
}

fn colouring(c: &mut Criterion) {
    let f5 = flower_snark(5).unwrap();
    let list = enumerate_perfect_matchings(&f5).unwrap();
    let host = f5.plus_times(&list.get(0), 1);
    c.bench_function("decompose_tight/flower5+M", |b| {
        b.iter(|| decompose_tight(black_box(&host), 4, &list, SolverOptions::default()).unwrap())
    });
    let p = petersen();
    c.bench_function("l_value/petersen", |b| b.iter(|| l_value(black_box(&p), 3).unwrap()));
}

fn covers(c: &mut Criterion) {
    let p = petersen();
    let f5 = flower_snark(5).unwrap();
    c.bench_function("scc/petersen", |b| b.iter(|| scc_exact(black_box(&p), 5, 12).unwrap()));
    c.bench_function("scc/flower5", |b| b.iter(|| scc_exact(black_box(&f5), 5, 12).unwrap()));
}

fn canon(c: &mut Criterion) {
    let f7 = flower_snark(7).unwrap();
    c.bench_function("canonical_form/flower7", |b| b.iter(|| canonical_form(black_box(&f7))));
}

criterion_group!(benches, matchings, colouring, covers, canon);
criterion_main!(benches);
