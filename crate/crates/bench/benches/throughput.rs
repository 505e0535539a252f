use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gmpn::{
    count_orbits_formula, enumerate_shortest_factorizations, hurwitz_orbits, normalize, reflection_length, Limits,
};
use gmpn_bench::{census_inputs, group, length_inputs, scrambled};
use std::hint::black_box;

fn length(c: &mut Criterion) {
    let mut g = c.benchmark_group("reflection_length");
    for (name, e) in length_inputs() {
        g.bench_with_input(BenchmarkId::from_parameter(&name), &e, |b, e| {
            b.iter(|| reflection_length(black_box(e)).unwrap())
        });
    }
    g.finish();
}

fn orbit_count(c: &mut Criterion) {
    let mut g = c.benchmark_group("orbit_count");
    let limits = Limits::default();
    for (name, e) in census_inputs() {
        g.bench_with_input(BenchmarkId::new("formula", &name), &e, |b, e| {
            b.iter(|| count_orbits_formula(black_box(e)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("census", &name), &e, |b, e| {
            b.iter(|| {
                let fs = enumerate_shortest_factorizations(black_box(e), &limits).unwrap();
                hurwitz_orbits(&fs, &limits).unwrap().orbits.len()
            })
        });
    }
    g.finish();
}

fn normalization(c: &mut Criterion) {
    let mut g = c.benchmark_group("normalize");
    let worked = "[(1 3); 1]; [(1 3); 23]; [(3 6); 0]; [(3 6); 29]; [id; (0,0,0,0,0,5)]; [(1 2); 1]; [(3 4); 2]; [(4 5); 3]";
    for letters in [10, 100, 1000] {
        let f = scrambled(group(30, 5, 6), worked, letters);
        g.bench_with_input(BenchmarkId::new("G(30,5,6)", letters), &f, |b, f| {
            b.iter(|| normalize(black_box(f)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, length, orbit_count, normalization);
criterion_main!(benches);
