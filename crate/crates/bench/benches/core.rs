use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use endtrace_bench::{commutator_power, ladder_word};
use endtrace_core::graph::{build_family, Params};
use endtrace_core::homology::commutator_length;
use endtrace_core::invlimit::psi_family;
use endtrace_core::linalg::{gf2_rank, ladder_matrix, Gf2Matrix};
use endtrace_core::truncation::{builtin_loop, truncate};

fn gf2(c: &mut Criterion) {
    let mut group = c.benchmark_group("gf2_rank");
    for n in [16, 64, 256] {
        let m = Gf2Matrix::from_int(&ladder_matrix(n).unwrap());
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| gf2_rank(black_box(m))));
    }
    group.finish();
}

fn commutator_lengths(c: &mut Criterion) {
    let mut group = c.benchmark_group("commutator_length");
    group.bench_function("ladder_word_16", |b| {
        let w = ladder_word(16);
        b.iter(|| commutator_length(black_box(&w)).unwrap())
    });
    for k in [3, 4, 5] {
        let w = commutator_power(k);
        group.bench_with_input(BenchmarkId::new("commutator_power", k), &w, |b, w| {
            b.iter(|| commutator_length(black_box(w)).unwrap())
        });
    }
    group.finish();
}

fn levels(c: &mut Criterion) {
    let ladder = build_family("ladder", Params::new()).unwrap();
    c.bench_function("truncate_ladder_16", |b| b.iter(|| truncate(black_box(&ladder), 16).unwrap()));
    let spec = builtin_loop("figure4", &ladder).unwrap();
    c.bench_function("psi_figure4_8", |b| b.iter(|| psi_family(black_box(&spec), &ladder, 8).unwrap()));
}

criterion_group!(benches, gf2, commutator_lengths, levels);
criterion_main!(benches);
