use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hmcusp::eisenstein::{constant_term_from_table, primitive_pairs};
use hmcusp::exec::ExecMode;
use hmcusp::gk::{check_conjugations, verify_harder_all};
use hmcusp::lvalues::dirichlet_l;
use hmcusp::QuadraticField;

const MODES: [(&str, ExecMode); 2] = [
    ("sequential", ExecMode::Sequential),
    ("parallel", ExecMode::Parallel),
];

fn constant_term(c: &mut Criterion) {
    let f = QuadraticField::new(5).unwrap();
    let table = primitive_pairs(&f, 16.0, ExecMode::default());
    let mut g = c.benchmark_group("constant_term");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::new(name, table.len()), |b| {
            b.iter(|| {
                constant_term_from_table(&f, &table, black_box(1.5), [2.0, 2.0], 8, mode).unwrap()
            })
        });
    }
    g.finish();
}

fn pair_table(c: &mut Criterion) {
    let f = QuadraticField::new(5).unwrap();
    let mut g = c.benchmark_group("primitive_pairs");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| primitive_pairs(&f, black_box(12.0), mode).len())
        });
    }
    g.finish();
}

fn gk_sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("gk");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::new("harder", name), |b| {
            b.iter(|| verify_harder_all(black_box(4), mode).unwrap().len())
        });
        g.bench_function(BenchmarkId::new("conjugations", name), |b| {
            b.iter(|| check_conjugations(black_box(3), mode).unwrap())
        });
    }
    g.finish();
}

fn l_values(c: &mut Criterion) {
    let f = QuadraticField::new(229).unwrap();
    let mut g = c.benchmark_group("dirichlet_l");
    for (name, mode) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| dirichlet_l(&f, black_box(2.0), 64, mode))
        });
    }
    g.finish();
}

criterion_group!(benches, constant_term, pair_table, gk_sweeps, l_values);
criterion_main!(benches);
