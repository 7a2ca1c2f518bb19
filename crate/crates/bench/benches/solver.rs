//! Measurements for the hot paths: whole-board nimber search, the split
//! against elementary comparison on a sum, move generation, and symmetry
//! canonicalization.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use grundy::{Couple, CramBoard, Position, Solver, SumPosition};

fn board(spec: &str) -> CramBoard {
    spec.parse().expect("bench board parses")
}

fn nimber_3x6(c: &mut Criterion) {
    c.bench_function("nimber 3x6", |b| {
        b.iter(|| {
            let mut solver = Solver::new();
            solver.nimber_of(black_box(&board("3x6"))).unwrap()
        })
    });
}

fn double_3x3_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("3x3+3x3");
    group.bench_function("split", |b| {
        b.iter(|| {
            let sum = SumPosition::new(vec![board("3x3"), board("3x3")]);
            let mut solver = Solver::new();
            solver.solve_couple(black_box(&Couple::bare(sum))).unwrap()
        })
    });
    group.bench_function("elementary", |b| {
        b.iter(|| {
            let sum = SumPosition::new(vec![board("3x3"), board("3x3")]);
            let mut solver = Solver::new();
            solver.elementary_solve(black_box(&sum)).unwrap()
        })
    });
    group.finish();
}

fn move_generation(c: &mut Criterion) {
    let full = board("4x6");
    c.bench_function("moves 4x6", |b| b.iter(|| black_box(&full).options()));
}

fn canonicalization(c: &mut Criterion) {
    let holey = board("..##/.#../..#./####");
    c.bench_function("canonical key", |b| b.iter(|| black_box(&holey).canonical_key()));
}

criterion_group!(benches, nimber_3x6, double_3x3_sum, move_generation, canonicalization);
criterion_main!(benches);
