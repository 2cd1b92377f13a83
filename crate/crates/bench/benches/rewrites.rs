use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use deflation_bench::{angle_inputs, u2_tuples, u4s};
use deflation_core::{
    close_breach, csd_2q, deflate_core, deflate_opposite_side, deflate_same_side, synth_3cnot, BreachPattern,
    EntanglerForm,
};

const N: usize = 64;

fn core(c: &mut Criterion) {
    let inputs = angle_inputs(N, 1);
    c.bench_function("deflate_core", |b| {
        b.iter(|| inputs.iter().map(|i| deflate_core(black_box(i)).mu).sum::<f64>())
    });
}

fn two_controlled(c: &mut Criterion) {
    let quads = u2_tuples::<4>(N, 2);
    c.bench_function("deflate_same_side", |b| {
        b.iter(|| {
            quads
                .iter()
                .map(|[u, a, x, v]| deflate_same_side(u, a, x, v).unwrap().len())
                .sum::<usize>()
        })
    });
    c.bench_function("deflate_opposite_side", |b| {
        b.iter(|| {
            quads
                .iter()
                .map(|[u, a, x, v]| deflate_opposite_side(u, a, x, v).unwrap().len())
                .sum::<usize>()
        })
    });
}

fn breach(c: &mut Criterion) {
    let patterns: Vec<BreachPattern> = u2_tuples::<3>(N, 3)
        .into_iter()
        .map(|[b, g, a]| BreachPattern::new(b, g, a).unwrap())
        .collect();
    c.bench_function("close_breach", |b| {
        b.iter(|| {
            patterns
                .iter()
                .map(|p| close_breach(black_box(p)).unwrap().len())
                .sum::<usize>()
        })
    });
}

fn synthesis(c: &mut Criterion) {
    let us = u4s(N, 4);
    c.bench_function("csd_2q", |b| {
        b.iter(|| us.iter().map(|u| csd_2q(black_box(u)).unwrap().theta1).sum::<f64>())
    });
    c.bench_function("synth_3cnot", |b| {
        b.iter(|| {
            us.iter()
                .map(|u| synth_3cnot(black_box(u), EntanglerForm::Cz).unwrap().len())
                .sum::<usize>()
        })
    });
}

criterion_group!(benches, core, two_controlled, breach, synthesis);
criterion_main!(benches);
