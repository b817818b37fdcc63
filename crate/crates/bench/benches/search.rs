use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fiblab::fib::{self, Mode, Side, Variant};
use fiblab::hom::{hom_maps, isomorphic};
use fiblab::sspace::{f, g, SliceSide};
use fiblab::straighten::straighten;
use fiblab_bench::{nerves, right_fibration};

fn hom_search(c: &mut Criterion) {
    let xs = nerves(9, 6);
    c.bench_function("hom/nerve pairs", |b| {
        b.iter(|| xs.iter().zip(xs.iter().rev()).map(|(x, y)| hom_maps(x, y).0.len()).sum::<usize>())
    });
    c.bench_function("hom/isomorphism", |b| b.iter(|| xs.iter().filter(|x| isomorphic(x, x)).count()));
}

fn slices(c: &mut Criterion) {
    let w = g(3).unwrap();
    c.bench_function("slice/G(3) under 0", |b| {
        b.iter(|| fib::slice_space(&w, 0, SliceSide::Under, 3, 1).unwrap().1.source.len())
    });
    let base = f(4);
    c.bench_function("slice/F(4) over 4", |b| {
        b.iter(|| fib::slice_space(&base, 4, SliceSide::Over, 5, 0).unwrap().1.source.len())
    });
}

fn fibrations(c: &mut Criterion) {
    let p = right_fibration(31, 3, 3);
    c.bench_function("fibration/exact right", |b| {
        b.iter(|| fib::fibration_check(black_box(&p), Side::Right, Variant::Zeroth, Mode::ExactDiscrete, 4, 1).unwrap().verdict)
    });
    c.bench_function("straighten/F(3)", |b| b.iter(|| straighten(black_box(&p), 3).unwrap().summary()));
}

criterion_group!(benches, hom_search, slices, fibrations);
criterion_main!(benches);
