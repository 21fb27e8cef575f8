use criterion::{black_box, criterion_group, criterion_main, Criterion};
use gdl_bench::gdl_core::counting::{count_range_in, transfer_radius};
use gdl_bench::gdl_core::loss::{build_band, build_corner};
use gdl_bench::gdl_core::problem::{get_problem, Mode};
use gdl_bench::gdl_core::rauzy::build_rauzy;
use gdl_bench::gdl_core::solver::build_system;
use gdl_bench::gdl_core::state::enumerate_states;

fn states(c: &mut Criterion) {
    let spec = get_problem("2dom").unwrap();
    c.bench_function("enumerate 2dom h=10 pruned", |b| {
        b.iter(|| enumerate_states(&spec, black_box(10), Mode::Interior, true).unwrap())
    });
    c.bench_function("transfer system 2dom h=8", |b| {
        b.iter(|| build_system(&spec, black_box(8), Mode::Interior, true).unwrap())
    });
}

fn products(c: &mut Criterion) {
    let spec = get_problem("2dom").unwrap();
    let sys = build_system(&spec, 9, Mode::Interior, true).unwrap();
    c.bench_function("min-plus gamma 2dom h=9 m=60", |b| b.iter(|| sys.gamma_range(black_box(60))));
    let dom = get_problem("dom").unwrap();
    let full = build_system(&dom, 8, Mode::Interior, false).unwrap();
    c.bench_function("bignum count dom h=8 m=40", |b| b.iter(|| count_range_in(&full, black_box(40))));
    c.bench_function("spectral radius dom h=8", |b| b.iter(|| transfer_radius(&full).unwrap()));
}

fn loss(c: &mut Criterion) {
    let spec = get_problem("2dom").unwrap();
    c.bench_function("band and corner 2dom h=5", |b| {
        b.iter(|| {
            let mut band = build_band(&spec, black_box(5)).unwrap();
            build_corner(&spec, &mut band).unwrap();
            band
        })
    });
}

fn rauzy(c: &mut Criterion) {
    let spec = get_problem("roman").unwrap();
    c.bench_function("rauzy roman order 4", |b| b.iter(|| build_rauzy(&spec, black_box(4), 2).unwrap()));
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(10);
    targets = states, products, loss, rauzy
}
criterion_main!(kernels);
