use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hyperchaos_bench::{certifier, closed_form_pair, truncated_pair, unstable_set};
use hyperchaos_core::horseshoe::{level_rectangles, verify_hyperbolic_conditions, HorseshoeParams};
use hyperchaos_core::symbolic::universal::{enumeration_position, find_block};
use hyperchaos_core::{Alphabet, CylinderSet, MetricParams, Word};

fn distances(c: &mut Criterion) {
    let metric = MetricParams::default();
    let (s, t) = closed_form_pair();
    c.bench_function("distance/closed_form", |b| b.iter(|| metric.distance(black_box(&s), black_box(&t), 1e-12)));
    let (s, t) = truncated_pair();
    c.bench_function("distance/truncated", |b| b.iter(|| metric.distance(black_box(&s), black_box(&t), 1e-12)));
}

fn block_search(c: &mut Criterion) {
    let word: Word = "1112122211211121".parse().expect("valid word");
    let bound = enumeration_position(Alphabet::BINARY, &word);
    c.bench_function("find_block/16", |b| {
        b.iter(|| find_block(Alphabet::BINARY, black_box(word.as_slice()), 0, bound))
    });
}

fn certificates(c: &mut Criterion) {
    let ctx = certifier();
    let u = unstable_set();
    let mut group = c.benchmark_group("certify");
    group.sample_size(10);
    group.bench_function("poisson_recurrence/8", |b| b.iter(|| ctx.poisson_recurrence_witness(&u, 8)));
    group.bench_function("li_yorke/1000", |b| b.iter(|| ctx.li_yorke_pair(&u, 1000)));
    let target: CylinderSet = "21.121".parse().expect("valid cylinder");
    group.bench_function("transitivity", |b| b.iter(|| ctx.transitivity_witness(&u, &target)));
    group.finish();
}

fn horseshoe(c: &mut Criterion) {
    let hp = HorseshoeParams::default();
    let mut group = c.benchmark_group("horseshoe");
    group.sample_size(10);
    group.bench_function("level_rectangles/6x6", |b| b.iter(|| level_rectangles(&hp, 6, 6)));
    group.bench_function("hyperbolic_conditions/6", |b| b.iter(|| verify_hyperbolic_conditions(&hp, 6)));
    group.finish();
}

criterion_group!(benches, distances, block_search, certificates, horseshoe);
criterion_main!(benches);
