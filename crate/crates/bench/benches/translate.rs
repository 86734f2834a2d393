use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use xorcnf_core::gen::{random_system, rng};
use xorcnf_core::translate::{x1, xstar};
use xorcnf_core::xor::{closure_star, xor_sat};

fn translations(c: &mut Criterion) {
    let mut group = c.benchmark_group("translate");
    for m in [4usize, 8, 12] {
        let s = random_system(&mut rng(m as u64), m, 16, 5).unwrap();
        group.bench_with_input(BenchmarkId::new("x1", m), &s, |b, s| b.iter(|| x1(black_box(s))));
        if xor_sat(&s).is_sat() {
            group.bench_with_input(BenchmarkId::new("xstar", m), &s, |b, s| b.iter(|| xstar(black_box(s)).unwrap()));
        }
        group.bench_with_input(BenchmarkId::new("closure_star", m), &s, |b, s| {
            b.iter(|| closure_star(black_box(s)).ok())
        });
    }
    group.finish();
}

criterion_group!(benches, translations);
criterion_main!(benches);
