use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hhbes::suite::{self, Config, Mode, Scale};

fn modes(c: &mut Criterion) {
    let mut group = c.benchmark_group("smoke");
    group.sample_size(10);
    // the fixpoint, validity and negation-as-failure checks carry most of the work
    for id in [1, 3, 7] {
        for mode in [Mode::Sequential, Mode::Parallel] {
            let cfg = Config {
                mode,
                scale: Scale::Smoke,
                ..Config::default()
            };
            group.bench_with_input(BenchmarkId::new(format!("{mode:?}"), id), &cfg, |b, cfg| {
                b.iter(|| assert!(suite::run(id, cfg).passed()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, modes);
criterion_main!(benches);
