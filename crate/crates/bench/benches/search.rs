use btugirth::perm::ScalingStrategy;
use btugirth::search::{search_r3, SearchConfig};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search_r3");
    group.sample_size(10);
    for k in [5usize, 6] {
        for strategy in ScalingStrategy::ALL {
            let cfg = SearchConfig::new(k).with_strategy(strategy);
            group.bench_with_input(BenchmarkId::new(strategy.name(), k), &cfg, |b, cfg| {
                b.iter(|| search_r3(cfg).unwrap())
            });
        }
    }
    let cfg = SearchConfig::new(6).with_workers(4);
    group.bench_with_input(BenchmarkId::new("block-4-workers", 6), &cfg, |b, cfg| {
        b.iter(|| search_r3(cfg).unwrap())
    });
    group.finish();
}

criterion_group!(benches, search);
criterion_main!(benches);
