use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use monolin::explore::{explore, ExploreConfig};
use monolin::betti::multigraded_betti_with;
use monolin::{BettiConfig, Convention, FieldSpec, MonomialIdeal, Parallelism};

const MODES: [(&str, Parallelism); 2] = [
    ("sequential", Parallelism::Sequential),
    ("parallel", Parallelism::Parallel),
];

fn betti_strands(c: &mut Criterion) {
    let mut group = c.benchmark_group("betti_m3_n4");
    group.sample_size(10);
    let ideal = MonomialIdeal::maximal_power(4, 3);
    for (name, mode) in MODES {
        let config = BettiConfig::default().with_max_gens(64).with_parallelism(mode);
        group.bench_with_input(BenchmarkId::from_parameter(name), &config, |b, config| {
            b.iter(|| multigraded_betti_with(&ideal, FieldSpec::default(), Convention::Ideal, config).unwrap())
        });
    }
    group.finish();
}

fn explorer_batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("explore_40_per_kind");
    group.sample_size(10);
    for (name, mode) in MODES {
        let config = ExploreConfig {
            samples: 40,
            betti: BettiConfig::default().with_parallelism(mode),
            ..ExploreConfig::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(name), &config, |b, config| {
            b.iter(|| explore(config).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, betti_strands, explorer_batch);
criterion_main!(benches);
