use criterion::{black_box, criterion_group, criterion_main, Criterion};

use fekit_core::fe;
use fekit_core::laws::{self, run_corpus, InstanceConfig};
use fekit_core::rng::SplitMix64;

fn bench_corpus(c: &mut Criterion) {
    let cfg = InstanceConfig { corpus_size: 12, ..InstanceConfig::default() };
    let mut group = c.benchmark_group("run_corpus");

    #[cfg(feature = "parallel")]
    {
        group.bench_function("rayon", |b| b.iter(|| black_box(run_corpus(black_box(&cfg)))));
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .expect("single-thread pool");
        group.bench_function("single_thread", |b| {
            b.iter(|| pool.install(|| black_box(run_corpus(black_box(&cfg)))))
        });
    }
    #[cfg(not(feature = "parallel"))]
    group.bench_function("sequential", |b| b.iter(|| black_box(run_corpus(black_box(&cfg)))));

    group.finish();
}

fn bench_decision_routes(c: &mut Criterion) {
    let mut rng = SplitMix64::new(9);
    let pairs: Vec<_> = (0..64)
        .map(|_| {
            (
                laws::random_periodic(&mut rng, 8, 12),
                laws::random_periodic(&mut rng, 8, 12),
            )
        })
        .collect();

    let mut group = c.benchmark_group("decision_routes");
    group.bench_function("decide_64_pairs", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                black_box(fe::decide(x, y));
            }
        })
    });
    group.bench_function("oracle_64_pairs", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                let (w, kmax) = fe::suggested_oracle_params(x, y);
                black_box(fe::oracle_bruteforce(x, y, w, kmax));
            }
        })
    });
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = bench_corpus, bench_decision_routes
}
criterion_main!(benches);
