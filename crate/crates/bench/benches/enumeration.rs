use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use netcoord::gibbs::exact_gibbs;
use netcoord::graph::{build_k_regular, maximum_matching, random_connected_graph};
use netcoord::lll::{simulate, ChainConfig};
use netcoord::DensityOfStates;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn density_of_states(c: &mut Criterion) {
    let mut group = c.benchmark_group("density_of_states");
    group.sample_size(10);
    for n in [12usize, 16, 20] {
        let g = build_k_regular(n, 4, None).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| DensityOfStates::of(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn gibbs_law(c: &mut Criterion) {
    let g = build_k_regular(14, 5, None).unwrap();
    c.bench_function("exact_gibbs n=14", |b| b.iter(|| exact_gibbs(black_box(&g), 0.3, 1.0).unwrap()));
}

fn chain(c: &mut Criterion) {
    let g = build_k_regular(10, 3, None).unwrap();
    let cfg = ChainConfig { burn_in: Some(0), ..ChainConfig::with_samples(&g, 1.0, 100_000, 1) };
    c.bench_function("simulate 1e5 steps n=10", |b| b.iter(|| simulate(black_box(&g), 0.3, 1.0, &cfg).unwrap()));
}

fn matching(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = random_connected_graph(200, 800, &mut rng).unwrap();
    let adj: Vec<Vec<usize>> = (0..g.n()).map(|i| g.neighbors(i).to_vec()).collect();
    c.bench_function("maximum_matching n=200", |b| b.iter(|| maximum_matching(black_box(&adj))));
}

criterion_group!(benches, density_of_states, gibbs_law, chain, matching);
criterion_main!(benches);
