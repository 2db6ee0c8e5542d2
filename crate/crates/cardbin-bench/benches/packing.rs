//! Criterion benchmarks for the online algorithms, the exact oracle, and
//! the weight verifiers on representative inputs.

use criterion::{criterion_group, criterion_main, Criterion};

use cardbin::adversary::{default_delta_mid, default_eps_mid, gen_ff_killer_mid};
use cardbin::algorithms::{run_online, AlgorithmKind};
use cardbin::analysis::{assign_roles, verify_ff_total, verify_opt_bins};
use cardbin::oracle::{exact_opt, DEFAULT_NODE_BUDGET};
use cardbin::sweep::random_grid_instance;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bench_online(c: &mut Criterion) {
    let family = gen_ff_killer_mid(8, 16, default_eps_mid(), default_delta_mid(16)).unwrap();
    for kind in [AlgorithmKind::Ff, AlgorithmKind::Harmonic, AlgorithmKind::Tf] {
        c.bench_function(&format!("{}_mid_k8_l16", kind.token()), |b| {
            b.iter(|| run_online(kind, &family.instance).unwrap())
        });
    }
}

fn bench_oracle(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let instances: Vec<_> = (0..8).map(|_| random_grid_instance(&mut rng, 3, 12)).collect();
    c.bench_function("exact_opt_k3_n12_x8", |b| {
        b.iter(|| {
            for i in &instances {
                exact_opt(i, DEFAULT_NODE_BUDGET);
            }
        })
    });
}

fn bench_weights(c: &mut Criterion) {
    let family = gen_ff_killer_mid(8, 16, default_eps_mid(), default_delta_mid(16)).unwrap();
    let ff = run_online(AlgorithmKind::Ff, &family.instance).unwrap();
    let cert = &family.certificate.packing;
    c.bench_function("verify_weights_mid_k8_l16", |b| {
        b.iter(|| {
            let roles = assign_roles(8, &family.instance, &ff.packing, cert).unwrap();
            verify_opt_bins(8, &family.instance, cert, &roles).unwrap();
            verify_ff_total(8, &family.instance, &ff.packing, &roles).unwrap();
        })
    });
}

criterion_group!(benches, bench_online, bench_oracle, bench_weights);
criterion_main!(benches);
