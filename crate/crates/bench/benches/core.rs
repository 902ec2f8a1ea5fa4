use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use emergent_space::context::{joint_context, Observable, DEFAULT_SEED};
use emergent_space::dynsys::cyclic_shift;
use emergent_space::gns::{self, gns, truncated_oscillator};
use emergent_space::linalg::{random, real_diagonal};
use emergent_space::pretopology::check_axioms;
use emergent_space::sigma::{generate_sigma, PropertyFn};
use emergent_space::spin::{SpinState, SpinSystem};
use emergent_space::tolerance::Tolerances;
use emergent_space::{DynamicalSystem, Subset, TimeModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn closures(c: &mut Criterion) {
    let sys = cyclic_shift(64);
    let s = Subset::from_indices(64, [0, 7, 19, 40]).unwrap();
    c.bench_function("closure/cyclic64_T16", |b| b.iter(|| sys.closure(black_box(s), 16).unwrap()));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let step: Vec<usize> = (0..16).map(|_| rng.random_range(0..16)).collect();
    let random16 = DynamicalSystem::from_indices(step, TimeModel::monoid(2)).unwrap();
    c.bench_function("check_axioms/random16_T2", |b| b.iter(|| check_axioms(black_box(&random16), 2).unwrap()));
    let small = cyclic_shift(8);
    c.bench_function("check_axioms/cyclic8_T1", |b| b.iter(|| check_axioms(black_box(&small), 1).unwrap()));
}

fn sigma(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let props: Vec<PropertyFn> =
        (0..6).map(|k| PropertyFn::new(format!("p{k}"), (0..64).map(|_| rng.random_bool(0.5)).collect())).collect();
    c.bench_function("generate_sigma/6_properties_64_points", |b| b.iter(|| generate_sigma(black_box(&props), 64).unwrap()));
}

fn gns_construction(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let alg = gns::random::algebra(&mut rng, 4);
    let st = gns::random::state(&mut rng, 4);
    c.bench_function("gns/random_dim4", |b| b.iter(|| gns(black_box(&alg), black_box(&st), 1e-9).unwrap()));
    c.bench_function("gns/oscillator_N4", |b| b.iter(|| truncated_oscillator(black_box(4)).unwrap()));
}

fn contexts(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let d = 6;
    let u = random::unitary(&mut rng, d);
    let a = &u * real_diagonal(&[0.0, 0.0, 1.0, 1.0, 2.0, 2.0]) * u.adjoint();
    let b = &u * real_diagonal(&[0.5, -0.5, 0.5, -0.5, 0.5, -0.5]) * u.adjoint();
    let herm = |m: emergent_space::CMatrix| (&m + m.adjoint()).scale(0.5);
    let obs = [Observable::new("a", herm(a), 1e-12).unwrap(), Observable::new("b", herm(b), 1e-12).unwrap()];
    let st = emergent_space::gns::AlgState::new(random::density(&mut rng, d, 3), 1e-9).unwrap();
    let tol = Tolerances::DEFAULT;
    c.bench_function("joint_context/commuting_pair_dim6", |bch| {
        bch.iter(|| joint_context(black_box(&obs), &st, &tol, DEFAULT_SEED).unwrap())
    });
}

fn orbits(c: &mut Criterion) {
    let sys = SpinSystem::natural([1.0, 1.0, 1.0]).unwrap();
    let dt = sys.period() / 680.0;
    c.bench_function("orbit/700_steps", |b| {
        b.iter_batched(SpinState::down, |psi| sys.reachability_orbit(&psi, dt, 700, 1e-6).unwrap(), BatchSize::SmallInput)
    });
}

criterion_group!(benches, closures, sigma, gns_construction, contexts, orbits);
criterion_main!(benches);
