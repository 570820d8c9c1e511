use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use foamcalc_core::corpus;
use foamcalc_core::foam::{suspension_k4, theta_foam};
use foamcalc_core::homalg::{gysin_check, random_simplicial_cover};
use foamcalc_core::jflat::{evaluate, pairing_rank, well_definedness_report};
use foamcalc_core::planar::reduce_dimension;
use foamcalc_core::web::{tait_count, tait_orbit_count};

fn webs(c: &mut Criterion) {
    let d = corpus::dodecahedron_web();
    c.bench_function("tait_dodecahedron", |b| b.iter(|| tait_count(black_box(&d)).unwrap()));
    c.bench_function("orbits_dodecahedron", |b| {
        b.iter(|| tait_orbit_count(black_box(&d)).unwrap())
    });
    let cube = corpus::cube_planar();
    c.bench_function("reduce_cube", |b| {
        b.iter(|| reduce_dimension(black_box(&cube)).unwrap())
    });
    let l3 = corpus::prism_planar(3);
    c.bench_function("reduce_prism3", |b| {
        b.iter(|| reduce_dimension(black_box(&l3)).unwrap())
    });
}

fn foams(c: &mut Criterion) {
    let t = theta_foam(0, 1, 2);
    c.bench_function("eval_theta", |b| b.iter(|| evaluate(black_box(&t)).unwrap()));
    let s = suspension_k4(0, 1, 2);
    c.bench_function("eval_suspension", |b| b.iter(|| evaluate(black_box(&s)).unwrap()));
    c.bench_function("welldef_suspension", |b| {
        b.iter(|| well_definedness_report(black_box(&s)).unwrap())
    });
    let gens: Vec<_> = corpus::theta_generators().into_iter().map(|(_, g)| g).collect();
    let m = Default::default();
    c.bench_function("rank_theta", |b| {
        b.iter(|| pairing_rank(black_box(&gens), &gens, &m).unwrap())
    });
}

fn algebra(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let covers: Vec<_> = (0..16).map(|_| random_simplicial_cover(&mut rng, 20, 1)).collect();
    c.bench_function("gysin_16_covers", |b| {
        b.iter(|| {
            covers
                .iter()
                .map(|x| gysin_check(black_box(x)).unwrap().holds())
                .filter(|&h| h)
                .count()
        })
    });
}

criterion_group!(benches, webs, foams, algebra);
criterion_main!(benches);
