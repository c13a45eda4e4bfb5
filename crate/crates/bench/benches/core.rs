use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ivi_bench::tower;
use ivi_core::asymptotic::{integrate_ivi, verify_orbit};
use ivi_core::constructions::{build_max_ivi_k2, symmetric_family_ivi};
use ivi_core::filtration::weight_filtration;
use ivi_core::mixed::deligne_bigrading;
use ivi_core::search::{greedy_max_abelian, SearchConfig};

fn filtrations(c: &mut Criterion) {
    let mut g = c.benchmark_group("weight_filtration");
    for n in [2, 4, 6] {
        let (_, n0) = tower(n);
        g.bench_with_input(BenchmarkId::from_parameter(3 * n), &n0, |b, m| b.iter(|| weight_filtration(m).unwrap()));
    }
    g.finish();

    let (orbit, _) = tower(4);
    let m = orbit.limit_mhs().unwrap();
    c.bench_function("deligne_bigrading/12", |b| b.iter(|| deligne_bigrading(&m).unwrap()));
}

fn orbits(c: &mut Criterion) {
    let (orbit, _) = tower(3);
    c.bench_function("verify_orbit/hodge_tate_3", |b| b.iter(|| verify_orbit(&orbit, &[]).unwrap()));
    c.bench_function("build_max_ivi_k2/3_3", |b| b.iter(|| build_max_ivi_k2(3, 3).unwrap()));
    let fam = symmetric_family_ivi(2).unwrap();
    c.bench_function("integrate_ivi/sym_family_2", |b| b.iter(|| integrate_ivi(&fam).unwrap()));
}

fn search(c: &mut Criterion) {
    let (orbit, _) = tower(3);
    let cfg = SearchConfig {
        restarts: 16,
        ..Default::default()
    };
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("greedy/hodge_tate_3", |b| b.iter(|| greedy_max_abelian(&orbit, &cfg).unwrap()));
    g.finish();
}

criterion_group!(benches, filtrations, orbits, search);
criterion_main!(benches);
