use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hardyx::analysis::{proj_norms_direct, proj_norms_spherical};
use hardyx::quadrature::{gauss_hermite, mapped_legendre, sphere_rule};
use hardyx::special::{bessel_ratio, hermite_phi_all, laguerre_psi_all};
use hardyx::transforms::{fourier_wigner, FunctionSpec};
use hardyx::C64;

fn rules(c: &mut Criterion) {
    let mut g = c.benchmark_group("rules");
    for n in [64usize, 200] {
        g.bench_with_input(BenchmarkId::new("gauss_hermite", n), &n, |b, &n| {
            b.iter(|| gauss_hermite(black_box(n)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("mapped_legendre", n), &n, |b, &n| {
            b.iter(|| mapped_legendre(black_box(n), -12.0, 12.0).unwrap())
        });
    }
    g.bench_function("sphere_s3_32", |b| b.iter(|| sphere_rule(2, black_box(32)).unwrap()));
    g.finish();
}

fn special(c: &mut Criterion) {
    let mut g = c.benchmark_group("special");
    g.bench_function("hermite_phi_all_40", |b| b.iter(|| hermite_phi_all(40, black_box(3.7)).unwrap()));
    g.bench_function("laguerre_psi_all_20", |b| {
        b.iter(|| laguerre_psi_all(20, 1.0, black_box(2.3)).unwrap())
    });
    for w in [C64::new(3.0, 1.0), C64::new(40.0, 0.5)] {
        g.bench_with_input(BenchmarkId::new("bessel_ratio", w.norm() as u32), &w, |b, &w| {
            b.iter(|| bessel_ratio(1.0, black_box(w)).unwrap())
        });
    }
    g.finish();
}

fn pipelines(c: &mut Criterion) {
    let mut g = c.benchmark_group("pipelines");
    g.sample_size(10);
    let f1 = FunctionSpec::parse("gaussian:b=0.5", 1).unwrap();
    g.bench_function("direct_n1_k40", |b| b.iter(|| proj_norms_direct(&f1, 40).unwrap()));
    let f2 = FunctionSpec::parse("example44", 2).unwrap();
    g.bench_function("direct_n2_k12", |b| b.iter(|| proj_norms_direct(&f2, 12).unwrap()));
    g.bench_function("spherical_n2_k12", |b| b.iter(|| proj_norms_spherical(&f2, 12).unwrap()));
    g.bench_function("fourier_wigner_point_n2", |b| {
        b.iter(|| fourier_wigner(&f2, &f2, black_box(&[1.0, -0.5, 0.3, 2.0])).unwrap())
    });
    g.finish();
}

criterion_group!(benches, rules, special, pipelines);
criterion_main!(benches);
