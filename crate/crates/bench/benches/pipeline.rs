use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rgauge_core::lattice::logical::HomologyBasis;
use rgauge_core::spectral::{quadratic_spectrum, quadrature_vectors};
use rgauge_core::{condense, logical_operators, LatticeCode, Taxonomy};

fn generators(t: &str) -> Vec<rgauge_core::FluxCharge> {
    t.parse::<Taxonomy>().unwrap().generators().unwrap()
}

fn bench_condense(c: &mut Criterion) {
    let mut g = c.benchmark_group("condense");
    for t in ["flux-charge(5)", "double(1,2)", "double(2,3)", "even-K(2,2,3)"] {
        let gens = generators(t);
        g.bench_with_input(BenchmarkId::from_parameter(t), &gens, |b, gens| b.iter(|| condense(black_box(gens)).unwrap()));
    }
    g.finish();
}

fn bench_boundary(c: &mut Criterion) {
    let fin = condense(&generators("double(2,3)")).unwrap().finite;
    c.bench_function("lagrangian search double(2,3)", |b| b.iter(|| black_box(&fin).lagrangian_subgroups()));
}

fn bench_lattice(c: &mut Criterion) {
    let o = condense(&generators("double(1,2)")).unwrap();
    let mut g = c.benchmark_group("lattice double(1,2)");
    g.sample_size(10);
    for l in [2, 3, 4] {
        g.bench_with_input(BenchmarkId::new("build+commute", l), &l, |b, &l| {
            b.iter(|| LatticeCode::build(&o, l).unwrap().verify_commuting())
        });
    }
    let code = LatticeCode::build(&o, 3).unwrap();
    g.bench_function("logicals L=3", |b| b.iter(|| logical_operators(&code, &HomologyBasis::standard(&code.torus)).unwrap()));
    g.finish();
}

fn bench_spectral(c: &mut Criterion) {
    let o = condense(&generators("double(1,2)")).unwrap();
    let mut g = c.benchmark_group("spectral double(1,2)");
    g.sample_size(10);
    for l in [2, 3, 4] {
        let code = LatticeCode::build(&o, l).unwrap();
        g.bench_with_input(BenchmarkId::new("quadratures+spectrum", l), &code, |b, code| {
            b.iter(|| {
                let layers = quadrature_vectors(code).unwrap();
                quadratic_spectrum(&layers[1].w, 0.5)
            })
        });
    }
    g.finish();
}

criterion_group!(benches, bench_condense, bench_boundary, bench_lattice, bench_spectral);
criterion_main!(benches);
