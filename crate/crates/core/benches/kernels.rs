//! Sequential vs rayon execution of the three data-parallel kernels.
//!
//! Without the `parallel` feature both variants run the sequential path.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use pcl_core::orbgroups::count_epimorphisms_with;
use pcl_core::par::Exec;
use pcl_core::pencils::{orbifold_of_pencil_with, Pencil};
use pcl_core::polycore::{rat, HomForm};
use pcl_core::splitting::{find_identity_with, parametrize_conic, DEFAULT_HEIGHT_BOUND};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn f(s: &str) -> HomForm {
    HomForm::parse(s).unwrap()
}

fn epimorphisms(c: &mut Criterion) {
    let mut g = c.benchmark_group("count_epimorphisms");
    for (name, exec) in MODES {
        // (2; 2, 2) onto D_48: 48^2 * 25^2 tuples before the forced generator.
        g.bench_with_input(BenchmarkId::new(name, "(2;2,2)->D48"), &exec, |b, &exec| {
            b.iter(|| count_epimorphisms_with(exec, black_box(2), &[2, 2], 48).unwrap())
        });
    }
    g.finish();
}

fn pencil_signature(c: &mut Criterion) {
    let d2 = f("x^2 + y^2 + x*z + z^2");
    let d3 = f("x^3 + 2*y^3 - z^3 + x*y*z");
    let (p, q) = (d2.pow(3).unwrap(), d3.pow(2).unwrap());
    let curve = p.combine(&rat(1), &q, &rat(1));
    let pencil = Pencil::new(p, q).unwrap();
    let mut g = c.benchmark_group("orbifold_of_pencil");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "zariski-sextic"), &exec, |b, &exec| {
            b.iter(|| orbifold_of_pencil_with(exec, &pencil, std::slice::from_ref(&curve), 6).unwrap())
        });
    }
    g.finish();
}

fn witness_search(c: &mut Criterion) {
    let f1 = f("x^2 + y^2 - z^2");
    // No witness exists, so every degree up to the bound is searched.
    let f2 = f("x^2 + 2*y^2 - 3*z^2");
    let phi = parametrize_conic(&f2, DEFAULT_HEIGHT_BOUND).unwrap();
    let mut g = c.benchmark_group("find_identity");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "transverse-conic-dmax4"), &exec, |b, &exec| {
            b.iter(|| find_identity_with(exec, &f1, &f2, &phi, 4).unwrap_err())
        });
    }
    g.finish();
}

criterion_group!(benches, epimorphisms, pencil_signature, witness_search);
criterion_main!(benches);
