use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use latvoa::cofinite::quotient_table;
use latvoa::graded::Graded;
use latvoa::modes::ModeEngine;
use latvoa::par::Exec;
use latvoa::scalar::Weight;
use latvoa::space::{LatticeSpec, Space};
use latvoa::suites::{commutator_suite, virasoro_suite};

fn execs() -> Vec<(&'static str, Exec)> {
    vec![
        ("sequential", Exec::Sequential),
        #[cfg(feature = "parallel")]
        ("parallel", Exec::Parallel),
    ]
}

fn c2_table(c: &mut Criterion) {
    let mut g = c.benchmark_group("c2_quotient_table");
    g.sample_size(10);
    for max in [6, 7] {
        let space = Space::algebra(LatticeSpec::new(vec![2]).unwrap(), Weight::from_integer(max));
        let alg = Graded::full(&space);
        for (name, exec) in execs() {
            g.bench_with_input(BenchmarkId::new(name, max), &max, |b, &max| {
                b.iter(|| {
                    // fresh engine so the memo does not carry over between iterations
                    let engine = ModeEngine::new().with_exec(exec);
                    quotient_table(&engine, &alg.with_cutoff(Weight::from_integer(max)), &alg, 2, Weight::from_integer(max)).unwrap()
                })
            });
        }
    }
    g.finish();
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    let space = Space::algebra(LatticeSpec::new(vec![2, 4]).unwrap(), Weight::from_integer(8));
    for (name, exec) in execs() {
        g.bench_function(BenchmarkId::new("commutator", name), |b| {
            b.iter(|| commutator_suite(&ModeEngine::new().with_exec(exec), &space, 50, 3, 1).unwrap())
        });
        g.bench_function(BenchmarkId::new("virasoro", name), |b| {
            b.iter(|| virasoro_suite(&ModeEngine::new().with_exec(exec), &space, Weight::from_integer(2), 3).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, c2_table, suites);
criterion_main!(benches);
