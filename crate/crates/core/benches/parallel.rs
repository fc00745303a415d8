use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qseries::theta::{jtheta, pochhammer};
use qseries::verify::{run_suite, RunOptions};
use qseries::{Execution, Exponent, Monomial};
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn products(c: &mut Criterion) {
    let mut g = c.benchmark_group("product");
    for order in [2_000i64, 8_000] {
        let o = Exponent::int(order);
        let a = jtheta(Monomial::q(Exponent::new(1, 3)), Exponent::ONE, o).unwrap();
        let b = pochhammer(Monomial::neg_q(1), Exponent::new(1, 2), None, o).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, order), &order, |bench, _| {
                bench.iter(|| black_box(a.mul_with(&b, exec)))
            });
        }
    }
    g.finish();
}

fn registry(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_all");
    g.sample_size(10);
    for (name, exec) in MODES {
        let opts = RunOptions { exec, ..RunOptions::default() };
        g.bench_function(name, |bench| bench.iter(|| black_box(run_suite(None, &opts))));
    }
    g.finish();
}

criterion_group!(benches, products, registry);
criterion_main!(benches);
