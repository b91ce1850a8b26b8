//! Sequential against rayon trial execution on a few representative checks.
//!
//! With `--no-default-features` the parallel arm runs the sequential loop.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use infdilog::cluster::Pattern;
use infdilog::dilog::DilogParams;
use infdilog::exec::Execution;
use infdilog::verify::{self, CheckContext, PentagonMode, Sampling};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn pentagon(c: &mut Criterion) {
    let mut group = c.benchmark_group("pentagon_q");
    group.sample_size(10);
    let params = DilogParams::new(4, 7).unwrap();
    for (name, exec) in MODES {
        let ctx = CheckContext::new(0).with_execution(exec);
        group.bench_with_input(BenchmarkId::new(name, "(4,7)x50"), &ctx, |b, ctx| {
            b.iter(|| {
                verify::check_pentagon(
                    ctx,
                    PentagonMode::CharZero(params),
                    Sampling::Random { trials: 50 },
                    10,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

fn cluster_p(c: &mut Criterion) {
    let mut group = c.benchmark_group("cluster_p_exhaustive");
    group.sample_size(10);
    for p in [5, 7] {
        for (name, exec) in MODES {
            let ctx = CheckContext::new(0).with_execution(exec);
            group.bench_with_input(BenchmarkId::new(name, format!("B2/F_{p}")), &p, |b, &p| {
                b.iter(|| {
                    verify::check_cluster_charp(&ctx, &Pattern::b2(), p, Sampling::Exhaustive)
                        .unwrap()
                })
            });
        }
    }
    group.finish();
}

fn welldef(c: &mut Criterion) {
    let mut group = c.benchmark_group("welldef");
    group.sample_size(10);
    let params = DilogParams::new(3, 5).unwrap();
    for (name, exec) in MODES {
        let ctx = CheckContext::new(0).with_execution(exec);
        group.bench_with_input(BenchmarkId::new(name, "(3,5)x20"), &ctx, |b, ctx| {
            b.iter(|| verify::check_welldef(ctx, params, 20, 10, 10))
        });
    }
    group.finish();
}

criterion_group!(benches, pentagon, cluster_p, welldef);
criterion_main!(benches);
