use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pathchrom_core::corpus::{self, random_graph};
use pathchrom_core::dp::{path_chromatic_number_with, DpConfig};
use pathchrom_core::{make_complete, make_cycle, r_product, Execution, Graph};

fn instances() -> Vec<(&'static str, Graph)> {
    vec![
        (
            "R3(C5)",
            r_product(&make_cycle(5).unwrap(), 3)
                .unwrap()
                .graph()
                .clone(),
        ),
        (
            "R6(K2)",
            r_product(&make_complete(2).unwrap(), 6)
                .unwrap()
                .graph()
                .clone(),
        ),
        ("G(16,0.3)", random_graph(&mut corpus::rng(16), 16, 0.3)),
    ]
}

fn path_chromatic(c: &mut Criterion) {
    let mut group = c.benchmark_group("path_chromatic_number");
    group.sample_size(10);
    for (name, g) in instances() {
        for execution in [Execution::Sequential, Execution::Parallel] {
            let config = DpConfig {
                execution,
                size_override: false,
            };
            group.bench_with_input(
                BenchmarkId::new(format!("{execution:?}"), name),
                &g,
                |b, g| b.iter(|| path_chromatic_number_with(g, &config).unwrap()),
            );
        }
    }
    group.finish();
}

criterion_group!(benches, path_chromatic);
criterion_main!(benches);
