use criterion::{black_box, criterion_group, criterion_main, Criterion};
use zgb_core::summation::theorem_sweep;
use zgb_core::zeros::build_table;

fn bench_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("table");
    group.sample_size(10);
    group.bench_function("build_1000", |b| {
        b.iter(|| build_table(black_box(1000.0)).unwrap())
    });
    let table = build_table(1000.0).unwrap();
    group.bench_function("sweep_1000", |b| {
        b.iter(|| theorem_sweep(&table, 2.0, 1000.0, black_box(10_000)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_table);
criterion_main!(benches);
