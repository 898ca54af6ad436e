use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nilgrade_core::{catalog, find_grading, reproduce_table, Mode};

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_grading");
    group.sample_size(10);
    for name in ["L5_8", "L6_20", "L6_26", "Ln:7"] {
        let l = catalog::resolve(name).unwrap();
        let bound = 2 * l.dim() as i64;
        group.bench_with_input(BenchmarkId::from_parameter(name), &l, |b, l| {
            b.iter(|| find_grading(l, bound, Mode::Wh).unwrap())
        });
    }
    group.finish();
}

fn table(c: &mut Criterion) {
    let mut group = c.benchmark_group("reproduce_table");
    group.sample_size(10);
    group.bench_function("dim 6", |b| b.iter(|| reproduce_table(6, None).unwrap()));
    group.finish();
}

criterion_group!(benches, search, table);
criterion_main!(benches);
