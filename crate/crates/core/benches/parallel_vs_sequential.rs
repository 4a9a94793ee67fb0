use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use exact3::connectivity::all_pairs_connectivity;
use exact3::graph::families;
use exact3::{brute_force_census_with, enumerate, EnumerationQuery, Exec};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn frontier(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration_frontier");
    group.sample_size(10);
    for (name, exec) in MODES {
        let simple = EnumerationQuery::new(10).simple().biconnected().exec(exec);
        group.bench_with_input(BenchmarkId::new("simple_biconnected_10", name), &simple, |b, q| {
            b.iter(|| enumerate(q).unwrap().total())
        });
        let multi = EnumerationQuery::new(7).exec(exec);
        group.bench_with_input(BenchmarkId::new("all_classes_7", name), &multi, |b, q| {
            b.iter(|| enumerate(q).unwrap().total())
        });
    }
    group.finish();
}

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("order_7", name), |b| {
            b.iter(|| brute_force_census_with(7, exec).unwrap().total())
        });
    }
    group.finish();
}

fn flows(c: &mut Criterion) {
    let mut group = c.benchmark_group("all_pairs_flows");
    let graphs = [
        ("petersen", families::petersen()),
        ("harary_3_24", families::harary(3, 24)),
        ("complete_12", families::complete(12)),
    ];
    for (gname, g) in &graphs {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(*gname, name), g, |b, g| {
                b.iter(|| all_pairs_connectivity(g, exec).len())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, frontier, census, flows);
criterion_main!(benches);
