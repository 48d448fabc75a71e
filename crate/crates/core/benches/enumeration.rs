use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use saw_core::lattice::{build_ball, builtin};
use saw_core::saw::{count_from_midedges, count_from_vertices, EndFilter, EnumConfig};

fn configs() -> Vec<(&'static str, EnumConfig)> {
    let mut out = vec![("sequential", EnumConfig::sequential())];
    if cfg!(feature = "parallel") {
        out.push(("parallel", EnumConfig::default()));
    }
    out
}

fn hexagonal_vertex(c: &mut Criterion) {
    let spec = builtin("hexagonal").unwrap();
    let v = spec.seed_vertices()[0].clone();
    let mut group = c.benchmark_group("hexagonal_vertex");
    group.sample_size(10);
    for n in [16usize, 20] {
        let ball = build_ball(&spec, n + 1).unwrap();
        for (label, cfg) in configs() {
            group.bench_with_input(BenchmarkId::new(label, n), &n, |b, &n| {
                b.iter(|| count_from_vertices(&ball, black_box(&[v.clone()]), n, cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn square_octagon_midedge(c: &mut Criterion) {
    let spec = builtin("square_octagon").unwrap();
    let x = spec.domain_midedges();
    let n = 14;
    let ball = build_ball(&spec, n + 2).unwrap();
    let mut group = c.benchmark_group("square_octagon_midedge");
    group.sample_size(10);
    for (label, cfg) in configs() {
        group.bench_function(label, |b| {
            b.iter(|| count_from_midedges(&ball, black_box(&x), n, EndFilter::Any, cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, hexagonal_vertex, square_octagon_midedge);
criterion_main!(benches);
