use criterion::{black_box, criterion_group, criterion_main, Criterion};

use chromplane::coloring::{is_k_colorable, SolverConfig};
use chromplane::graph::{build_bicycle, build_point_graph};
use chromplane::hex_bound::max_epsilon;
use chromplane::{Interval, Norm, PlanePoint};

fn bicycle(c: &mut Criterion) {
    let norm = Norm::euclidean();
    let interval = Interval::around_unit(0.05).unwrap();
    c.bench_function("bicycle build s=1.5 count=500", |b| {
        b.iter(|| build_bicycle(&norm, black_box(1.5), 500, interval).unwrap())
    });
    let g = build_bicycle(&norm, 1.5, 500, interval).unwrap();
    let cfg = SolverConfig::default();
    for k in [3, 4] {
        c.bench_function(&format!("bicycle solve k={k}"), |b| b.iter(|| is_k_colorable(&g, k, &cfg).unwrap()));
    }
}

fn point_graph(c: &mut Criterion) {
    let pts: Vec<PlanePoint> =
        (0..2000).map(|i| PlanePoint::new((i % 50) as f64 * 0.11, (i / 50) as f64 * 0.13)).collect();
    let norm = Norm::euclidean();
    let interval = Interval::around_unit(0.1).unwrap();
    c.bench_function("point graph n=2000", |b| b.iter(|| build_point_graph(pts.clone(), &norm, interval)));
}

fn hex(c: &mut Criterion) {
    let mut group = c.benchmark_group("hex");
    group.sample_size(10);
    group.bench_function("max_epsilon euclidean", |b| b.iter(|| max_epsilon(&Norm::euclidean()).unwrap()));
    group.finish();
}

criterion_group!(benches, bicycle, point_graph, hex);
criterion_main!(benches);
