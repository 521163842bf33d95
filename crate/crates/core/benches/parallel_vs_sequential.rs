use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use imcf_core::constructions::{build_bean, build_sphere, BeanSpec};
use imcf_core::diagnostics::{is_star_shaped_with, Raster};
use imcf_core::flow::{arrival_field, run, FlowConfig};
use imcf_core::geometry::{inradius_with, self_intersects_with, Vec2};
use imcf_core::hull::margin_threshold;
use imcf_core::par::Exec;

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn kernels(c: &mut Criterion) {
    let blob = build_bean(&BeanSpec::default_for(2).unwrap(), 1024).unwrap();
    let egg = build_bean(&BeanSpec::default_for(1).unwrap(), 4096).unwrap();
    let sphere = build_sphere(2, 1.0, 128).unwrap();
    let traj = run(&sphere, &FlowConfig { t_end: 0.5, m: 128, record_every: 0.05, ..FlowConfig::default() }).unwrap();

    let mut g = c.benchmark_group("kernels");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        g.bench_with_input(BenchmarkId::new("self_intersection", name), &exec, |b, &e| {
            b.iter(|| self_intersects_with(egg.curves(), 1, 0.25 * egg.spacing(), e))
        });
        g.bench_with_input(BenchmarkId::new("inradius", name), &exec, |b, &e| {
            b.iter(|| inradius_with(black_box(&blob), e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("reflection_raster", name), &exec, |b, &e| {
            b.iter(|| Raster::new(black_box(&blob), e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("star_rays", name), &exec, |b, &e| {
            b.iter(|| is_star_shaped_with(black_box(&egg), Vec2::new(0.1, 0.0), e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("arrival_field", name), &exec, |b, &e| {
            b.iter(|| arrival_field(black_box(&traj), 96, None, e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("margin_scan", name), &exec, |b, &e| {
            b.iter(|| margin_threshold(1.0, 2, 0.05, 0.6, 12, 1e-2, e).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
