//! Each workload runs once on a single-thread pool and once on the global pool.
//! Built without the `parallel` feature both variants run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sepack::adomain::{construct_adomain, neutral_bulge};
use sepack::construction::max_separable_contact_packing;
use sepack::geom::{hausdorff_distance, ConvexBody, Mat2};
use sepack::packing::certify_total_separability;
use sepack::polyomino::enumerate_fixed;

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("pool");
    let all = rayon::ThreadPoolBuilder::new().build().expect("pool");
    vec![("sequential", one), ("parallel", all)]
}

fn workloads(c: &mut Criterion) {
    let ellipse = ConvexBody::ellipse(1.3, 1.0).unwrap();
    let phi = std::f64::consts::PI / 12.0;
    let adomain = ConvexBody::ADomain(construct_adomain(1.0, phi, neutral_bulge(phi)).unwrap());
    let packing = max_separable_contact_packing(&ellipse, 60).unwrap().packing;
    let skewed = ConvexBody::disk(1.0).unwrap().linear_image(Mat2::new(1.2, 0.3, 0.0, 0.9)).unwrap();

    let mut group = c.benchmark_group("pool");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_with_input(BenchmarkId::new("certify_60", name), &pool, |b, pool| {
            // No hints, so pairs without a contact normal fall through to the direction grid.
            b.iter(|| pool.install(|| certify_total_separability(black_box(&packing), &[]).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("enumerate_9", name), &pool, |b, pool| {
            b.iter(|| pool.install(|| enumerate_fixed(black_box(9)).unwrap().len()))
        });
        group.bench_with_input(BenchmarkId::new("adomain_pack_100", name), &pool, |b, pool| {
            b.iter(|| pool.install(|| max_separable_contact_packing(black_box(&adomain), 100).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("hausdorff", name), &pool, |b, pool| {
            b.iter(|| pool.install(|| hausdorff_distance(black_box(&adomain), black_box(&skewed))))
        });
    }
    group.finish();
}

criterion_group!(benches, workloads);
criterion_main!(benches);
