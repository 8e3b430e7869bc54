use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cpsm::cpsm::solve_exact_with;
use cpsm::geometry::{Point, PolyCurve};
use cpsm::par::{self, Execution};
use cpsm::{Instance, Variant};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn zigzag(n: usize) -> (Vec<(f64, f64)>, PolyCurve) {
    let verts: Vec<(f64, f64)> =
        (0..=n).map(|i| (i as f64 * 2.0, if i % 2 == 0 { 0.0 } else { 1.5 })).collect();
    let curve = PolyCurve::from_xy(&verts).unwrap();
    (verts, curve)
}

/// `k` points alternating above and below the zig-zag plus one point no
/// witness can reach, so the search has to exhaust its state space.
fn hard_instance(n: usize, k: usize, variant: Variant) -> Instance {
    let (verts, curve) = zigzag(n);
    let len = 2.0 * n as f64;
    let mut pts: Vec<Point> = (0..k)
        .map(|j| {
            let x = len * j as f64 / (k - 1) as f64;
            let i = ((x / 2.0) as usize).min(n - 1);
            let t = (x - verts[i].0) / 2.0;
            let y = verts[i].1 + t * (verts[i + 1].1 - verts[i].1);
            Point::xy(x, y + if j % 2 == 0 { 0.6 } else { -0.6 })
        })
        .collect();
    pts.push(Point::xy(len / 2.0, 4.0));
    Instance::new(curve, pts, 1.0, variant).unwrap()
}

fn random_instance(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Instance {
    let (verts, curve) = zigzag(n);
    loop {
        let pts: Vec<Point> = (0..k)
            .map(|_| {
                let i = rng.gen_range(0..n);
                let t: f64 = rng.gen();
                let (a, b) = (verts[i], verts[i + 1]);
                Point::xy(
                    a.0 + t * (b.0 - a.0) + rng.gen_range(-0.8..0.8),
                    a.1 + t * (b.1 - a.1) + rng.gen_range(-0.8..0.8),
                )
            })
            .collect();
        if let Ok(inst) = Instance::new(curve.clone(), pts, 1.0, Variant::NonUniqueAllPoints) {
            return inst;
        }
    }
}

fn single_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_single");
    group.sample_size(10);
    for (name, variant) in [("unique-all", Variant::UniqueAllPoints), ("nonunique-all", Variant::NonUniqueAllPoints)] {
        let inst = hard_instance(6, 10, variant);
        for (mode_name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(mode_name, name), &inst, |b, inst| {
                b.iter(|| solve_exact_with(black_box(inst), None, mode).unwrap())
            });
        }
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let batch: Vec<Instance> = (0..64).map(|_| random_instance(&mut rng, 6, 7)).collect();
    let mut group = c.benchmark_group("exact_batch64");
    group.sample_size(10);
    for (mode_name, mode) in MODES {
        group.bench_function(mode_name, |b| {
            b.iter(|| {
                par::map(black_box(&batch), mode, |inst| {
                    solve_exact_with(inst, None, Execution::Sequential).unwrap().found()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, single_search, batch);
criterion_main!(benches);
