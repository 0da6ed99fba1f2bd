use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use smooshkit::bundle::act;
use smooshkit::*;
use smooshkit_bench::load;

fn chambers(c: &mut Criterion) {
    let mut g = c.benchmark_group("chambers");
    for name in [
        "three-generic-lines",
        "four-generic-lines",
        "four-generic-planes",
    ] {
        let a = load(name);
        g.bench_with_input(BenchmarkId::from_parameter(name), &a, |b, a| {
            b.iter(|| enumerate_chambers(black_box(a)))
        });
    }
    g.finish();
}

fn betti(c: &mut Criterion) {
    let mut g = c.benchmark_group("betti");
    g.sample_size(10);
    for name in [
        "concurrent-lines",
        "four-generic-lines",
        "four-generic-planes",
    ] {
        let model = ZModel::new(load(name));
        let q = model.arrangement().dim() + 1;
        g.bench_with_input(BenchmarkId::from_parameter(name), &model, |b, m| {
            b.iter(|| betti_compare(black_box(m), q, CechOptions::default()).unwrap())
        });
    }
    g.finish();
}

fn retract(c: &mut Criterion) {
    let mut g = c.benchmark_group("retract");
    for name in ["two-points", "five-points", "four-generic-lines"] {
        let bundle = Bundle::new(ZModel::new(load(name)));
        let d = bundle.arrangement().dim();
        let m = MPoint::from_f64(vec![0.3; d], vec![0.7; d]);
        let lambda = bundle.w().to_ambient(&vec![1.5; bundle.w().dim()]);
        let z = act(&lambda, &bundle.embed_m(&m).unwrap()).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(name), &z, |b, z| {
            b.iter(|| bundle.kempf_ness_retract(black_box(z)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, chambers, betti, retract);
criterion_main!(benches);
