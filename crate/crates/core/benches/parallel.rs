//! Sequential against rayon-parallel schedules on the main workloads.
//! Build with `--no-default-features` to see both collapse to sequential.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qlayer::effpot::SampledPotential;
use qlayer::hardy::hardy_validity_chart;
use qlayer::layer3d::{layer_negative_spectrum, LayerOperatorSpec, LayerOptions};
use qlayer::profiles::DeformationProfile;
use qlayer::schrodinger2d::{negative_spectrum, Hamiltonian2d, SpectrumOptions};
use qlayer::{RadialGrid, Schedule};

const SCHEDULES: [(&str, Schedule); 2] = [("sequential", Schedule::Sequential), ("parallel", Schedule::Parallel)];

fn square_well(c: &mut Criterion) {
    let grid = RadialGrid::aligned(2.0, 2000, 1.0).unwrap();
    let v = SampledPotential::square_well(50.0, 1.0, &grid).unwrap();
    let h = Hamiltonian2d::attractive(v);
    let mut group = c.benchmark_group("spectrum2d_v0_50");
    group.sample_size(10);
    for (name, schedule) in SCHEDULES {
        let opts = SpectrumOptions {
            schedule,
            ..SpectrumOptions::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, o| {
            b.iter(|| negative_spectrum(&h, 0.0, o).unwrap())
        });
    }
    group.finish();
}

fn layer(c: &mut Criterion) {
    let p = DeformationProfile::cosine_bump(0.6, 2.0, 1.0).validate().unwrap();
    let spec = LayerOperatorSpec::new(p);
    let mut group = c.benchmark_group("layer_h06_r2");
    group.sample_size(10);
    for (name, schedule) in SCHEDULES {
        let opts = LayerOptions {
            schedule,
            ..LayerOptions::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, o| {
            b.iter(|| layer_negative_spectrum(&spec, o).unwrap())
        });
    }
    group.finish();
}

fn hardy(c: &mut Criterion) {
    let betas: Vec<f64> = (1..=64).map(|k| k as f64 * 0.5).collect();
    let mut group = c.benchmark_group("hardy_chart_64");
    group.sample_size(10);
    for (name, schedule) in SCHEDULES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &schedule, |b, &s| {
            b.iter(|| hardy_validity_chart(&betas, 512, s).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, square_well, layer, hardy);
criterion_main!(benches);
