use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dihedral_pgm::{count_eta, povm_block, success_mc, NeumarkDilation, SeedSplitter, SolutionSampler};
use dihedral_pgm_bench::random_labels;

fn bench_count_eta(c: &mut Criterion) {
    let mut g = c.benchmark_group("count_eta");
    for (n, k) in [(64, 10), (1024, 5), (4096, 12)] {
        let labels = random_labels(n, k, 64, 1);
        g.bench_with_input(BenchmarkId::from_parameter(format!("N{n}_k{k}")), &labels, |b, labels| {
            b.iter(|| {
                for x in labels {
                    black_box(count_eta(x));
                }
            })
        });
    }
    g.finish();
}

fn bench_povm_block(c: &mut Criterion) {
    let mut g = c.benchmark_group("povm_block");
    for (n, k) in [(8, 4), (16, 6)] {
        let x = random_labels(n, k, 1, 2).remove(0);
        g.bench_with_input(BenchmarkId::from_parameter(format!("N{n}_k{k}")), &x, |b, x| {
            b.iter(|| black_box(povm_block(x).unwrap()))
        });
    }
    g.finish();
}

fn bench_success_mc(c: &mut Criterion) {
    let mut g = c.benchmark_group("success_mc");
    g.sample_size(10);
    for (n, k) in [(64, 10), (4096, 6)] {
        g.bench_function(BenchmarkId::from_parameter(format!("N{n}_k{k}")), |b| {
            b.iter(|| black_box(success_mc(n, k, 10_000, 7).unwrap()))
        });
    }
    g.finish();
}

fn bench_sampling(c: &mut Criterion) {
    let x = random_labels(64, 12, 1, 3).remove(0);
    let sampler = SolutionSampler::new(&x);
    let t = x.dot(0b1010_1100_0111);
    let mut rng = SeedSplitter::new(4).stream(0);
    c.bench_function("solution_sample/N64_k12", |b| {
        b.iter(|| black_box(sampler.sample(t, &mut rng).unwrap()))
    });

    let dil = NeumarkDilation::new(&x).unwrap();
    c.bench_function("qsample/N64_k12", |b| b.iter(|| black_box(dil.qsample(t).unwrap())));
}

criterion_group!(benches, bench_count_eta, bench_povm_block, bench_success_mc, bench_sampling);
criterion_main!(benches);
