use criterion::{criterion_group, criterion_main, Criterion};
use sclbound_core::bounds::{table, BoundCache, TypeSelection};
use sclbound_core::homology::{evaluate, hyperelliptic_word, verify_suite};
use sclbound_core::replay::{replay_report_with, ReplayOptions};
use sclbound_core::trace_words::verify_interleaving;

fn bound_recursion(c: &mut Criterion) {
    c.bench_function("bound_sweep_g_le_200", |b| {
        b.iter(|| {
            let mut cache = BoundCache::new();
            for g in 2..=200usize {
                for h in 0..=g {
                    cache.bound_value(g, h).unwrap();
                }
            }
        })
    });
    c.bench_function("table_g2_50_all", |b| {
        b.iter(|| table(2, 50, &TypeSelection::All, 8).unwrap())
    });
}

fn word_engine(c: &mut Criterion) {
    c.bench_function("interleaving_certificate_n12", |b| {
        b.iter(|| verify_interleaving(12).unwrap())
    });
    c.bench_function("interleaving_certificate_n32", |b| {
        b.iter(|| verify_interleaving(32).unwrap())
    });
}

fn homology_action(c: &mut Criterion) {
    c.bench_function("hyperelliptic_word_g8", |b| {
        b.iter(|| evaluate(8, &hyperelliptic_word(8)).unwrap())
    });
    c.bench_function("homology_suite_g5", |b| b.iter(|| verify_suite(5).unwrap()));
}

fn replay(c: &mut Criterion) {
    c.bench_function("replay_full_g8_h3", |b| {
        b.iter(|| replay_report_with(8, 3, ReplayOptions { check_homology: true }).unwrap())
    });
    c.bench_function("replay_structural_g40_h7", |b| {
        b.iter(|| replay_report_with(40, 7, ReplayOptions { check_homology: false }).unwrap())
    });
}

criterion_group!(benches, bound_recursion, word_engine, homology_action, replay);
criterion_main!(benches);
