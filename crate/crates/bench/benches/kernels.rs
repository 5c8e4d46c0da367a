use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use cubic_census::closed_forms::{macwilliams2, PairCase};
use cubic_census::configs::ConfigScanner;
use cubic_census::engine::{cubic_scan, hamming_enumerator, pair_census, Budget};
use cubic_census::{build_code, Evaluation};
use cubic_census_bench::geometry;

fn enumeration(c: &mut Criterion) {
    let g4 = geometry(4);
    let cubic = build_code(g4.plane(), 3, Evaluation::Projective).unwrap();
    c.bench_function("hamming_cubic_q4", |b| {
        b.iter(|| hamming_enumerator(g4.field(), black_box(&cubic), &Budget::DEFAULT).unwrap())
    });
    c.bench_function("cubic_scan_q4", |b| b.iter(|| cubic_scan(black_box(g4.plane()), &Budget::DEFAULT).unwrap()));
}

fn censuses(c: &mut Criterion) {
    let g5 = geometry(5);
    c.bench_function("census_conic_conic_q5", |b| {
        b.iter(|| pair_census(black_box(&g5), 2, 2, Evaluation::Projective, &Budget::DEFAULT).unwrap())
    });
    let g3 = geometry(3);
    let mut slow = c.benchmark_group("slow");
    slow.sample_size(10);
    slow.bench_function("census_cubic_cubic_q3", |b| {
        b.iter(|| pair_census(black_box(&g3), 3, 3, Evaluation::Projective, &Budget::DEFAULT).unwrap())
    });
    slow.bench_function("nine_point_sets_q3", |b| {
        b.iter(|| ConfigScanner::new(black_box(&g3)).count_i9(&Budget::DEFAULT).unwrap())
    });
    slow.finish();
}

fn transforms(c: &mut Criterion) {
    let g4 = geometry(4);
    let case = PairCase::ConicConic;
    let w2 = pair_census(&g4, 2, 2, Evaluation::Projective, &Budget::DEFAULT).unwrap().second_enumerator();
    let size = case.size_product(4);
    c.bench_function("macwilliams2_conic_q4", |b| b.iter(|| macwilliams2(black_box(&w2), 4, &size).unwrap()));
}

criterion_group!(benches, enumeration, censuses, transforms);
criterion_main!(benches);
