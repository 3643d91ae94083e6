use std::hint::black_box;

use bsh_core::constructions::{kron_square, KronVariant};
use bsh_core::data::bundled_data;
use bsh_core::feasibility::eigvec_search;
use bsh_core::latin::{affine_ufs_family, is_ufs_family};
use bsh_core::matrix::sylvester;
use bsh_core::schemes::build_5class;
use bsh_core::splittability::search_splits;
use bsh_core::Exec;
use criterion::{criterion_group, criterion_main, Criterion};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn scheme_verification(c: &mut Criterion) {
    let inst = kron_square(&sylvester(2), KronVariant::Large).unwrap();
    let fam: Vec<_> = affine_ufs_family(9).unwrap().into_iter().take(2).map(|s| s.shift_symbols(1)).collect();
    let mut group = c.benchmark_group("build_5class_288");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| build_5class(black_box(&inst), &fam, exec).unwrap()));
    }
    group.finish();
}

fn eigenvector_search(c: &mut Criterion) {
    let rook = bundled_data("srg-36-10-4-2").unwrap();
    let mut group = c.benchmark_group("eigvec_search_36");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| eigvec_search(black_box(&rook), 10, 4, -2, exec).unwrap()));
    }
    group.finish();
}

fn split_search(c: &mut Criterion) {
    let h = sylvester(4);
    let mut group = c.benchmark_group("search_splits_16_6");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| search_splits(black_box(&h), 6, 10_000_000, exec).unwrap()));
    }
    group.finish();
}

fn ufs_family(c: &mut Criterion) {
    let fam = affine_ufs_family(27).unwrap();
    let mut group = c.benchmark_group("ufs_family_27");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| is_ufs_family(black_box(&fam), exec)));
    }
    group.finish();
}

criterion_group!(benches, scheme_verification, eigenvector_search, split_search, ufs_family);
criterion_main!(benches);
