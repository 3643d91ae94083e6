use bsh_core::exec::Exec;
use bsh_core::feasibility::{
    enumerate_case_a, enumerate_seidel, enumerate_seidel_all, eigvec_search, seidel_identity, Status,
};
use bsh_core::matrix::IntMatrix;
use bsh_core::SrgParams;

use Status::{ExcludedMod4Diff as Diff, ExcludedMod4Sum as Sum, ExistsByConstruction as E, Open as O};

// (n, ℓ, a, status) as printed, first column then second.
const SEIDEL: [(i64, i64, i64, Status); 28] = [
    (16, 6, 2, E),
    (36, 15, 3, Sum),
    (64, 28, 4, E),
    (100, 45, 5, Sum),
    (120, 35, 5, Diff),
    (144, 66, 6, O),
    (196, 91, 7, Sum),
    (256, 120, 8, E),
    (280, 63, 7, Sum),
    (288, 42, 6, O),
    (320, 88, 8, O),
    (324, 153, 9, Sum),
    (400, 190, 10, O),
    (484, 231, 11, Sum),
    (528, 187, 11, Sum),
    (540, 99, 9, Diff),
    (560, 130, 10, O),
    (576, 276, 12, O),
    (616, 165, 11, Diff),
    (640, 72, 8, O),
    (676, 325, 13, Sum),
    (780, 247, 13, Diff),
    (784, 378, 14, O),
    (900, 435, 15, Sum),
    (924, 143, 11, Sum),
    (936, 221, 13, Sum),
    (1008, 266, 14, O),
    (1024, 496, 16, E),
];

// (n, ℓ, a, b, k, λ, μ)
const CASE_A: [(i64, i64, i64, i64, i64, i64, i64); 14] = [
    (16, 5, 1, -3, 10, 6, 6),
    (16, 9, 1, -3, 9, 4, 6),
    (36, 10, 4, -2, 10, 4, 2),
    (36, 14, 2, -4, 21, 12, 12),
    (36, 20, 2, -4, 20, 10, 12),
    (36, 25, 1, -5, 25, 16, 20),
    (64, 14, 6, -2, 14, 6, 2),
    (64, 18, 2, -6, 45, 32, 30),
    (64, 21, 5, -3, 21, 8, 6),
    (64, 27, 3, -5, 36, 20, 20),
    (64, 35, 3, -5, 35, 18, 20),
    (64, 42, 2, -6, 42, 26, 30),
    (64, 45, 5, -3, 18, 2, 6),
    (64, 49, 1, -7, 49, 36, 42),
];

fn rook(m: usize) -> IntMatrix {
    IntMatrix::from_fn(m * m, m * m, |x, y| i64::from(x != y && (x / m == y / m || x % m == y % m)))
}

#[test]
fn seidel_table_up_to_1024() {
    let rows = enumerate_seidel(1024);
    let got: Vec<_> = rows.iter().map(|r| (r.params.n, r.params.ell, r.params.a, r.status)).collect();
    assert_eq!(got, SEIDEL);
    for r in &rows {
        assert_eq!(r.params.b, -r.params.a);
        assert!(seidel_identity(&r.params));
        assert!(r.srg.satisfies_identity());
    }
    let all = enumerate_seidel_all(1024);
    assert_eq!(all.len(), 29);
    let extra: Vec<_> = all.iter().filter(|r| !rows.iter().any(|s| s.params == r.params)).collect();
    assert_eq!(extra.len(), 1);
    assert_eq!((extra[0].params.n, extra[0].params.ell, extra[0].params.a), (96, 20, 4));
    assert_eq!(extra[0].status, Status::ExcludedExternal);
}

#[test]
fn case_a_table_up_to_64() {
    let rows = enumerate_case_a(64);
    let got: Vec<_> = rows
        .iter()
        .map(|r| (r.params.n, r.params.ell, r.params.a, r.params.b, r.srg.k, r.srg.lambda, r.srg.mu))
        .collect();
    assert_eq!(got, CASE_A);
    for r in &rows {
        assert_eq!(r.srg.v, r.params.n);
        assert!(r.srg.satisfies_identity());
        assert!(0 < r.params.a && r.params.a < r.params.ell);
    }
    let exists: Vec<_> = rows.iter().filter(|r| r.status == E).map(|r| (r.params.n, r.params.ell)).collect();
    assert_eq!(exists, [(16, 5), (16, 9), (64, 14), (64, 27), (64, 35), (64, 49)]);
    let excluded = rows.iter().filter(|r| r.status.is_excluded()).count();
    assert_eq!(excluded, 4);
}

#[test]
fn rook6_search() {
    let r = eigvec_search(&rook(6), 10, 4, -2, Exec::Parallel).unwrap();
    assert!(r.rules_out);
    assert!(r.max_set < 10);
    let r = eigvec_search(&rook(4), 6, 2, -2, Exec::Parallel).unwrap();
    assert!(r.max_set >= 6);
    assert!(!r.rules_out);
    assert_eq!(SrgParams::of_adjacency(&rook(6)), Some(SrgParams::new(36, 10, 4, 2)));
}
