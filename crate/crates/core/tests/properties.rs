use bsh_core::constructions::{
    core_tensor, gram_construction, kron_square, skew_core_bsh, twin_deletion, twin_sylvester, two_row_split,
    BshInstance, DeletionSide, KronVariant,
};
use bsh_core::io::{format_latin, format_matrix, load_latin, load_matrix, parse_latin, parse_matrix, save_latin, save_matrix};
use bsh_core::latin::{affine_ufs_family, circle_symmetric, compose_ufs, force_constant_diagonal, is_ufs, is_ufs_family, LatinSquare};
use bsh_core::matrix::{paley_skew_core, sylvester};
use bsh_core::schemes::auxiliary::{lift_gram_holds, lift_product_holds};
use bsh_core::schemes::{lift_latin, AuxiliarySet};
use bsh_core::splittability::{complement_params, complement_rows, gram_from_params};
use bsh_core::{check_split, Exec, HadamardMatrix, IntMatrix};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn constructed() -> Vec<(String, BshInstance)> {
    let mut out = Vec::new();
    for k in 1..=3 {
        for v in [KronVariant::Large, KronVariant::Small] {
            out.push((format!("kron {k} {v:?}"), kron_square(&sylvester(k), v).unwrap()));
        }
        out.push((format!("gram {k}"), gram_construction(&sylvester(k)).unwrap()));
    }
    for (k, m) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)] {
        out.push((format!("core-tensor {k} {m}"), core_tensor(&sylvester(k), &sylvester(m)).unwrap()));
    }
    for m in 2..=6 {
        out.push((format!("two-row {m}"), two_row_split(&sylvester(m)).unwrap()));
    }
    for m in 1..=3 {
        let [h1, h2, h3] = twin_sylvester(m).unwrap().instances().unwrap();
        out.extend([(format!("twin {m} h1"), h1), (format!("twin {m} h2"), h2), (format!("twin {m} h3"), h3)]);
    }
    for m in 2..=3 {
        for side in [DeletionSide::Complement, DeletionSide::Translated] {
            out.push((format!("twin-deletion {m} {side:?}"), twin_deletion(m, side).unwrap()));
        }
    }
    for q in [3, 7] {
        out.push((format!("skew-core {q}"), skew_core_bsh(&paley_skew_core(q).unwrap()).unwrap()));
    }
    out
}

fn outer(x: &[i64]) -> IntMatrix {
    IntMatrix::from_fn(x.len(), x.len(), |p, q| x[p] * x[q])
}

#[test]
fn auxiliary_identities_on_constructions() {
    let all = constructed();
    assert!(all.len() > 25);
    for (name, inst) in &all {
        let h = &inst.h;
        let n = h.order();
        assert!(n <= 64, "{name}");
        let aux = AuxiliarySet::new(h).unwrap_or_else(|e| panic!("{name}: {e}"));
        let mut total = IntMatrix::zeros(n, n);
        for i in 0..n {
            let c = outer(h.row(i));
            assert_eq!(*aux.c(i), c, "{name}");
            assert_eq!(&c * &c, c.scale(n as i64), "{name}: C_{i}²");
            let j = (i + 1) % n;
            assert!((&c * &outer(h.row(j))).is_zero() || i == j, "{name}: C_{i} C_{j}");
            total = &total + &c;
        }
        assert_eq!(total, IntMatrix::identity(n).scale(n as i64), "{name}");
        let sub = h.matrix().select_rows(&inst.split_rows);
        assert_eq!(aux.sum_over(&inst.split_rows), &sub.transpose() * &sub, "{name}");
        let p = inst.report.params;
        if p.a != p.b && aux.annihilates_ones(&inst.split_rows) {
            assert!(aux.eigen_relation_holds(&inst.report.adjacency, &inst.split_rows, &p), "{name}");
        }
    }
}

#[test]
fn lifted_latin_gram() {
    let inst = kron_square(&sylvester(2), KronVariant::Large).unwrap();
    let aux = AuxiliarySet::new(&inst.h).unwrap();
    let gram = gram_from_params(&inst.report.params, &inst.report.adjacency);
    let lift = lift_latin(&aux, &circle_symmetric(10).unwrap(), &inst.split_rows).unwrap();
    assert!(lift_gram_holds(&lift, &gram));
    let fam: Vec<LatinSquare> = affine_ufs_family(9).unwrap().iter().map(|s| s.shift_symbols(1)).collect();
    let lifts: Vec<IntMatrix> = fam[..3].iter().map(|s| lift_latin(&aux, s, &inst.split_rows).unwrap()).collect();
    for l in &lifts {
        assert!(lift_gram_holds(l, &gram));
    }
    let l12 = lift_latin(&aux, &compose_ufs(&fam[0], &fam[1]).unwrap(), &inst.split_rows).unwrap();
    assert!(lift_product_holds(&lifts[0], &lifts[1], &l12, 16));
}

#[test]
fn complement_split_on_constructions() {
    for (name, inst) in constructed() {
        let n = inst.h.order();
        let rest = complement_rows(n, &inst.split_rows);
        assert_eq!(complement_rows(n, &rest), inst.report.rows, "{name}");
        let p = inst.report.params;
        assert_eq!(complement_params(&complement_params(&p)), p);
        if rest.len() >= 2 {
            let back = check_split(&inst.h, &rest).unwrap_or_else(|e| panic!("{name}: {e}"));
            let want = complement_params(&p);
            if p.a != p.b {
                assert_eq!(back.params, want, "{name}");
            }
        }
    }
}

fn ufs_oracle(l1: &LatinSquare, l2: &LatinSquare) -> bool {
    let v = l1.order();
    (0..v).all(|r| (0..v).all(|s| (0..v).filter(|&c| l1.get(r, c) == l2.get(s, c)).count() == 1))
}

#[test]
fn ufs_affine_exhaustive() {
    for q in [3, 4, 5, 7, 8, 9] {
        let fam = affine_ufs_family(q).unwrap();
        assert_eq!(fam.len(), q - 1);
        for (i, a) in fam.iter().enumerate() {
            assert!(a.is_latin());
            for (j, b) in fam.iter().enumerate() {
                assert_eq!(is_ufs(a, b), ufs_oracle(a, b), "q = {q}, ({i}, {j})");
                assert_eq!(is_ufs(a, b), i != j, "q = {q}, ({i}, {j})");
            }
        }
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert!(is_ufs_family(&fam, exec));
        }
        for symbol in 0..q {
            let fixed = force_constant_diagonal(&fam, symbol).unwrap();
            assert!(fixed.iter().all(|s| s.has_constant_diagonal(symbol)));
            assert!(is_ufs_family(&fixed, Exec::Sequential), "q = {q}, symbol {symbol}");
        }
    }
}

#[test]
fn compose_triple_consistency_q7() {
    let fam = affine_ufs_family(7).unwrap();
    let f = fam.len();
    for i in 0..f {
        for j in 0..f {
            for k in 0..f {
                if i == j || j == k || i == k {
                    continue;
                }
                let lik = compose_ufs(&fam[i], &fam[k]).unwrap();
                let ljk = compose_ufs(&fam[j], &fam[k]).unwrap();
                assert!(is_ufs(&lik, &ljk), "({i}, {j}, {k})");
                assert_eq!(compose_ufs(&lik, &ljk).unwrap(), compose_ufs(&fam[i], &fam[j]).unwrap(), "({i}, {j}, {k})");
            }
        }
    }
    assert!(compose_ufs(&fam[0], &fam[0]).is_err());
}

fn relabel(sq: &LatinSquare, rows: &[usize], cols: &[usize], syms: &[usize]) -> LatinSquare {
    let v = sq.order();
    let cells = (0..v).map(|i| (0..v).map(|j| syms[sq.get(rows[i], cols[j]) - sq.min_symbol()] + sq.min_symbol()).collect()).collect();
    LatinSquare::new(sq.min_symbol(), cells).unwrap()
}

fn perm(v: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..v).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn column_permutation_keeps_split(idx in 0usize..29, cols in perm(64)) {
        let all = constructed();
        let (name, inst) = &all[idx % all.len()];
        let n = inst.h.order();
        let cols: Vec<usize> = cols.into_iter().filter(|&c| c < n).collect();
        let m = IntMatrix::from_fn(n, n, |r, c| inst.h.matrix().get(r, cols[c]));
        let h = HadamardMatrix::new(m).unwrap();
        let r = check_split(&h, &inst.split_rows).unwrap();
        prop_assert_eq!(r.params, inst.report.params, "{}", name);
    }

    #[test]
    fn complement_rows_involution(n in 1usize..80, picks in subsequence((0..80).collect::<Vec<usize>>(), 0..40)) {
        let rows: Vec<usize> = picks.into_iter().filter(|&r| r < n).collect();
        let rest = complement_rows(n, &rows);
        prop_assert_eq!(rest.len() + rows.len(), n);
        prop_assert_eq!(complement_rows(n, &rest), rows);
    }

    #[test]
    fn compose_is_latin_under_relabeling(a in 1usize..7, b in 1usize..7, rows in perm(7), syms in perm(7)) {
        prop_assume!(a != b);
        let fam = affine_ufs_family(7).unwrap();
        let cols: Vec<usize> = (0..7).collect();
        // Same column order keeps UFS; rows and symbols may be relabeled.
        let l1 = relabel(&fam[a - 1], &rows, &cols, &syms);
        let l2 = relabel(&fam[b - 1], &cols, &cols, &syms);
        prop_assert!(is_ufs(&l1, &l2));
        prop_assert!(compose_ufs(&l1, &l2).unwrap().is_latin());
    }

    #[test]
    fn matrix_text_round_trip(rows in 1usize..9, cols in 1usize..9, seed in proptest::collection::vec(-20i64..20, 81)) {
        let m = IntMatrix::from_fn(rows, cols, |i, j| seed[i * 9 + j]);
        let text = format_matrix(&m);
        let back = parse_matrix(&text).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(format_matrix(&back), text.clone());
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.txt");
        save_matrix(&m, &p).unwrap();
        prop_assert_eq!(std::fs::read_to_string(&p).unwrap(), text);
        prop_assert_eq!(load_matrix(&p).unwrap(), m);
    }

    #[test]
    fn latin_text_round_trip(q in prop::sample::select(vec![3usize, 4, 5, 7, 8, 9]), which in 0usize..8, shift in 0usize..3) {
        let fam = affine_ufs_family(q).unwrap();
        let sq = fam[which % fam.len()].shift_symbols(shift);
        let text = format_latin(&sq);
        let back = parse_latin(&text).unwrap();
        prop_assert_eq!(&back, &sq);
        prop_assert_eq!(format_latin(&back), text.clone());
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("l.txt");
        save_latin(&sq, &p).unwrap();
        prop_assert_eq!(std::fs::read_to_string(&p).unwrap(), text);
        prop_assert_eq!(load_latin(&p).unwrap(), sq);
    }
}

#[test]
fn hadamard_round_trip_on_constructions() {
    for (name, inst) in constructed() {
        let text = format_matrix(inst.h.matrix());
        let back = parse_matrix(&text).unwrap();
        assert_eq!(back, *inst.h.matrix(), "{name}");
        assert_eq!(format_matrix(&back), text, "{name}");
    }
}
