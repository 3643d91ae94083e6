//! Criteria 1-13, one PASS/FAIL line each. Runs without the libtest harness
//! so the lines always reach the terminal.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bsh_core::field::{identity, mat_mul, Field, Gauss};
use bsh_core::io::{format_latin, format_matrix, load_latin, load_matrix, save_latin, save_matrix};
use bsh_core::latin::{affine_ufs_family, compose_ufs, force_constant_diagonal, is_ufs, is_ufs_family, LatinSquare};
use bsh_core::matrix::{is_hadamard, sylvester};
use bsh_core::schemes::eigen::real_integer_matrix;
use bsh_core::schemes::{eigenmatrices, AuxiliarySet};
use bsh_core::splittability::{complement_params, complement_rows, derive_seidel, derive_srg_case_a};
use bsh_core::{check_split, Exec, HadamardMatrix, IntMatrix, SplitParams, SrgParams};
use serde_json::Value;

/// Criteria that cannot pass as stated, with the reason.
const KNOWN: &[(u32, &str)] = &[(
    2,
    "the criterion asks for 13 rows, but the printed table has 14 and the enumeration reproduces all 14",
)];

struct Bsh {
    dir: PathBuf,
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Bsh {
    fn run(&self, args: &[&str]) -> Run {
        let out = Command::new(env!("CARGO_BIN_EXE_bsh")).args(args).current_dir(&self.dir).output().expect("bsh runs");
        Run {
            code: out.status.code().unwrap_or(-1),
            stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
            stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
        }
    }

    /// Runs with `--json` and returns the report; `Err` on a nonzero exit.
    fn report(&self, args: &[&str]) -> Result<Value, String> {
        let mut all = vec!["--json"];
        all.extend_from_slice(args);
        let r = self.run(&all);
        if r.code != 0 {
            return Err(format!("`bsh {}` exited {}: {}", args.join(" "), r.code, r.stderr.trim()));
        }
        serde_json::from_str(&r.stdout).map_err(|e| format!("bad report: {e}"))
    }

    fn path(&self, rel: &str) -> PathBuf {
        self.dir.join(rel)
    }
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e < limit, || format!("took {e:?}, limit {limit:?}"))
}

fn tsv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split('\t').map(str::to_string).collect()).collect()
}

fn num(cell: &str) -> i64 {
    cell.parse().expect("integer cell")
}

fn c1(b: &Bsh) -> Outcome {
    let t = Instant::now();
    let r = b.run(&["enumerate", "table1", "--max-n", "1024"]);
    ensure(r.code == 0, || format!("exit {}", r.code))?;
    within(t, Duration::from_secs(10))?;
    // (n, ℓ, a, annotation) as printed.
    let want: [(i64, i64, i64, &str); 28] = [
        (16, 6, 2, "E"),
        (36, 15, 3, "NE1"),
        (64, 28, 4, "E"),
        (100, 45, 5, "NE1"),
        (120, 35, 5, "NE2"),
        (144, 66, 6, ""),
        (196, 91, 7, "NE1"),
        (256, 120, 8, "E"),
        (280, 63, 7, "NE1"),
        (288, 42, 6, ""),
        (320, 88, 8, ""),
        (324, 153, 9, "NE1"),
        (400, 190, 10, ""),
        (484, 231, 11, "NE1"),
        (528, 187, 11, "NE1"),
        (540, 99, 9, "NE2"),
        (560, 130, 10, ""),
        (576, 276, 12, ""),
        (616, 165, 11, "NE2"),
        (640, 72, 8, ""),
        (676, 325, 13, "NE1"),
        (780, 247, 13, "NE2"),
        (784, 378, 14, ""),
        (900, 435, 15, "NE1"),
        (924, 143, 11, "NE1"),
        (936, 221, 13, "NE1"),
        (1008, 266, 14, ""),
        (1024, 496, 16, "E"),
    ];
    let rows = tsv_rows(&r.stdout);
    ensure(rows.len() == 28, || format!("{} rows", rows.len()))?;
    for (row, (n, ell, a, ann)) in rows.iter().zip(want) {
        ensure((num(&row[0]), num(&row[1]), num(&row[2])) == (n, ell, a), || format!("row {row:?} != ({n}, {ell}, {a})"))?;
        let got = match (row[8].as_str(), row[9].as_str()) {
            ("E", _) => "E",
            ("NE", "mod4-sum") => "NE1",
            ("NE", "mod4-diff") => "NE2",
            ("", _) => "",
            _ => "?",
        };
        ensure(got == ann, || format!("n = {n}: annotation {got:?}, printed {ann:?}"))?;
        ensure(num(&row[3]) == -a, || format!("n = {n}: b != -a"))?;
        ensure(SrgParams::new(num(&row[4]), num(&row[5]), num(&row[6]), num(&row[7])).satisfies_identity(), || {
            format!("n = {n}: SRG identity")
        })?;
    }
    Ok(format!("28 rows, 15 NE and 4 E annotations match, {:?}", t.elapsed()))
}

fn c2(b: &Bsh) -> Outcome {
    let t = Instant::now();
    let r = b.run(&["enumerate", "table2", "--max-n", "64"]);
    ensure(r.code == 0, || format!("exit {}", r.code))?;
    within(t, Duration::from_secs(5))?;
    // (n, ℓ, a, b, k, λ, μ) as printed.
    let want: [[i64; 7]; 14] = [
        [16, 5, 1, -3, 10, 6, 6],
        [16, 9, 1, -3, 9, 4, 6],
        [36, 10, 4, -2, 10, 4, 2],
        [36, 14, 2, -4, 21, 12, 12],
        [36, 20, 2, -4, 20, 10, 12],
        [36, 25, 1, -5, 25, 16, 20],
        [64, 14, 6, -2, 14, 6, 2],
        [64, 18, 2, -6, 45, 32, 30],
        [64, 21, 5, -3, 21, 8, 6],
        [64, 27, 3, -5, 36, 20, 20],
        [64, 35, 3, -5, 35, 18, 20],
        [64, 42, 2, -6, 42, 26, 30],
        [64, 45, 5, -3, 18, 2, 6],
        [64, 49, 1, -7, 49, 36, 42],
    ];
    let rows = tsv_rows(&r.stdout);
    let got: Vec<[i64; 7]> = rows
        .iter()
        .map(|c| [num(&c[0]), num(&c[1]), num(&c[2]), num(&c[3]), num(&c[5]), num(&c[6]), num(&c[7])])
        .collect();
    ensure(got == want, || format!("rows differ from the printed table: {got:?}"))?;
    for c in &rows {
        let s = SrgParams::new(num(&c[4]), num(&c[5]), num(&c[6]), num(&c[7]));
        ensure(s.satisfies_identity(), || format!("SRG identity fails on {s}"))?;
    }
    ensure(rows.len() == 13, || format!("{} rows emitted, all matching the printed table; 13 required", rows.len()))?;
    Ok(format!("13 rows, {:?}", t.elapsed()))
}

/// Loads a sidecar's matrix and re-checks it without going through the CLI.
fn check_sidecar(b: &Bsh, rel: &str, want: SplitParams) -> Result<(), String> {
    let car: Value = serde_json::from_str(&std::fs::read_to_string(b.path(rel)).map_err(|e| format!("{rel}: {e}"))?)
        .map_err(|e| format!("{rel}: {e}"))?;
    let mpath = b.path(rel).parent().unwrap().join(car["matrix"].as_str().unwrap_or_default());
    let m = load_matrix(&mpath).map_err(|e| e.to_string())?;
    ensure(is_hadamard(&m), || format!("{rel}: not Hadamard"))?;
    let rows: Vec<usize> = serde_json::from_value(car["split_rows"].clone()).map_err(|e| e.to_string())?;
    let h = HadamardMatrix::new(m).map_err(|e| e.to_string())?;
    let r = check_split(&h, &rows).map_err(|e| format!("{rel}: {e}"))?;
    ensure(r.params == want, || format!("{rel}: got {}, advertised {want}", r.params))
}

fn c3(b: &Bsh) -> Outcome {
    let t = Instant::now();
    let p = SplitParams::new;
    let mut count = 0;
    for m in [2i64, 4, 8] {
        let ms = m.to_string();
        b.report(&["construct", "kron", "--m", &ms, "--out", "c3"])?;
        check_sidecar(b, &format!("c3/kron-{}.kron-large.json", m * m), p(m * m, (m - 1) * (m - 1), 1, 1 - m))?;
        check_sidecar(b, &format!("c3/kron-{}.kron-small.json", m * m), p(m * m, 2 * m - 2, m - 2, -2))?;
        b.report(&["construct", "gram", "--m", &ms, "--out", "c3"])?;
        check_sidecar(b, &format!("c3/gram-{}.gram.json", m * m), p(m * m, m, m, 0))?;
        count += 3;
    }
    for (k, m) in [(2i64, 4i64), (4, 4)] {
        b.report(&["construct", "core-tensor", "--k", &k.to_string(), "--m", &m.to_string(), "--out", "c3"])?;
        check_sidecar(b, &format!("c3/core-tensor-{k}x{m}.core-tensor.json"), p(k * m, k * (m - 1), 0, -k))?;
        count += 1;
    }
    for n in [4i64, 8, 16] {
        b.report(&["construct", "two-row", "--n", &n.to_string(), "--out", "c3"])?;
        check_sidecar(b, &format!("c3/two-row-{n}.two-row.json"), p(n, n - 2, 0, -2))?;
        count += 1;
    }
    for m in [1u32, 2, 3] {
        b.report(&["construct", "twin", "--m", &m.to_string(), "--out", "c3"])?;
        let s = 1i64 << m;
        let n = s * s;
        check_sidecar(b, &format!("c3/twin-{n}.twin-h1.json"), p(n, s, s, 0))?;
        for h in ["h2", "h3"] {
            check_sidecar(b, &format!("c3/twin-{n}.twin-{h}.json"), p(n, s * (s - 1) / 2, s / 2, -s / 2))?;
        }
        count += 3;
    }
    for q in [3i64, 7, 11] {
        b.report(&["construct", "skew-core", "--q", &q.to_string(), "--out", "c3"])?;
        check_sidecar(b, &format!("c3/skew-core-{q}.skew-core.json"), p(q * (q + 1), q, q, -1))?;
        count += 1;
    }
    within(t, Duration::from_secs(30))?;
    Ok(format!("{count} instances re-verified from disk, {:?}", t.elapsed()))
}

fn c4(b: &Bsh) -> Outcome {
    let (srg, ids) = derive_seidel(16, 6, 2).map_err(|e| e.to_string())?;
    ensure(srg == SrgParams::new(16, 6, 2, 2) && ids.n_identity, || format!("seidel: {srg}"))?;
    let r = derive_srg_case_a(16, 9, 1).map_err(|e| e.to_string())?;
    ensure(r == (-3, SrgParams::new(16, 9, 4, 6)), || format!("(16, 9, 1): {r:?}"))?;
    let r = derive_srg_case_a(16, 5, 1).map_err(|e| e.to_string())?;
    ensure(r == (-3, SrgParams::new(16, 10, 6, 6)), || format!("(16, 5, 1): {r:?}"))?;
    let rep = b.report(&["analyze", "seidel", "--n", "16", "--ell", "6", "--a", "2"])?;
    ensure(rep["result"]["srg"]["k"] == 6 && rep["result"]["srg"]["mu"] == 2, || "cli seidel".into())?;
    let mut rows = 0;
    for args in [["enumerate", "table1", "--max-n", "1024"], ["enumerate", "table2", "--max-n", "64"]] {
        let rep = b.report(&args)?;
        ensure(rep["passed"] == true, || format!("{} identity check", args[1]))?;
        for row in rep["result"].as_array().ok_or("rows")? {
            let s: SrgParams = serde_json::from_value(row["srg"].clone()).map_err(|e| e.to_string())?;
            ensure(s.satisfies_identity(), || format!("{s}"))?;
            rows += 1;
        }
    }
    Ok(format!("SRG(16,6,2,2), (16,9,4,6), (16,10,6,6); identity on {rows} rows"))
}

fn ratio(v: &Value) -> (i64, i64) {
    let p = |s: &Value| s.as_str().and_then(|s| s.parse().ok()).unwrap_or(i64::MIN);
    (p(&v["num"]), p(&v["den"]))
}

fn c5(b: &Bsh) -> Outcome {
    for (n, ell, a, den) in [(16, 6, 2, 9), (64, 28, 4, 49)] {
        let rep = b.report(&[
            "analyze",
            "equiangular",
            "--n",
            &n.to_string(),
            "--ell",
            &ell.to_string(),
            "--a",
            &a.to_string(),
            "--b",
            &(-a).to_string(),
        ])?;
        let r = &rep["result"];
        ensure(ratio(&r["bound"]) == (n, 1) && r["attained"] == true, || format!("n = {n}: bound {}", r["bound"]))?;
        ensure(ratio(&r["alpha_sq"]) == (1, den), || format!("n = {n}: α² {}", r["alpha_sq"]))?;
    }
    Ok("bounds 16 and 64 attained, α² = 1/9 and 1/49".into())
}

fn c6(b: &Bsh) -> Outcome {
    b.report(&["construct", "twin", "--m", "2", "--out", "c6"])?;
    let rep = b.report(&["analyze", "unbiased", "--sidecar", "c6/twin-16.twin-h2.json", "--out", "c6"])?;
    ensure(rep["passed"] == true, || "cli checks".into())?;
    let h = load_matrix(b.path("c6/twin-16.txt")).map_err(|e| e.to_string())?;
    let k = load_matrix(b.path("c6/unbiased-16.txt")).map_err(|e| e.to_string())?;
    ensure(is_hadamard(&k), || "K is not Hadamard".into())?;
    let cross = &h * &k.transpose();
    ensure(cross.as_slice().iter().all(|x| x.abs() == 4), || "an entry of HKᵀ is not ±4".into())?;
    Ok("K Hadamard, HKᵀ entries ±4".into())
}

fn c7(b: &Bsh) -> Outcome {
    let mut sums = Vec::new();
    for (m, n, want) in [(2, 16, 4), (3, 64, 8)] {
        b.report(&["construct", "twin", "--m", &m.to_string(), "--out", "c7"])?;
        b.report(&["analyze", "regular", "--sidecar", &format!("c7/twin-{n}.twin-h2.json"), "--out", "c7"])?;
        let r = load_matrix(b.path(&format!("c7/regular-{n}.txt"))).map_err(|e| e.to_string())?;
        ensure(is_hadamard(&r), || format!("order {n}: not Hadamard"))?;
        ensure(r.col_sums().iter().all(|&s| s == want), || format!("order {n}: column sums {:?}", r.col_sums()))?;
        sums.push(want);
    }
    Ok(format!("column sums {sums:?}"))
}

fn c8(b: &Bsh) -> Outcome {
    let t = Instant::now();
    let rep = b.report(&["nonexist", "eig", "--dataset", "srg-36-10-4-2", "--ell", "10", "--a", "4", "--b", "-2"])?;
    let r = &rep["result"]["results"][0]["result"];
    let max = r["max_set"].as_u64().ok_or("max_set")?;
    ensure(max < 10 && r["rules_out"] == true, || format!("max set {max}"))?;
    let rep = b.report(&["nonexist", "eig", "--dataset", "lattice-4x4", "--ell", "6", "--a", "2", "--b", "-2"])?;
    let ctl = rep["result"]["results"][0]["result"]["max_set"].as_u64().ok_or("max_set")?;
    ensure(ctl >= 6, || format!("positive control found only {ctl}"))?;
    within(t, Duration::from_secs(600))?;
    Ok(format!("max set {max} < 10; lattice control {ctl} ≥ 6; {:?}", t.elapsed()))
}

fn kron16(b: &Bsh) -> Result<&'static str, String> {
    b.report(&["construct", "kron", "--m", "4", "--variant", "large", "--out", "k16"])?;
    Ok("k16/kron-16.kron-large.json")
}

fn pq_is_scalar(p: &[Vec<Gauss>], q: &[Vec<Gauss>], v: i64) -> bool {
    let pq = mat_mul(&p.to_vec(), &q.to_vec());
    let want: Vec<Vec<Gauss>> =
        identity::<Gauss>(p.len()).iter().map(|r| r.iter().map(|x| x.mul(&Gauss::from_i64(v))).collect()).collect();
    pq == want
}

/// Builds through the CLI, then reloads A0..Ad and recomputes the
/// eigenmatrices in-process.
fn scheme_case(b: &Bsh, cmd: &str, extra: &[&str], out: &str, order: usize) -> Result<bsh_core::schemes::Eigenmatrices, String> {
    let car = kron16(b)?;
    let mut args = vec!["scheme", cmd, "--bsh", car, "--out", out];
    args.extend_from_slice(extra);
    scheme_from(b, &args, out, order)
}

fn scheme_from(b: &Bsh, args: &[&str], out: &str, order: usize) -> Result<bsh_core::schemes::Eigenmatrices, String> {
    let rep = b.report(args)?;
    ensure(rep["passed"] == true, || format!("{} checks: {}", args[1], rep["verification"]))?;
    let mut mats = Vec::new();
    for i in 0.. {
        let p = b.path(&format!("{out}/A{i}.txt"));
        if !p.exists() {
            break;
        }
        mats.push(load_matrix(&p).map_err(|e| e.to_string())?);
    }
    let s = bsh_core::schemes::verify_scheme(mats, Exec::Parallel).map_err(|e| e.to_string())?;
    ensure(s.order() == order, || format!("{} vertices", s.order()))?;
    let em = eigenmatrices(&s).map_err(|e| e.to_string())?;
    ensure(pq_is_scalar(&em.p, &em.q, order as i64), || "PQ != |X|I".into())?;
    Ok(em)
}

fn c9(b: &Bsh) -> Outcome {
    let t = Instant::now();
    let em = scheme_case(b, "build4", &[], "c9-sym", 160)?;
    let p = real_integer_matrix(&em.p).ok_or("symmetric P is not real")?;
    ensure(p[0] == [1, 9, 6, 72, 72], || format!("first row {:?}", p[0]))?;
    let em = scheme_case(b, "build4n", &[], "c9-non", 160)?;
    ensure(em.p.iter().flatten().any(|x| !x.is_real()), || "non-symmetric P is real".into())?;
    within(t, Duration::from_secs(60))?;
    Ok(format!("160 vertices, both variants match the closed form, PQ = 160I, {:?}", t.elapsed()))
}

fn c10(b: &Bsh) -> Outcome {
    let t = Instant::now();
    for (f, order) in [("2", 288), ("3", 432)] {
        scheme_case(b, "build5", &["--count", f], &format!("c10-{f}"), order)?;
    }
    within(t, Duration::from_secs(120))?;
    Ok(format!("288 and 432 vertices, closed forms and the (A3 - A4)² identity hold, {:?}", t.elapsed()))
}

fn c11(b: &Bsh) -> Outcome {
    let t = Instant::now();
    b.report(&["construct", "twin", "--m", "2", "--out", "c11"])?;
    b.report(&["latin", "affine", "--q", "7", "--count", "2", "--out", "c11/l"])?;
    b.report(&["latin", "diagfix", "--files", "c11/l/affine-7-1.txt", "c11/l/affine-7-2.txt", "--out", "c11/l"])?;
    let args = [
        "scheme",
        "build6",
        "--bsh",
        "c11/twin-16.twin-h2.json",
        "--latin",
        "c11/l/diagfix-1.txt",
        "c11/l/diagfix-2.txt",
        "--out",
        "c11/s",
    ];
    scheme_from(b, &args, "c11/s", 224)?;
    within(t, Duration::from_secs(120))?;
    Ok(format!("224 vertices, P and Q match the closed forms, {:?}", t.elapsed()))
}

fn c12(b: &Bsh) -> Outcome {
    let rep = b.report(&["scheme", "hamming", "--n", "4"])?;
    ensure(rep["passed"] == true && rep["result"]["classes"] == 4, || "hamming(4)".into())?;
    let valencies: Vec<i64> = serde_json::from_value(rep["result"]["valencies"].clone()).map_err(|e| e.to_string())?;
    ensure(valencies == [1, 4, 6, 4, 1], || format!("valencies {valencies:?}"))?;
    // Diagonalization by the Sylvester matrix, checked here from the distance classes.
    let h = sylvester(4);
    for i in 1..=4u32 {
        let a = IntMatrix::from_fn(16, 16, |x, y| i64::from((x ^ y).count_ones() == i));
        let d = &(&h.matrix().transpose() * &a) * h.matrix();
        let diag = (0..16).all(|x| (0..16).all(|y| x == y || d.get(x, y) == 0));
        ensure(diag, || format!("A{i} is not diagonalized"))?;
    }
    // m = 2: 2^{m-1} = 2, 2^m = 4.
    let (h, t) = (2i64, 4i64);
    let base = [
        SrgParams::new(16, h * (t + 1), h * (h + 1), h * (h + 1)),
        SrgParams::new(16, h * (t - 1), h * (h - 1), h * (h - 1)),
    ];
    let family: Vec<SrgParams> = base.iter().flat_map(|s| [*s, s.complement()]).collect();
    let mut got = Vec::new();
    for v in ["01", "03"] {
        let rep = b.report(&["scheme", "fusion", "--n", "4", "--variant", v])?;
        let s: SrgParams = serde_json::from_value(rep["result"]["srg"].clone()).map_err(|e| e.to_string())?;
        ensure(family.contains(&s), || format!("variant {v}: {s} outside the family"))?;
        got.push(s.to_string());
    }
    Ok(format!("H(4,2) has classes A0..A4 diagonalized by the Sylvester matrix; fusions {}", got.join(", ")))
}

fn ufs_oracle(l1: &LatinSquare, l2: &LatinSquare) -> bool {
    let v = l1.order();
    (0..v).all(|r| (0..v).all(|s| (0..v).filter(|&c| l1.get(r, c) == l2.get(s, c)).count() == 1))
}

fn c13(b: &Bsh) -> Outcome {
    // (a) auxiliary identities on the order ≤ 64 matrices written by criterion 3.
    let mut checked = 0;
    let dir = b.path("c3");
    let mut cars: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    cars.sort();
    for car in &cars {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(car).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let m = load_matrix(dir.join(v["matrix"].as_str().unwrap_or_default())).map_err(|e| e.to_string())?;
        if m.rows() > 64 {
            continue;
        }
        let h = HadamardMatrix::new(m).map_err(|e| e.to_string())?;
        let rows: Vec<usize> = serde_json::from_value(v["split_rows"].clone()).map_err(|e| e.to_string())?;
        let aux = AuxiliarySet::new(&h).map_err(|e| format!("{}: {e}", car.display()))?;
        let sub = h.matrix().select_rows(&rows);
        ensure(aux.sum_over(&rows) == &sub.transpose() * &sub, || format!("{}: Σ C_i", car.display()))?;
        let rep = check_split(&h, &rows).map_err(|e| e.to_string())?;
        let p = rep.params;
        if p.a != p.b && aux.annihilates_ones(&rows) {
            ensure(aux.eigen_relation_holds(&rep.adjacency, &rows, &p), || format!("{}: AC_i", car.display()))?;
        }
        // (b) complement involution on the same split.
        let rest = complement_rows(h.order(), &rows);
        ensure(complement_rows(h.order(), &rest) == rep.rows, || "complement rows".into())?;
        if rest.len() >= 2 && p.a != p.b {
            let back = check_split(&h, &rest).map_err(|e| e.to_string())?;
            ensure(back.params == complement_params(&p), || format!("{}: complement split", car.display()))?;
            ensure(complement_params(&back.params) == p, || "complement involution".into())?;
        }
        checked += 1;
    }
    ensure(checked >= 20, || format!("only {checked} matrices"))?;
    // (c) UFS predicates, exhaustive for q ≤ 9, and force_constant_diagonal.
    for q in [3, 4, 5, 7, 8, 9] {
        let fam = affine_ufs_family(q).map_err(|e| e.to_string())?;
        for (i, x) in fam.iter().enumerate() {
            for (j, y) in fam.iter().enumerate() {
                ensure(is_ufs(x, y) == ufs_oracle(x, y) && is_ufs(x, y) == (i != j), || format!("q = {q} ({i}, {j})"))?;
            }
        }
        for s in 0..q {
            let fixed = force_constant_diagonal(&fam, s).map_err(|e| e.to_string())?;
            ensure(is_ufs_family(&fixed, Exec::Parallel) && fixed.iter().all(|l| l.has_constant_diagonal(s)), || {
                format!("q = {q}, diagonal {s}")
            })?;
        }
    }
    // (d) compose triple consistency for q = 7.
    let fam = affine_ufs_family(7).map_err(|e| e.to_string())?;
    let mut triples = 0;
    for i in 0..6 {
        for j in 0..6 {
            for k in 0..6 {
                if i == j || j == k || i == k {
                    continue;
                }
                let lik = compose_ufs(&fam[i], &fam[k]).map_err(|e| e.to_string())?;
                let ljk = compose_ufs(&fam[j], &fam[k]).map_err(|e| e.to_string())?;
                let lij = compose_ufs(&fam[i], &fam[j]).map_err(|e| e.to_string())?;
                ensure(compose_ufs(&lik, &ljk).ok() == Some(lij), || format!("({i}, {j}, {k})"))?;
                triples += 1;
            }
        }
    }
    // (e) byte-exact round trips of files the CLI wrote.
    let mut files = 0;
    for car in &cars {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(car).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let src = dir.join(v["matrix"].as_str().unwrap_or_default());
        let bytes = std::fs::read(&src).map_err(|e| e.to_string())?;
        let m = load_matrix(&src).map_err(|e| e.to_string())?;
        ensure(format_matrix(&m).into_bytes() == bytes, || format!("{}: format", src.display()))?;
        let copy = b.path("c13-copy.txt");
        save_matrix(&m, &copy).map_err(|e| e.to_string())?;
        ensure(std::fs::read(&copy).map_err(|e| e.to_string())? == bytes, || format!("{}: save", src.display()))?;
        files += 1;
    }
    for l in ["c11/l/affine-7-1.txt", "c11/l/diagfix-2.txt"] {
        let bytes = std::fs::read(b.path(l)).map_err(|e| e.to_string())?;
        let sq = load_latin(b.path(l)).map_err(|e| e.to_string())?;
        ensure(format_latin(&sq).into_bytes() == bytes, || format!("{l}: format"))?;
        save_latin(&sq, b.path("c13-copy-l.txt")).map_err(|e| e.to_string())?;
        ensure(std::fs::read(b.path("c13-copy-l.txt")).map_err(|e| e.to_string())? == bytes, || format!("{l}: save"))?;
        files += 1;
    }
    Ok(format!("{checked} matrices, q ≤ 9 UFS, {triples} triples, {files} byte-exact round trips"))
}

type Criterion = (u32, &'static str, fn(&Bsh) -> Outcome);

fn main() -> ExitCode {
    let tmp = tempfile::tempdir().expect("tempdir");
    let b = Bsh { dir: tmp.path().to_path_buf() };
    let criteria: [Criterion; 13] = [
        (1, "table 1 reproduction", c1),
        (2, "table 2 reproduction", c2),
        (3, "construction suite", c3),
        (4, "Seidel/SRG formulas", c4),
        (5, "equiangular lines", c5),
        (6, "unbiased partner", c6),
        (7, "regular Hadamard", c7),
        (8, "order-36 non-existence", c8),
        (9, "4-class scheme", c9),
        (10, "5-class scheme", c10),
        (11, "6-class scheme", c11),
        (12, "Hamming scheme and fusions", c12),
        (13, "property suites", c13),
    ];
    let mut unexpected = Vec::new();
    for (k, name, f) in criteria {
        match f(&b) {
            Ok(detail) => println!("criterion {k:>2} PASS  {name}: {detail}"),
            Err(why) => {
                let known = KNOWN.iter().find(|(c, _)| *c == k);
                println!("criterion {k:>2} FAIL  {name}: {why}");
                match known {
                    Some((_, reason)) => println!("              known: {reason}"),
                    None => unexpected.push(k),
                }
            }
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria pass except the known deviations listed above");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures {unexpected:?}");
        ExitCode::FAILURE
    }
}
