use std::path::{Path, PathBuf};

use bsh_core::constructions::BshInstance;
use bsh_core::field::Gauss;
use bsh_core::latin::{affine_ufs_family, circle_symmetric, force_constant_diagonal, LatinSquare};
use bsh_core::schemes::build::{cross_product_identities, cross_square_identity, SchemeKind};
use bsh_core::schemes::closed::{closed_form, match_closed};
use bsh_core::schemes::eigen::Eigenmatrices;
use bsh_core::schemes::{
    build_4class, build_5class, build_6class, eigenmatrices, hamming_scheme, muzychuk_fusion, verify_scheme,
    BuiltScheme, FusionVariant, Scheme, SchemeError, Symmetry,
};
use clap::{Args, Subcommand, ValueEnum};
use serde_json::json;

use crate::report::Outcome;
use crate::util::{ensure_dir, load_bsh, read_latin, read_matrix, table, usage, verify_err, write_json, write_matrix, CliResult};
use crate::Global;

#[derive(Args)]
pub struct BuildArgs {
    /// Sidecar of the split Hadamard matrix.
    #[arg(long)]
    bsh: PathBuf,
    /// Latin square files; defaults depend on the builder.
    #[arg(long, num_args = 1..)]
    latin: Vec<PathBuf>,
    /// Number of affine squares to use when no --latin is given.
    #[arg(long, default_value_t = 2)]
    count: usize,
    /// Directory for A0.txt .. Ad.txt, scheme.json and eigen.json.
    #[arg(long, default_value = "scheme")]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum VariantArg {
    #[value(name = "01")]
    V01,
    #[value(name = "03")]
    V03,
}

#[derive(Subcommand)]
pub enum SchemeCmd {
    /// Symmetric 4-class scheme (default square: circle method of order ℓ + 1).
    Build4(BuildArgs),
    /// Non-symmetric 4-class scheme.
    Build4n(BuildArgs),
    /// 5-class scheme (default squares: affine over GF(ℓ), symbols 1..=ℓ).
    Build5(BuildArgs),
    /// 6-class scheme (default squares: affine over GF(ℓ + 1) with zero diagonal).
    Build6(BuildArgs),
    /// Check the axioms on A0 .. Ad.
    Verify {
        #[arg(long, num_args = 1.., required = true)]
        files: Vec<PathBuf>,
    },
    /// Eigenmatrices of the scheme stored in a directory as A0.txt, A1.txt, ...
    Eig {
        #[arg(long)]
        scheme: PathBuf,
    },
    /// Binary Hamming scheme H(n, 2).
    Hamming {
        #[arg(long)]
        n: usize,
    },
    /// Two-class fusion of H(n, 2).
    Fusion {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        variant: VariantArg,
    },
}

fn load_squares(args: &BuildArgs) -> CliResult<Vec<LatinSquare>> {
    args.latin.iter().map(|p| read_latin(p)).collect()
}

fn default_family(q: usize, count: usize) -> CliResult<Vec<LatinSquare>> {
    let fam = affine_ufs_family(q).map_err(|e| usage(format!("no default squares of order {q}: {e}; pass --latin")))?;
    if count < 2 || count > fam.len() {
        return Err(usage(format!("--count must lie in 2..={}", fam.len())));
    }
    Ok(fam.into_iter().take(count).collect())
}

fn build(cmd: &SchemeCmd, args: &BuildArgs, inst: &BshInstance, g: &Global) -> CliResult<BuiltScheme> {
    let ell = inst.report.params.ell as usize;
    let exec = g.exec();
    let squares = load_squares(args)?;
    let built = match cmd {
        SchemeCmd::Build4(_) | SchemeCmd::Build4n(_) => {
            if ell.is_multiple_of(2) {
                return Err(verify_err(SchemeError::OddityViolation(ell as i64)));
            }
            let sym = if matches!(cmd, SchemeCmd::Build4(_)) { Symmetry::Symmetric } else { Symmetry::NonSymmetric };
            let sq = match squares.as_slice() {
                [] => circle_symmetric(ell + 1).map_err(|e| usage(format!("ℓ + 1 = {}: {e}", ell + 1)))?,
                [sq] => sq.clone(),
                _ => return Err(usage("the 4-class builders take one Latin square")),
            };
            build_4class(inst, &sq, sym, exec)
        }
        SchemeCmd::Build5(_) => {
            let fam = if squares.is_empty() {
                default_family(ell, args.count)?.iter().map(|s| s.shift_symbols(1)).collect()
            } else {
                squares
            };
            build_5class(inst, &fam, exec)
        }
        SchemeCmd::Build6(_) => {
            let fam = if squares.is_empty() {
                force_constant_diagonal(&default_family(ell + 1, args.count)?, 0).map_err(verify_err)?
            } else {
                squares
            };
            build_6class(inst, &fam, exec)
        }
        _ => unreachable!("not a builder"),
    };
    built.map_err(verify_err)
}

fn kind_name(k: SchemeKind) -> &'static str {
    match k {
        SchemeKind::FourClass(Symmetry::Symmetric) => "4-class symmetric",
        SchemeKind::FourClass(Symmetry::NonSymmetric) => "4-class non-symmetric",
        SchemeKind::FiveClass => "5-class",
        SchemeKind::SixClass => "6-class",
    }
}

fn gauss_table(title: &str, m: &[Vec<Gauss>]) -> String {
    let mut rows: Vec<Vec<String>> = vec![std::iter::once(title.to_string())
        .chain((0..m.first().map_or(0, Vec::len)).map(|j| j.to_string()))
        .collect()];
    for (i, r) in m.iter().enumerate() {
        rows.push(std::iter::once(i.to_string()).chain(r.iter().map(Gauss::to_string)).collect());
    }
    table(&rows)
}

fn eigen_text(em: &Eigenmatrices) -> String {
    format!("{}\n{}", gauss_table("P", &em.p), gauss_table("Q", &em.q))
}

fn scheme_json(s: &Scheme) -> serde_json::Value {
    let d = s.classes() + 1;
    let p: Vec<Vec<Vec<i64>>> = (0..d).map(|i| (0..d).map(|j| s.product(i, j).to_vec()).collect()).collect();
    json!({
        "order": s.order(),
        "classes": s.classes(),
        "symmetric": s.is_symmetric(),
        "valencies": s.valencies(),
        "transpose": (0..d).map(|i| s.transpose_of(i)).collect::<Vec<_>>(),
        "intersection_numbers": p,
    })
}

fn write_scheme(s: &Scheme, dir: &Path) -> CliResult<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let mut paths = Vec::new();
    for (i, m) in s.matrices().iter().enumerate() {
        let p = dir.join(format!("A{i}.txt"));
        write_matrix(m, &p)?;
        paths.push(p);
    }
    Ok(paths)
}

fn eigen_checks(o: &mut Outcome, em: &Eigenmatrices, order: usize) {
    o.push_check("multiplicities sum to |X|", em.multiplicities.iter().sum::<i64>() == order as i64);
    o.push_check("valencies sum to |X|", em.valencies.iter().sum::<i64>() == order as i64);
}

fn run_build(cmd: &SchemeCmd, args: &BuildArgs, g: &Global) -> CliResult<Outcome> {
    let (inst, mpath) = load_bsh(&args.bsh)?;
    let built = build(cmd, args, &inst, g)?;
    let s = &built.scheme;
    let em = eigenmatrices(s).map_err(verify_err)?;
    let m = match_closed(&em, &closed_form(&built), s.order());
    let mut outputs = write_scheme(s, &args.out)?;
    let scheme_path = args.out.join("scheme.json");
    let mut meta = scheme_json(s);
    meta["kind"] = json!(kind_name(built.kind));
    meta["split"] = json!(built.params);
    meta["squares"] = json!(built.f);
    write_json(&scheme_path, &meta)?;
    let eigen_path = args.out.join("eigen.json");
    let eig = json!({ "eigenmatrices": em.summary(), "closed_form": m });
    write_json(&eigen_path, &eig)?;
    outputs.extend([scheme_path, eigen_path]);

    let text = format!(
        "{} scheme on {} vertices from {}\nvalencies {:?}\nmultiplicities {:?}\n\n{}",
        kind_name(built.kind),
        s.order(),
        built.params,
        em.valencies,
        em.multiplicities,
        eigen_text(&em)
    );
    let mut o = Outcome::new(json!({ "scheme": meta, "closed_form": m })).with_text(text);
    eigen_checks(&mut o, &em, s.order());
    o.push_check("P rows match the closed form", m.p_rows);
    o.push_check("Q columns match the closed form", m.q_columns);
    o.push_check("closed-form Q is aligned with P", m.q_aligned);
    o.push_check("closed-form PQ = |X|I", m.closed_inverse);
    if matches!(built.kind, SchemeKind::FiveClass | SchemeKind::SixClass) {
        o.push_check("(A3 - A4)² identity", cross_square_identity(&built));
    }
    if built.kind == SchemeKind::FiveClass {
        o.push_check("(A0 + A1 + A2)(A3 - A4) = O and (aA1 + bA2)(A3 - A4) = (n - ℓ)(A3 - A4)", cross_product_identities(&built));
    }
    o.inputs = std::iter::once(args.bsh.clone()).chain([mpath]).chain(args.latin.iter().cloned()).collect();
    o.outputs = outputs;
    Ok(o)
}

fn scheme_dir_files(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let files: Vec<PathBuf> = (0..).map(|i| dir.join(format!("A{i}.txt"))).take_while(|p| p.exists()).collect();
    if files.len() < 2 {
        return Err(usage(format!("{} holds no A0.txt, A1.txt, ...", dir.display())));
    }
    Ok(files)
}

fn verify_files(files: &[PathBuf], g: &Global) -> CliResult<Scheme> {
    let mats = files.iter().map(|p| read_matrix(p)).collect::<Result<Vec<_>, _>>()?;
    verify_scheme(mats, g.exec()).map_err(verify_err)
}

pub fn run(cmd: &SchemeCmd, g: &Global) -> CliResult<Outcome> {
    match cmd {
        SchemeCmd::Build4(a) | SchemeCmd::Build4n(a) | SchemeCmd::Build5(a) | SchemeCmd::Build6(a) => run_build(cmd, a, g),
        SchemeCmd::Verify { files } => {
            let s = verify_files(files, g)?;
            let mut o = Outcome::new(scheme_json(&s)).check("association scheme axioms", true);
            o.inputs = files.clone();
            Ok(o)
        }
        SchemeCmd::Eig { scheme } => {
            let files = scheme_dir_files(scheme)?;
            let s = verify_files(&files, g)?;
            let em = eigenmatrices(&s).map_err(verify_err)?;
            let mut o = Outcome::new(em.summary()).with_text(eigen_text(&em));
            eigen_checks(&mut o, &em, s.order());
            o.inputs = files;
            Ok(o)
        }
        SchemeCmd::Hamming { n } => {
            if *n == 0 || *n > 12 {
                return Err(usage("--n must lie in 1..=12"));
            }
            let s = hamming_scheme(*n, g.exec()).map_err(verify_err)?;
            let mut payload = scheme_json(&s);
            let mut o = if *n <= 8 {
                let em = eigenmatrices(&s).map_err(verify_err)?;
                payload["eigenmatrices"] = json!(em.summary());
                let mut o = Outcome::new(&payload).with_text(eigen_text(&em));
                eigen_checks(&mut o, &em, s.order());
                o
            } else {
                Outcome::new(&payload)
            };
            o.push_check(format!("{} classes, diagonalized by the Sylvester matrix", s.classes()), s.classes() == *n);
            Ok(o)
        }
        SchemeCmd::Fusion { n, variant } => {
            if *n > 12 {
                return Err(usage("--n must be at most 12"));
            }
            let v = match variant {
                VariantArg::V01 => FusionVariant::V01,
                VariantArg::V03 => FusionVariant::V03,
            };
            let f = muzychuk_fusion(*n, v, g.exec()).map_err(verify_err)?;
            let o = Outcome::new(json!({
                "n": n,
                "variant": v,
                "lambda1": f.lambda1,
                "lambda2": f.lambda2,
                "srg": f.srg,
            }))
            .check(format!("{} is strongly regular in the expected family", f.srg), f.scheme.classes() == 2);
            Ok(o)
        }
    }
}
