use std::path::PathBuf;

use bsh_core::data::bundled_data;
use bsh_core::matrix::is_hadamard;
use bsh_core::splittability::{
    case_a_b, case_b_b, derive_seidel, derive_srg_case_a, derive_srg_case_b, diagonalize_by_hadamard,
    equiangular_report, regular_hadamard_normalize, search_splits, split_from_diagonalizable_srg, srg_from_general,
    unbiased_partner, verify_seidel_matrix, DEFAULT_SEARCH_BUDGET,
};
use bsh_core::{IntMatrix, SplitParams};
use clap::{Args, Subcommand};
use serde_json::json;

use crate::construct::sylvester_of_order;
use crate::report::Outcome;
use crate::util::{
    ensure_dir, load_bsh, parse_rows, read_hadamard, read_matrix, split_report_of, usage, verify_err, write_matrix,
    CliResult,
};
use crate::Global;

#[derive(Subcommand)]
pub enum CheckCmd {
    /// Check a row subset (`--rows`), a sidecar, or search all subsets of a size.
    Split {
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Row indices, e.g. `1,2,5` or `1..16`.
        #[arg(long)]
        rows: Option<String>,
        #[arg(long)]
        sidecar: Option<PathBuf>,
        /// Search every subset of this size instead.
        #[arg(long)]
        search: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u128,
    },
}

#[derive(Args)]
pub struct Triple {
    #[arg(long)]
    n: i64,
    #[arg(long)]
    ell: i64,
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
}

#[derive(Args)]
pub struct GraphSource {
    /// Adjacency matrix file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Bundled graph: srg-36-10-4-2, shrikhande or lattice-4x4.
    #[arg(long)]
    dataset: Option<String>,
}

impl GraphSource {
    pub fn describe(&self) -> String {
        match (&self.graph, &self.dataset) {
            (Some(p), _) => p.display().to_string(),
            (None, Some(d)) => d.clone(),
            _ => String::new(),
        }
    }

    pub fn load(&self) -> CliResult<(IntMatrix, Vec<PathBuf>)> {
        match (&self.graph, &self.dataset) {
            (Some(p), None) => Ok((read_matrix(p)?, vec![p.clone()])),
            (None, Some(name)) => Ok((bundled_data(name).map_err(|e| usage(e.to_string()))?, vec![])),
            _ => Err(usage("give exactly one of --graph and --dataset")),
        }
    }
}

#[derive(Subcommand)]
pub enum AnalyzeCmd {
    /// Graph parameters for (n, ℓ, a), on every branch that fits.
    Srg {
        #[command(flatten)]
        t: Triple,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
    },
    /// Seidel branch b = -a: the SRG in the switching class.
    Seidel {
        #[command(flatten)]
        t: Triple,
        /// Also check the Seidel matrix identity on this split.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Equiangular lines from a b = -a split.
    Equiangular {
        #[command(flatten)]
        t: Triple,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Hadamard matrix unbiased with the one in the sidecar.
    Unbiased {
        #[arg(long)]
        sidecar: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Regular Hadamard matrix from a (4m², 2m²-m, m, -m) split.
    Regular {
        #[arg(long)]
        sidecar: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Diagonalize a graph by a Hadamard matrix and read off the split.
    Diag {
        #[command(flatten)]
        g: GraphSource,
        #[arg(long)]
        hadamard: Option<PathBuf>,
        /// Sylvester order instead of --hadamard.
        #[arg(long)]
        m: Option<usize>,
    },
}

pub fn run_check(cmd: &CheckCmd, g: &Global) -> CliResult<Outcome> {
    let CheckCmd::Split { matrix, rows, sidecar, search, budget } = cmd;
    if let Some(car) = sidecar {
        let (inst, mpath) = load_bsh(car)?;
        let mut o = Outcome::new(inst.report.summary()).check(format!("split {} matches sidecar", inst.claimed), true);
        o.inputs = vec![car.clone(), mpath];
        return Ok(o);
    }
    let path = matrix.as_ref().ok_or_else(|| usage("give --sidecar or --matrix"))?;
    let h = read_hadamard(path)?;
    let inputs = vec![path.clone()];
    match (rows, search) {
        (Some(r), None) => {
            let report = split_report_of(&h, &parse_rows(r)?)?;
            let checks = report.checks.clone();
            let mut o = Outcome::new(report.summary())
                .check("gram", checks.gram_ok)
                .check("row sums", checks.rowsum_zero);
            if let Some(s) = checks.srg_ok {
                o.push_check("srg", s);
            }
            o.inputs = inputs;
            Ok(o)
        }
        (None, Some(ell)) => {
            let found = search_splits(&h, *ell, *budget, g.exec()).map_err(verify_err)?;
            let list: Vec<_> = found
                .iter()
                .map(|r| json!({ "rows": r.rows, "summary": r.summary() }))
                .collect();
            let mut o = Outcome::new(list);
            o.inputs = inputs;
            Ok(o)
        }
        _ => Err(usage("give exactly one of --rows and --search")),
    }
}

pub fn run(cmd: &AnalyzeCmd, _g: &Global) -> CliResult<Outcome> {
    match cmd {
        AnalyzeCmd::Srg { t, b } => {
            let mut branches = Vec::new();
            if let Some(b) = b {
                let p = SplitParams::new(t.n, t.ell, t.a, *b);
                let srg = srg_from_general(&p).map_err(verify_err)?;
                branches.push(json!({ "branch": "given", "b": b, "srg": srg }));
            } else {
                if let Ok((srg, ids)) = derive_seidel(t.n, t.ell, t.a) {
                    branches.push(json!({ "branch": "seidel", "b": -t.a, "srg": srg, "identities": ids }));
                }
                if case_a_b(t.n, t.ell, t.a).is_some() {
                    if let Ok((b, srg)) = derive_srg_case_a(t.n, t.ell, t.a) {
                        branches.push(json!({ "branch": "case-a", "b": b, "srg": srg }));
                    }
                }
                if case_b_b(t.n, t.ell, t.a).is_some() {
                    if let Ok((b, srg)) = derive_srg_case_b(t.n, t.ell, t.a) {
                        branches.push(json!({ "branch": "case-b", "b": b, "srg": srg }));
                    }
                }
            }
            if branches.is_empty() {
                return Err(verify_err(format!("no branch gives an integral SRG at ({}, {}, {})", t.n, t.ell, t.a)));
            }
            Ok(Outcome::new(json!({ "n": t.n, "ell": t.ell, "a": t.a, "branches": branches })))
        }
        AnalyzeCmd::Seidel { t, sidecar } => {
            let (srg, ids) = derive_seidel(t.n, t.ell, t.a).map_err(verify_err)?;
            let mut o = Outcome::new(json!({ "srg": srg, "identities": ids }))
                .check("n(ℓ - a²) = ℓ² - a²", ids.n_identity)
                .check("valency", ids.valency_matches);
            if let Some(car) = sidecar {
                let (inst, mpath) = load_bsh(car)?;
                o.push_check("Seidel matrix identity", verify_seidel_matrix(&inst.report));
                o.inputs = vec![car.clone(), mpath];
            }
            Ok(o)
        }
        AnalyzeCmd::Equiangular { t, b } => {
            let rep = equiangular_report(&SplitParams::new(t.n, t.ell, t.a, *b)).map_err(verify_err)?;
            Ok(Outcome::new(rep.summary()))
        }
        AnalyzeCmd::Unbiased { sidecar, out } => {
            let (inst, mpath) = load_bsh(sidecar)?;
            let k = unbiased_partner(&inst.h, &inst.report).map_err(verify_err)?;
            let cross = inst.h.matrix() * &k.matrix().transpose();
            let root = (inst.h.order() as f64).sqrt().round() as i64;
            ensure_dir(out)?;
            let path = out.join(format!("unbiased-{}.txt", inst.h.order()));
            write_matrix(k.matrix(), &path)?;
            let mut o = Outcome::new(json!({ "file": path.display().to_string(), "order": k.order() }))
                .check("K is Hadamard", is_hadamard(k.matrix()))
                .check("H Kᵀ entries are ±√n", cross.as_slice().iter().all(|x| x.abs() == root));
            o.inputs = vec![sidecar.clone(), mpath];
            o.outputs = vec![path];
            Ok(o)
        }
        AnalyzeCmd::Regular { sidecar, out } => {
            let (inst, mpath) = load_bsh(sidecar)?;
            let r = regular_hadamard_normalize(&inst.h, &inst.report).map_err(verify_err)?;
            let sums = r.matrix().col_sums();
            ensure_dir(out)?;
            let path = out.join(format!("regular-{}.txt", inst.h.order()));
            write_matrix(r.matrix(), &path)?;
            let want = 2 * inst.report.params.a;
            let mut o = Outcome::new(json!({ "file": path.display().to_string(), "column_sum": sums[0] }))
                .check("Hadamard", is_hadamard(r.matrix()))
                .check(format!("column sums all {want}"), sums.iter().all(|&s| s == want));
            o.inputs = vec![sidecar.clone(), mpath];
            o.outputs = vec![path];
            Ok(o)
        }
        AnalyzeCmd::Diag { g, hadamard, m } => {
            let (a, mut inputs) = g.load()?;
            let h = match (hadamard, m) {
                (Some(p), None) => {
                    inputs.push(p.clone());
                    read_hadamard(p)?
                }
                (None, Some(m)) => sylvester_of_order(*m)?,
                _ => return Err(usage("give exactly one of --hadamard and --m")),
            };
            let d = diagonalize_by_hadamard(&a, &h).map_err(verify_err)?;
            let split = split_from_diagonalizable_srg(&a, &h).ok().map(|r| json!({ "rows": r.rows, "summary": r.summary() }));
            let mut o = Outcome::new(json!({ "diagonalization": d, "split": split }));
            o.inputs = inputs;
            Ok(o)
        }
    }
}
