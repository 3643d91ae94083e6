use std::path::PathBuf;

use bsh_core::constructions::Witness;
use bsh_core::feasibility::{enumerate_case_a, enumerate_seidel, enumerate_seidel_all, eigvec_search, Evidence, FeasibleRow};
use bsh_core::srg::SrgParams;
use clap::Subcommand;
use serde_json::json;

use crate::analyze::GraphSource;
use crate::report::Outcome;
use crate::util::{read_matrix, usage, verify_err, CliResult};
use crate::Global;

#[derive(Subcommand)]
pub enum EnumerateCmd {
    /// Feasible (n, ℓ, a) with b = -a, n ≤ max-n and ℓ ≤ n/2.
    Table1 {
        #[arg(long, default_value_t = 1024)]
        max_n: i64,
        /// Keep rows whose graph is known not to exist.
        #[arg(long)]
        include_external: bool,
    },
    /// Feasible case-(a) splits with 0 < a < ℓ and n ≤ max-n.
    Table2 {
        #[arg(long, default_value_t = 64)]
        max_n: i64,
    },
}

#[derive(Subcommand)]
pub enum NonexistCmd {
    /// Largest set of mutually orthogonal ±1 eigenvectors of ℓI + aA + b(J - A - I)
    /// for eigenvalue n; fewer than ℓ rules the split out.
    Eig {
        #[command(flatten)]
        g: GraphSource,
        /// Directory of adjacency files, searched one by one.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        ell: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Twin { m } => format!("twin m={m}"),
        Witness::TwinDeletion { m, side } => format!("twin-deletion m={m} {side:?}").to_lowercase(),
        Witness::KronSquare { k, variant } => format!("kron-square k={k} {variant:?}").to_lowercase(),
        Witness::SkewCore { q } => format!("skew-core q={q}"),
    }
}

fn evidence_text(e: &Evidence) -> String {
    match e {
        Evidence::None => String::new(),
        Evidence::Construction { witness } => witness_text(witness),
        Evidence::SignPattern { solution } => format!("mod4-{:?}", solution.kind).to_lowercase(),
        Evidence::EigSearch { graph, graphs, catalog } => {
            format!("eigsearch {graph} over {graphs} graph(s), {catalog:?} catalog").to_lowercase()
        }
        Evidence::External { reason } => reason.clone(),
    }
}

fn srg_cells(s: &SrgParams) -> Vec<String> {
    vec![s.v.to_string(), s.k.to_string(), s.lambda.to_string(), s.mu.to_string()]
}

fn tsv(rows: &[FeasibleRow]) -> String {
    let mut out = String::from("n\tell\ta\tb\tv\tk\tlambda\tmu\tstatus\tevidence\n");
    for r in rows {
        let p = r.params;
        let mut cells = vec![p.n.to_string(), p.ell.to_string(), p.a.to_string(), p.b.to_string()];
        cells.extend(srg_cells(&r.srg));
        cells.push(r.status.label().to_string());
        cells.push(evidence_text(&r.evidence));
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}

fn table_outcome(rows: Vec<FeasibleRow>) -> Outcome {
    let identity = rows.iter().all(|r| r.srg.satisfies_identity());
    let text = tsv(&rows);
    Outcome::new(&rows).with_text(text).check("k(k - λ - 1) = (v - k - 1)μ on every row", identity)
}

pub fn run(cmd: &EnumerateCmd, _g: &Global) -> CliResult<Outcome> {
    match cmd {
        EnumerateCmd::Table1 { max_n, include_external } => {
            if *max_n < 4 || *max_n > 1 << 16 {
                return Err(usage("--max-n must lie in 4..=65536"));
            }
            let rows = if *include_external { enumerate_seidel_all(*max_n) } else { enumerate_seidel(*max_n) };
            Ok(table_outcome(rows))
        }
        EnumerateCmd::Table2 { max_n } => {
            if *max_n < 4 || *max_n > 1024 {
                return Err(usage("--max-n must lie in 4..=1024"));
            }
            Ok(table_outcome(enumerate_case_a(*max_n)))
        }
    }
}

pub fn run_nonexist(cmd: &NonexistCmd, g: &Global) -> CliResult<Outcome> {
    let NonexistCmd::Eig { g: src, catalog, ell, a, b } = cmd;
    let mut graphs = Vec::new();
    let mut inputs = Vec::new();
    if let Some(dir) = catalog {
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| usage(format!("{}: {e}", dir.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "txt"))
            .collect();
        files.sort();
        for f in files {
            graphs.push((f.display().to_string(), read_matrix(&f)?));
            inputs.push(f);
        }
    } else {
        let (m, ins) = src.load()?;
        let name = src.describe();
        graphs.push((name, m));
        inputs = ins;
    }
    if graphs.is_empty() {
        return Err(usage("no graphs to search"));
    }
    let mut results = Vec::new();
    let mut all_rule_out = true;
    for (name, m) in &graphs {
        let r = eigvec_search(m, *ell, *a, *b, g.exec()).map_err(verify_err)?;
        all_rule_out &= r.rules_out;
        results.push(json!({ "graph": name, "result": r }));
    }
    let text = results
        .iter()
        .map(|r| {
            format!(
                "{}\tcandidates={}\tmax_set={}\trules_out={}\n",
                r["graph"].as_str().unwrap_or(""),
                r["result"]["candidates"],
                r["result"]["max_set"],
                r["result"]["rules_out"]
            )
        })
        .collect::<String>();
    let mut o = Outcome::new(json!({ "graphs": results.len(), "all_rule_out": all_rule_out, "results": results }))
        .with_text(text);
    o.inputs = inputs;
    Ok(o)
}

