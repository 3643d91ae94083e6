use std::path::{Path, PathBuf};

use bsh_core::constructions::{
    core_tensor, gram_construction, kron_square, skew_core_bsh, twin_sylvester, two_row_split, BshInstance,
    KronVariant,
};
use bsh_core::matrix::{is_hadamard, paley_skew_core, sylvester};
use bsh_core::HadamardMatrix;
use clap::{Args, Subcommand, ValueEnum};
use serde::Serialize;

use crate::report::Outcome;
use crate::util::{read_hadamard, save_bsh, usage, verify_err, write_matrix, ensure_dir, CliResult};
use crate::Global;

#[derive(Args)]
pub struct OutDir {
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
pub struct Source {
    /// Order of the Sylvester matrix to start from (a power of two).
    #[arg(long)]
    m: Option<usize>,
    /// Start from this Hadamard matrix instead.
    #[arg(long)]
    hadamard: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum VariantArg {
    Large,
    Small,
    Both,
}

#[derive(Subcommand)]
pub enum ConstructCmd {
    /// Sylvester matrix of order 2^m.
    Sylvester {
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        out: OutDir,
    },
    /// Kronecker square H ⊗ H with its large or small split.
    Kron {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value = "both")]
        variant: VariantArg,
        #[command(flatten)]
        out: OutDir,
    },
    /// Order m² split from the Gram matrix of a normalized H.
    Gram {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        out: OutDir,
    },
    /// H ⊗ K split for Sylvester orders k and m.
    CoreTensor {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: OutDir,
    },
    /// Normalized H without its first two rows.
    TwoRow {
        /// Sylvester order n.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        hadamard: Option<PathBuf>,
        #[command(flatten)]
        out: OutDir,
    },
    /// Sylvester matrix of order 4^m with its three splits.
    Twin {
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        out: OutDir,
    },
    /// Split of order q(q+1) from the Paley skew core of prime power q ≡ 3 (mod 4).
    SkewCore {
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        out: OutDir,
    },
}

#[derive(Serialize)]
struct Built {
    construction: String,
    files: Vec<String>,
    summary: bsh_core::splittability::SplitSummary,
    split_rows: Vec<usize>,
}

pub fn sylvester_of_order(m: usize) -> CliResult<HadamardMatrix> {
    if m == 0 || !m.is_power_of_two() || m > 1 << 12 {
        return Err(usage(format!("order {m} is not a power of two up to 4096")));
    }
    Ok(sylvester(m.trailing_zeros()))
}

fn source(src: &Source) -> CliResult<(HadamardMatrix, Vec<PathBuf>)> {
    match (&src.m, &src.hadamard) {
        (Some(m), None) => Ok((sylvester_of_order(*m)?, vec![])),
        (None, Some(p)) => Ok((read_hadamard(p)?, vec![p.clone()])),
        _ => Err(usage("give exactly one of --m and --hadamard")),
    }
}

fn emit(instances: Vec<(BshInstance, String)>, dir: &Path, stem: &str, inputs: Vec<PathBuf>) -> CliResult<Outcome> {
    let mut built = Vec::new();
    let mut outputs = Vec::new();
    let mut checks = Vec::new();
    for (inst, name) in instances {
        let files = save_bsh(&inst, dir, stem, &name)?;
        checks.push((format!("{name}: Hadamard"), is_hadamard(inst.h.matrix())));
        checks.push((format!("{name}: split {} re-verifies from disk", inst.claimed), true));
        built.push(Built {
            construction: name,
            files: files.iter().map(|p| p.display().to_string()).collect(),
            summary: inst.report.summary(),
            split_rows: inst.split_rows.clone(),
        });
        for f in files {
            if !outputs.contains(&f) {
                outputs.push(f);
            }
        }
    }
    let mut o = Outcome::new(&built);
    o.inputs = inputs;
    o.outputs = outputs;
    o.checks = checks;
    Ok(o)
}

pub fn run(cmd: &ConstructCmd, _g: &Global) -> CliResult<Outcome> {
    match cmd {
        ConstructCmd::Sylvester { m, out } => {
            if *m > 12 {
                return Err(usage("--m must be at most 12"));
            }
            ensure_dir(&out.out)?;
            let h = sylvester(*m);
            let path = out.out.join(format!("sylvester-{}.txt", h.order()));
            write_matrix(h.matrix(), &path)?;
            let mut o = Outcome::new(serde_json::json!({ "order": h.order(), "file": path.display().to_string() }))
                .check("Hadamard", is_hadamard(h.matrix()));
            o.outputs.push(path);
            Ok(o)
        }
        ConstructCmd::Kron { src, variant, out } => {
            let (h, inputs) = source(src)?;
            let variants: &[KronVariant] = match variant {
                VariantArg::Large => &[KronVariant::Large],
                VariantArg::Small => &[KronVariant::Small],
                VariantArg::Both => &[KronVariant::Large, KronVariant::Small],
            };
            let mut list = Vec::new();
            for v in variants {
                let inst = kron_square(&h, *v).map_err(verify_err)?;
                let name = match v {
                    KronVariant::Large => "kron-large",
                    KronVariant::Small => "kron-small",
                };
                list.push((inst, name.to_string()));
            }
            emit(list, &out.out, &format!("kron-{}", h.order() * h.order()), inputs)
        }
        ConstructCmd::Gram { src, out } => {
            let (h, inputs) = source(src)?;
            let inst = gram_construction(&h).map_err(verify_err)?;
            emit(vec![(inst, "gram".into())], &out.out, &format!("gram-{}", h.order() * h.order()), inputs)
        }
        ConstructCmd::CoreTensor { k, m, out } => {
            let h = sylvester_of_order(*k)?;
            let k2 = sylvester_of_order(*m)?;
            let inst = core_tensor(&h, &k2).map_err(verify_err)?;
            emit(vec![(inst, "core-tensor".into())], &out.out, &format!("core-tensor-{k}x{m}"), vec![])
        }
        ConstructCmd::TwoRow { n, hadamard, out } => {
            let (h, inputs) = source(&Source { m: *n, hadamard: hadamard.clone() })?;
            let inst = two_row_split(&h).map_err(verify_err)?;
            emit(vec![(inst, "two-row".into())], &out.out, &format!("two-row-{}", h.order()), inputs)
        }
        ConstructCmd::Twin { m, out } => {
            if *m == 0 || *m > 5 {
                return Err(usage("--m must lie in 1..=5"));
            }
            let twin = twin_sylvester(*m).map_err(verify_err)?;
            let [h1, h2, h3] = twin.instances().map_err(verify_err)?;
            let list = vec![(h1, "twin-h1".into()), (h2, "twin-h2".into()), (h3, "twin-h3".into())];
            emit(list, &out.out, &format!("twin-{}", 1usize << (2 * m)), vec![])
        }
        ConstructCmd::SkewCore { q, out } => {
            let core = paley_skew_core(*q).map_err(|e| usage(format!("--q {q}: {e}")))?;
            let inst = skew_core_bsh(&core).map_err(verify_err)?;
            emit(vec![(inst, "skew-core".into())], &out.out, &format!("skew-core-{q}"), vec![])
        }
    }
}
