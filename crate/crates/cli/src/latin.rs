use std::path::{Path, PathBuf};

use bsh_core::io::save_latin;
use bsh_core::latin::{
    affine_ufs_family, circle_symmetric, compose_ufs, force_constant_diagonal, is_ufs_family, LatinSquare,
};
use clap::Subcommand;
use serde_json::json;

use crate::report::Outcome;
use crate::util::{ensure_dir, read_latin, usage, verify_err, CliError, CliResult};
use crate::Global;

#[derive(Subcommand)]
pub enum LatinCmd {
    /// The q - 1 squares a(i + j) over GF(q).
    Affine {
        #[arg(long)]
        q: usize,
        /// Keep only the first f squares.
        #[arg(long)]
        count: Option<usize>,
        /// Add this to every symbol.
        #[arg(long, default_value_t = 0)]
        shift: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Symmetric square of even order v with zero diagonal.
    Circle {
        #[arg(long)]
        v: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Latin property, symmetry, diagonal and pairwise UFS.
    Check {
        #[arg(long, num_args = 1.., required = true)]
        files: Vec<PathBuf>,
    },
    /// Square of common symbols of a UFS pair.
    Compose {
        #[arg(long)]
        l1: PathBuf,
        #[arg(long)]
        l2: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Permute rows so that one symbol fills the diagonal.
    Diagfix {
        #[arg(long, num_args = 1.., required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 0)]
        symbol: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn write_squares(squares: &[LatinSquare], dir: &Path, stem: &str) -> CliResult<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let mut paths = Vec::new();
    for (k, sq) in squares.iter().enumerate() {
        let p = dir.join(format!("{stem}-{}.txt", k + 1));
        save_latin(sq, &p).map_err(|e| CliError::Other(e.into()))?;
        paths.push(p);
    }
    Ok(paths)
}

fn describe(sq: &LatinSquare) -> serde_json::Value {
    let diag = sq.get(0, 0);
    json!({
        "order": sq.order(),
        "min_symbol": sq.min_symbol(),
        "symmetric": sq.is_symmetric(),
        "constant_diagonal": sq.has_constant_diagonal(diag).then_some(diag),
    })
}

fn files_json(paths: &[PathBuf]) -> Vec<String> {
    paths.iter().map(|p| p.display().to_string()).collect()
}

pub fn run(cmd: &LatinCmd, g: &Global) -> CliResult<Outcome> {
    match cmd {
        LatinCmd::Affine { q, count, shift, out } => {
            let mut fam = affine_ufs_family(*q).map_err(|e| usage(format!("--q {q}: {e}")))?;
            if let Some(f) = count {
                if *f == 0 || *f > fam.len() {
                    return Err(usage(format!("--count must lie in 1..={}", fam.len())));
                }
                fam.truncate(*f);
            }
            let fam: Vec<LatinSquare> = fam.iter().map(|s| s.shift_symbols(*shift)).collect();
            let paths = write_squares(&fam, out, &format!("affine-{q}"))?;
            let mut o = Outcome::new(json!({ "q": q, "squares": fam.len(), "files": files_json(&paths) }))
                .check("mutually UFS", is_ufs_family(&fam, g.exec()));
            o.outputs = paths;
            Ok(o)
        }
        LatinCmd::Circle { v, out } => {
            let sq = circle_symmetric(*v).map_err(|e| usage(format!("--v {v}: {e}")))?;
            let paths = write_squares(std::slice::from_ref(&sq), out, &format!("circle-{v}"))?;
            let mut o = Outcome::new(json!({ "v": v, "files": files_json(&paths) }))
                .check("symmetric", sq.is_symmetric())
                .check("zero diagonal", sq.has_constant_diagonal(0));
            o.outputs = paths;
            Ok(o)
        }
        LatinCmd::Check { files } => {
            let squares: Vec<LatinSquare> = files.iter().map(|p| read_latin(p)).collect::<Result<_, _>>()?;
            let info: Vec<_> = squares.iter().map(describe).collect();
            let mut o = Outcome::new(json!({ "squares": info }));
            if squares.len() > 1 {
                o.push_check("mutually UFS", is_ufs_family(&squares, g.exec()));
            }
            o.inputs = files.clone();
            Ok(o)
        }
        LatinCmd::Compose { l1, l2, out } => {
            let (a, b) = (read_latin(l1)?, read_latin(l2)?);
            let c = compose_ufs(&a, &b).map_err(verify_err)?;
            let paths = write_squares(std::slice::from_ref(&c), out, "composed")?;
            let mut o = Outcome::new(json!({ "square": describe(&c), "files": files_json(&paths) }))
                .check("Latin", c.is_latin());
            o.inputs = vec![l1.clone(), l2.clone()];
            o.outputs = paths;
            Ok(o)
        }
        LatinCmd::Diagfix { files, symbol, out } => {
            let squares: Vec<LatinSquare> = files.iter().map(|p| read_latin(p)).collect::<Result<_, _>>()?;
            let fixed = force_constant_diagonal(&squares, *symbol).map_err(verify_err)?;
            let paths = write_squares(&fixed, out, "diagfix")?;
            let mut o = Outcome::new(json!({ "symbol": symbol, "files": files_json(&paths) }))
                .check(format!("diagonal is {symbol}"), fixed.iter().all(|s| s.has_constant_diagonal(*symbol)));
            if squares.len() > 1 {
                o.push_check("still mutually UFS", is_ufs_family(&fixed, g.exec()));
            }
            o.inputs = files.clone();
            o.outputs = paths;
            Ok(o)
        }
    }
}

