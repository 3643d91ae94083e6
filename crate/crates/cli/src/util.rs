use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use bsh_core::constructions::BshInstance;
use bsh_core::io::{load_latin, load_matrix, save_matrix};
use bsh_core::latin::LatinSquare;
use bsh_core::{check_split, HadamardMatrix, IntMatrix, SplitParams};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn verify_err(e: impl std::fmt::Display) -> CliError {
    CliError::Verify(e.to_string())
}

/// Sidecar written next to a constructed matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sidecar {
    pub construction: String,
    /// Matrix file, relative to the sidecar.
    pub matrix: String,
    pub split_rows: Vec<usize>,
    pub claimed: SplitParams,
}

pub fn ensure_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    Ok(())
}

pub fn write_json(path: &Path, value: &impl Serialize) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).context("serializing")?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn read_matrix(path: &Path) -> CliResult<IntMatrix> {
    load_matrix(path).map_err(|e| usage(e.to_string()))
}

pub fn read_hadamard(path: &Path) -> CliResult<HadamardMatrix> {
    HadamardMatrix::new(read_matrix(path)?).map_err(|e| verify_err(format!("{}: {e}", path.display())))
}

pub fn read_latin(path: &Path) -> CliResult<LatinSquare> {
    load_latin(path).map_err(|e| usage(e.to_string()))
}

pub fn write_matrix(m: &IntMatrix, path: &Path) -> CliResult<()> {
    save_matrix(m, path).map_err(|e| CliError::Other(e.into()))
}

/// Loads a sidecar and its matrix and re-checks the split against the
/// claimed parameters.
pub fn load_bsh(sidecar: &Path) -> CliResult<(BshInstance, PathBuf)> {
    let text = fs::read_to_string(sidecar).map_err(|e| usage(format!("{}: {e}", sidecar.display())))?;
    let car: Sidecar = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", sidecar.display())))?;
    let matrix_path = sidecar.parent().unwrap_or(Path::new(".")).join(&car.matrix);
    let h = read_hadamard(&matrix_path)?;
    let inst = BshInstance::new(h, car.split_rows, car.claimed).map_err(verify_err)?;
    Ok((inst, matrix_path))
}

/// Writes the matrix and a sidecar, then reloads both and re-verifies.
pub fn save_bsh(inst: &BshInstance, dir: &Path, stem: &str, construction: &str) -> CliResult<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let matrix_name = format!("{stem}.txt");
    let matrix_path = dir.join(&matrix_name);
    if !matrix_path.exists() || read_matrix(&matrix_path)? != *inst.h.matrix() {
        write_matrix(inst.h.matrix(), &matrix_path)?;
    }
    let car = Sidecar {
        construction: construction.into(),
        matrix: matrix_name,
        split_rows: inst.split_rows.clone(),
        claimed: inst.claimed,
    };
    let sidecar_path = dir.join(format!("{stem}.{construction}.json"));
    write_json(&sidecar_path, &car)?;
    let (back, _) = load_bsh(&sidecar_path)?;
    if back.report.params != inst.claimed {
        return Err(CliError::Verify(format!("{} does not re-verify", sidecar_path.display())));
    }
    Ok(vec![matrix_path, sidecar_path])
}

pub fn parse_rows(spec: &str) -> CliResult<Vec<usize>> {
    let mut rows = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: usize = lo.parse().map_err(|_| usage(format!("--rows: bad range {part:?}")))?;
            let hi: usize = hi.parse().map_err(|_| usage(format!("--rows: bad range {part:?}")))?;
            rows.extend(lo..hi);
        } else {
            rows.push(part.parse().map_err(|_| usage(format!("--rows: bad index {part:?}")))?);
        }
    }
    Ok(rows)
}

pub fn split_report_of(h: &HadamardMatrix, rows: &[usize]) -> CliResult<bsh_core::SplitReport> {
    check_split(h, rows).map_err(verify_err)
}

/// Renders rows of cells as an aligned table.
pub fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> =
            r.iter().enumerate().map(|(c, s)| format!("{s:>w$}", w = widths[c])).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}
