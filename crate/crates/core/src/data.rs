//! Bundled strongly regular graphs. `BSH_DATA_DIR` points at a directory of
//! replacement files with the same names.

use std::path::PathBuf;

use thiserror::Error;

use crate::io::{parse_matrix, ParseError};
use crate::matrix::IntMatrix;
use crate::srg::SrgParams;

pub const DATA_DIR_ENV: &str = "BSH_DATA_DIR";

#[derive(Debug, Error)]
pub enum DataError {
    #[error("unknown dataset {0:?}; expected one of srg-36-10-4-2, shrikhande, lattice-4x4")]
    UnknownDataset(String),
    #[error("{name}: {source}")]
    Parse { name: String, source: ParseError },
    #[error("{name}: cannot read {path}: {source}")]
    Io { name: String, path: PathBuf, source: std::io::Error },
    #[error("{name}: expected SRG{expected}, found {found}")]
    NotSrg { name: String, expected: SrgParams, found: String },
}

struct Entry {
    name: &'static str,
    text: &'static str,
    params: (i64, i64, i64, i64),
}

const ENTRIES: [Entry; 3] = [
    Entry { name: "srg-36-10-4-2", text: include_str!("../data/srg-36-10-4-2.txt"), params: (36, 10, 4, 2) },
    Entry { name: "shrikhande", text: include_str!("../data/shrikhande.txt"), params: (16, 6, 2, 2) },
    Entry { name: "lattice-4x4", text: include_str!("../data/lattice-4x4.txt"), params: (16, 6, 2, 2) },
];

pub fn dataset_names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

/// Loads a bundled graph and checks its SRG parameters.
pub fn bundled_data(name: &str) -> Result<IntMatrix, DataError> {
    let entry = ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| DataError::UnknownDataset(name.into()))?;
    let text = match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(format!("{name}.txt"));
            std::fs::read_to_string(&path).map_err(|source| DataError::Io { name: name.into(), path, source })?
        }
        None => entry.text.to_string(),
    };
    let m = parse_matrix(&text).map_err(|source| DataError::Parse { name: name.into(), source })?;
    let (v, k, l, mu) = entry.params;
    let expected = SrgParams::new(v, k, l, mu);
    match SrgParams::of_adjacency(&m) {
        Some(p) if p == expected => Ok(m),
        other => Err(DataError::NotSrg {
            name: name.into(),
            expected,
            found: other.map_or_else(|| "not strongly regular".into(), |p| p.to_string()),
        }),
    }
}
