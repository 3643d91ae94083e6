//! Balancedly splittable Hadamard matrices: detection, constructions,
//! parameter feasibility, Latin squares and the association schemes built
//! from them.

#![allow(clippy::needless_range_loop)]

pub mod clique;
pub mod constructions;
pub mod data;
pub mod exec;
pub mod feasibility;
pub mod field;
pub mod gf;
pub mod io;
pub mod latin;
pub mod matrix;
pub mod schemes;
pub mod splittability;
pub mod srg;

pub use exec::Exec;
pub use matrix::{HadamardMatrix, IntMatrix};
pub use splittability::{check_split, SplitParams, SplitReport};
pub use srg::SrgParams;
