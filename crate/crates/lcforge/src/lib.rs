//! Census runner, report formats and input handling for `2^n`-periodic sequences.
//!
//! The math lives in [`lcforge_core`]; this crate adds threads, files and serialization.

pub mod census;
pub mod input;
pub mod report;

use std::path::PathBuf;

pub use census::{census_distribution, refutation_report, tally, verify_formulas};
pub use report::{CensusReport, Format, Row, Verdict};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] lcforge_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
