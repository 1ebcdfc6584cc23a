//! Reading one period of a sequence from the command line or a file.

use std::fs;
use std::path::{Path, PathBuf};

use lcforge_core::PeriodicSequence;

use crate::{Error, Result};

/// Where a period comes from.
#[derive(Clone, Debug)]
pub enum SequenceSource {
    /// Binary digits, position 0 first.
    Bits(String),
    /// Hex digits in the same order as the binary form, each digit most significant bit
    /// first: `"C000"` is `"1100000000000000"`.
    Hex(String),
    /// A file holding a binary string; whitespace is ignored.
    File(PathBuf),
}

impl SequenceSource {
    pub fn read(&self, exponent: u32) -> Result<PeriodicSequence> {
        Ok(match self {
            Self::Bits(text) => PeriodicSequence::parse_binary(text, exponent)?,
            Self::Hex(text) => PeriodicSequence::parse_hex(text, exponent)?,
            Self::File(path) => read_file(path, exponent)?,
        })
    }
}

fn read_file(path: &Path, exponent: u32) -> Result<PeriodicSequence> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    let bits: String = text.split_whitespace().collect();
    Ok(PeriodicSequence::parse_binary(&bits, exponent)?)
}
