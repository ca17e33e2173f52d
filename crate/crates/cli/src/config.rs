//! `key = value` engine configuration files.
//!
//! ```text
//! # default two-qubit engine
//! qubit1.frequency_ghz = 5.0
//! qubit1.temperature_mk = 150
//! qubit2.frequency_ghz = 5.0
//! qubit2.temperature_mk = 150
//! memory.temperature_mk = 80
//! ```

use std::path::{Path, PathBuf};

use qdemon_core::TwoQubitParams;

use crate::error::{CliError, Result};

pub const KEYS: [&str; 5] = [
    "qubit1.frequency_ghz",
    "qubit1.temperature_mk",
    "qubit2.frequency_ghz",
    "qubit2.temperature_mk",
    "memory.temperature_mk",
];

pub fn load(path: &Path) -> Result<TwoQubitParams> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text, path)
}

/// Parses config text; `path` only labels diagnostics.
pub fn parse(text: &str, path: &Path) -> Result<TwoQubitParams> {
    let err = |line: usize, message: String| CliError::Config {
        path: PathBuf::from(path),
        line,
        message,
    };
    let mut values: [Option<f64>; 5] = [None; 5];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(line, format!("expected `key = value`, got `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let slot = KEYS
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| err(line, format!("unknown key `{key}`")))?;
        if values[slot].is_some() {
            return Err(err(line, format!("duplicate key `{key}`")));
        }
        let number: f64 = value
            .parse()
            .map_err(|_| err(line, format!("`{key}`: `{value}` is not a number")))?;
        if !(number.is_finite() && number > 0.0) {
            return Err(err(line, format!("`{key}` must be positive, got {value}")));
        }
        values[slot] = Some(number);
    }
    let get = |slot: usize| {
        values[slot].ok_or(CliError::MissingKey {
            path: PathBuf::from(path),
            key: KEYS[slot],
        })
    };
    Ok(TwoQubitParams {
        f1_ghz: get(0)?,
        t1_mk: get(1)?,
        f2_ghz: get(2)?,
        t2_mk: get(3)?,
        t0_mk: get(4)?,
    })
}
