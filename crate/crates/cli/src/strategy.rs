//! JSON file format for atomic strategies.
//!
//! ```json
//! {"budget": "15", "atoms": [{"x": "0", "w": "1/2"}, {"x": "14", "w": "1/2"}]}
//! ```
//!
//! Every number is a string holding an exact rational ("p" or "p/q").

use std::fs;
use std::path::Path;

use blotto_core::{rational, AtomicStrategy, Error as CoreError, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyFile {
    pub budget: String,
    pub atoms: Vec<AtomEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomEntry {
    pub x: String,
    pub w: String,
}

impl From<&AtomicStrategy> for StrategyFile {
    fn from(f: &AtomicStrategy) -> Self {
        StrategyFile {
            budget: f.budget().to_string(),
            atoms: f
                .atoms()
                .iter()
                .map(|(x, w)| AtomEntry {
                    x: x.to_string(),
                    w: w.to_string(),
                })
                .collect(),
        }
    }
}

/// 1-based line of the first occurrence of `needle`, for error context.
fn line_of(text: &str, needle: &str) -> Option<usize> {
    text.lines().position(|l| l.contains(needle)).map(|i| i + 1)
}

fn context(origin: &str, line: Option<usize>) -> String {
    match line {
        Some(l) => format!("{origin} line {l}"),
        None => origin.to_string(),
    }
}

/// Parses and validates a strategy; `origin` names the source in errors.
pub fn parse_strategy(text: &str, origin: &str) -> Result<AtomicStrategy> {
    let file: StrategyFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        context: context(origin, Some(e.line())),
        message: e.to_string(),
    })?;
    let number = |s: &str, what: &str| -> Result<Rational> {
        rational::parse(s).ok_or_else(|| CliError::Parse {
            context: context(origin, line_of(text, &format!("\"{s}\""))),
            message: format!("{what} {s:?} is not an exact rational \"p\" or \"p/q\""),
        })
    };
    let budget = number(&file.budget, "budget")?;
    let atoms = file
        .atoms
        .iter()
        .map(|a| Ok((number(&a.x, "location")?, number(&a.w, "weight")?)))
        .collect::<Result<Vec<_>>>()?;
    AtomicStrategy::new(budget, atoms).map_err(|e| match e {
        CoreError::InvalidStrategy(message) => CliError::Parse {
            context: context(origin, line_of(text, "\"atoms\"")),
            message,
        },
        other => other.into(),
    })
}

pub fn read_strategy(path: &Path) -> Result<AtomicStrategy> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_strategy(&text, &path.display().to_string())
}

pub fn to_json(f: &AtomicStrategy) -> String {
    serde_json::to_string_pretty(&StrategyFile::from(f)).expect("strings always serialize")
}

pub fn write_strategy(path: &Path, f: &AtomicStrategy) -> Result<()> {
    fs::write(path, to_json(f) + "\n").map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}
