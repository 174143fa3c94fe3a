use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;

use scissors_core::surface::{SurfaceData, TriSurface};

/// Exit 1: the input parsed but a check on it failed.
/// Exit 2: the input could not be read or parsed.
#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Input(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Input(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Input(m) => m,
        }
    }
}

pub fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Malformed JSON is an input error; a triangulation that parses but breaks
/// an invariant is a domain error naming the invariant.
pub fn read_surface(path: &Path) -> Result<TriSurface, CliError> {
    let data: SurfaceData = read_json(path)?;
    TriSurface::try_from(data).map_err(|v| CliError::Domain(format!("{}: invalid surface: {v}", path.display())))
}

/// Writes JSON to `out`, or returns it for printing.
pub fn write_json<T: serde::Serialize>(value: &T, out: Option<&Path>) -> Result<Option<String>, CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Domain(e.to_string()))?;
    match out {
        Some(p) => {
            fs::write(p, text + "\n").map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}
