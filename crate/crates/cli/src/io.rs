//! Error type with process exit codes, and atomic file output.

use std::fmt;
use std::io::Write;
use std::path::Path;

use markov_complexity::Error;

pub const EXIT_PARSE: u8 = 2;
pub const EXIT_DIMENSION: u8 = 3;
pub const EXIT_CAP: u8 = 4;
pub const EXIT_PRECONDITION: u8 = 5;
pub const EXIT_OTHER: u8 = 1;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        CliError { code: EXIT_PARSE, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError { code: EXIT_OTHER, message: message.into() }
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError { code: EXIT_OTHER, message: format!("{}: {e}", path.display()) }
    }

    pub fn context(self, path: &Path) -> Self {
        CliError { message: format!("{}: {}", path.display(), self.message), ..self }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::DimensionMismatch(_) => EXIT_DIMENSION,
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::VertexNotInComplex(_)
        | Error::EmptyDeletion(_)
        | Error::NotInKernel
        | Error::Precondition(_)
        | Error::NotReducible => EXIT_PRECONDITION,
        Error::CrossCheck(_) => EXIT_OTHER,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError { code: exit_code(&e), message: e.to_string() }
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| CliError::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// `path` with `suffix` appended to the full file name.
pub fn with_suffix(path: &Path, suffix: &str) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    s.into()
}
