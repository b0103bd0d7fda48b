//! Plain matrix files: a `R C` header line, then `R` rows of `C` integers.

use std::fmt::Write as _;
use std::path::Path;

use markov_complexity::{Int, IntMatrix, IntVector};

use crate::io::{write_atomic, CliError};

pub fn render(m: &IntMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(Int::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn render_vectors(vectors: &[IntVector], cols: usize) -> String {
    let m = IntMatrix::from_rows(vectors, cols).expect("vectors share a length");
    render(&m)
}

pub fn parse(text: &str) -> Result<IntMatrix, CliError> {
    let mut tokens = text.split_whitespace();
    let mut header = |what: &str| -> Result<usize, CliError> {
        let t = tokens.next().ok_or_else(|| CliError::parse(format!("missing {what} in header")))?;
        t.parse().map_err(|_| CliError::parse(format!("bad {what} {t:?}")))
    };
    let rows = header("row count")?;
    let cols = header("column count")?;
    let entries: Vec<Int> = tokens
        .map(|t| t.parse::<Int>().map_err(|_| CliError::parse(format!("bad entry {t:?}"))))
        .collect::<Result<_, _>>()?;
    if entries.len() != rows * cols {
        return Err(CliError::parse(format!("expected {} entries for {rows}x{cols}, found {}", rows * cols, entries.len())));
    }
    let vectors: Vec<IntVector> = if cols == 0 {
        vec![IntVector::zeros(0); rows]
    } else {
        entries.chunks(cols).map(|c| IntVector::new(c.to_vec())).collect()
    };
    Ok(IntMatrix::from_rows(&vectors, cols)?)
}

pub fn read(path: &Path) -> Result<IntMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse(&text).map_err(|e| e.context(path))
}

/// Writes atomically, then re-reads the file and compares.
pub fn write(path: &Path, m: &IntMatrix) -> Result<(), CliError> {
    write_atomic(path, &render(m))?;
    let back = read(path)?;
    if &back != m {
        return Err(CliError::internal(format!("{} does not read back to the written matrix", path.display())));
    }
    Ok(())
}
