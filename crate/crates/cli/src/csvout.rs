//! Deterministic CSV output: 17 significant digits, atomic file writes.

use std::io;
use std::path::{Path, PathBuf};
use std::{fs, fmt};

/// Formats a float with 17 significant digits so the exact bit pattern
/// survives a parse round trip on any platform.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Quotes a field per RFC 4180 when it contains a separator, quote, or
/// line break; other fields pass through unchanged.
pub fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Writes through a sibling temp file and renames into place, so readers
/// never observe a half-written CSV.
pub fn write_atomic(path: &Path, content: &str) -> io::Result<()> {
    let mut tmp_name = path.as_os_str().to_owned();
    tmp_name.push(".tmp");
    let tmp = PathBuf::from(tmp_name);
    fs::write(&tmp, content)?;
    fs::rename(&tmp, path)
}

/// Pushes one CSV row, quoting each field as needed.
pub fn push_row(out: &mut String, fields: &[&str]) {
    for (i, field) in fields.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&quote(field));
    }
    out.push('\n');
}

/// Displays an optional float as its formatted value or an empty field.
pub struct MaybeFloat(pub Option<f64>);

impl fmt::Display for MaybeFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(x) => write!(f, "{}", fmt_float(x)),
            None => Ok(()),
        }
    }
}
