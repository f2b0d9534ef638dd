use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use tempfile::NamedTempFile;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// 17 significant digits in scientific notation.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Parses radians, accepting `pi`, `pi/N`, `-pi/N` and plain decimals.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t),
    };
    if let Some(rest) = body.strip_prefix("pi") {
        if rest.is_empty() {
            return Ok(sign * PI);
        }
        if let Some(den) = rest.strip_prefix('/') {
            let d: f64 = den.parse().map_err(|_| format!("bad angle `{s}`"))?;
            if d == 0.0 {
                return Err(format!("bad angle `{s}`"));
            }
            return Ok(sign * PI / d);
        }
        return Err(format!("bad angle `{s}`"));
    }
    t.parse::<f64>().map_err(|_| format!("bad angle `{s}`"))
}

/// Writes `bytes` to `path` through a temporary file in the same directory, or
/// to stdout when no path is given.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    let Some(path) = path else {
        let mut out = std::io::stdout().lock();
        return out.write_all(bytes).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        });
    };
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.flush().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
