//! Output formatting and file writing.

use std::io::Write;
use std::path::Path;

use crate::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Decimal, 17 significant digits, lowercase e-notation. Locale independent
/// and exact on re-parse.
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// Writes to the given path, or to stdout when no path is set.
pub fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(|source| CliError::Output {
                path: path.to_owned(),
                source,
            })?;
            file.write_all(content.as_bytes())
                .and_then(|()| file.flush())
                .map_err(|source| CliError::Output {
                    path: path.to_owned(),
                    source,
                })
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())
                .and_then(|()| lock.flush())
                .map_err(|source| CliError::Output {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_f64(0.0), "0.0000000000000000e0");
        assert_eq!(fmt_f64(-1.0819767068693265), "-1.0819767068693265e0");
        // 17 significant digits round-trip any f64 exactly
        let x = 0.6905489227709077_f64;
        let back: f64 = fmt_f64(x).parse().unwrap();
        assert_eq!(back, x);
    }
}
