use std::io::Write;
use std::path::Path;

use clap::ValueEnum;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Svg,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Dot => "dot",
            Format::Svg => "svg",
        }
    }
}

/// Rejects a format the command cannot produce.
pub fn require(format: Format, allowed: &[Format], what: &str) -> Result<(), CliError> {
    if allowed.contains(&format) {
        return Ok(());
    }
    let names: Vec<&str> = allowed.iter().map(|f| f.name()).collect();
    Err(CliError::Usage(format!(
        "`{what}` cannot emit {}; supported formats: {}",
        format.name(),
        names.join(", ")
    )))
}

/// Writes to `path` through a sibling temp file and a rename, or to stdout.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    let Some(path) = path else {
        let mut out = std::io::stdout().lock();
        let written = out.write_all(text.as_bytes()).and_then(|_| {
            if text.ends_with('\n') {
                Ok(())
            } else {
                out.write_all(b"\n")
            }
        });
        // A reader that stops early (e.g. `head`) is not an error.
        return match written {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            other => other.map_err(Into::into),
        };
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        tmp.write_all(b"\n")?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_target() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.json");
        std::fs::write(&path, "old").unwrap();
        emit(Some(&path), "{}").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "{}\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn unsupported_format_is_usage_error() {
        let e = require(Format::Svg, &[Format::Json, Format::Csv], "count vertices").unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("json, csv"));
    }
}
