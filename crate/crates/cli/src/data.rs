//! Dataset ingestion: bundled fixtures or plain-text numeric files.

use std::fmt;
use std::io::Read;
use std::path::PathBuf;

use varj::{datasets, Sample};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Fixture(&'static str),
    File(PathBuf),
    Stdin,
}

impl DataSource {
    /// Fixture names win over same-named files; `-` is standard input.
    pub fn parse(s: &str) -> Self {
        if s == "-" {
            return DataSource::Stdin;
        }
        match datasets::NAMES.iter().find(|n| n.eq_ignore_ascii_case(s)) {
            Some(name) => DataSource::Fixture(name),
            None => DataSource::File(PathBuf::from(s)),
        }
    }
}

impl fmt::Display for DataSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataSource::Fixture(n) => f.write_str(n),
            DataSource::File(p) => write!(f, "{}", p.display()),
            DataSource::Stdin => f.write_str("<stdin>"),
        }
    }
}

/// Values separated by commas and/or whitespace, any number per line.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_values(text: &str, source: &str) -> CliResult<Vec<f64>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let err = |message: String| CliError::Parse {
                source: source.to_string(),
                line: i + 1,
                message,
            };
            let v: f64 = tok.parse().map_err(|_| err(format!("not a number: '{tok}'")))?;
            if !v.is_finite() {
                return Err(err(format!("non-finite value '{tok}'")));
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// Load and sort a sample.
pub fn load_dataset(src: &DataSource) -> CliResult<Sample> {
    let values = match src {
        DataSource::Fixture(name) => datasets::by_name(name)
            .ok_or_else(|| CliError::Usage(format!("unknown fixture '{name}'")))?
            .to_vec(),
        DataSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            parse_values(&text, &path.display().to_string())?
        }
        DataSource::Stdin => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Io(format!("cannot read standard input: {e}")))?;
            parse_values(&text, "<stdin>")?
        }
    };
    if values.is_empty() {
        return Err(CliError::EmptyDataset(src.to_string()));
    }
    Ok(Sample::new(values)?)
}
