use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};
use walsh_lab::probe::Witness;

use crate::CliError;

/// Writes `contents` to `path` through a sibling temp file and a rename, or to
/// stdout when no path is given.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    let Some(path) = path else {
        // a closed reader (`| head`) is not a failure of the run
        return match std::io::stdout().write_all(contents.as_bytes()) {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            other => other.map_err(CliError::from),
        };
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

/// CSV text with a `# seed=` comment line ahead of the header.
pub struct Table {
    seed: u64,
    writer: csv::Writer<Vec<u8>>,
}

impl Table {
    pub fn new(seed: u64, header: &[&str]) -> Result<Self, CliError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header).map_err(csv_error)?;
        Ok(Self { seed, writer })
    }

    pub fn row(&mut self, fields: &[String]) -> Result<(), CliError> {
        self.writer.write_record(fields).map_err(csv_error)
    }

    pub fn finish(self) -> Result<String, CliError> {
        let body = self.writer.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        let body = String::from_utf8(body).expect("csv output is utf-8");
        Ok(format!("# seed={}\n{body}", self.seed))
    }
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

pub fn json(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
    text.push('\n');
    text
}

/// SHA-256 over the witness entries as little-endian `(re, im)` pairs.
pub fn witness_hash(witness: &Witness) -> String {
    let values = match witness {
        Witness::Function(f) => f.values(),
        Witness::Coefficients(c) => c.coeffs(),
    };
    let mut hasher = Sha256::new();
    for v in values {
        hasher.update(v.re.to_le_bytes());
        hasher.update(v.im.to_le_bytes());
    }
    hex::encode(hasher.finalize())
}
