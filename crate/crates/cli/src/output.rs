//! Artifacts and where they go.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, CliResult};

/// What a command produced: a main CSV/JSON body, optional side files and a
/// one-line summary.
pub struct Artifact {
    pub body: String,
    pub extras: Vec<Extra>,
    pub summary: String,
}

pub struct Extra {
    /// Explicit destination; otherwise the `--out` path with `extension`.
    pub path: Option<PathBuf>,
    pub extension: &'static str,
    pub body: String,
    /// Whether the body is printed after the main one when there is no file to write.
    pub print_without_path: bool,
}

impl Artifact {
    pub fn new(body: String, summary: impl Into<String>) -> Self {
        Artifact { body, extras: Vec::new(), summary: summary.into() }
    }

    pub fn json<T: Serialize>(value: &T, summary: impl Into<String>) -> Self {
        Self::new(to_json(value), summary)
    }

    pub fn with_extra(mut self, extra: Extra) -> Self {
        self.extras.push(extra);
        self
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Rows to CSV text with a header line.
pub fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory writer");
    for row in rows {
        w.write_record(&row).expect("in-memory writer");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 fields")
}

fn write_file(path: &Path, body: &str) -> CliResult<()> {
    std::fs::write(path, body).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Writes the artifact. With `--out` the summary goes to stdout, otherwise
/// the bodies go to stdout and the summary to stderr.
pub fn emit(artifact: &Artifact, out: Option<&Path>) -> CliResult<()> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let io_err = |source| CliError::Io { path: PathBuf::from("<stdout>"), source };
    match out {
        Some(path) => {
            write_file(path, &artifact.body)?;
            for extra in &artifact.extras {
                let target = extra.path.clone().unwrap_or_else(|| path.with_extension(extra.extension));
                write_file(&target, &extra.body)?;
            }
            writeln!(lock, "{}", artifact.summary).map_err(io_err)?;
        }
        None => {
            lock.write_all(artifact.body.as_bytes()).map_err(io_err)?;
            for extra in &artifact.extras {
                match &extra.path {
                    Some(p) => write_file(p, &extra.body)?,
                    None if extra.print_without_path => {
                        writeln!(lock).map_err(io_err)?;
                        lock.write_all(extra.body.as_bytes()).map_err(io_err)?;
                    }
                    None => {}
                }
            }
            eprintln!("{}", artifact.summary);
        }
    }
    lock.flush().map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_only_when_needed() {
        let text = csv_text(&["n", "re"], vec![vec!["10".into(), "1/2".into()], vec!["20".into(), "a,b".into()]]);
        assert_eq!(text, "n,re\n10,1/2\n20,\"a,b\"\n");
    }
}
