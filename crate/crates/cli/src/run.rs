//! Input reading, output writing and the `run_meta.json` sidecar.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const META_FILE: &str = "run_meta.json";

#[derive(Debug, Clone, Serialize)]
struct FileDigest {
    path: String,
    sha256: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Tracks every file a subcommand reads and writes.
pub struct Run {
    out_dir: PathBuf,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
}

impl Run {
    pub fn new(out_dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
        Ok(Run {
            out_dir: out_dir.to_path_buf(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        })
    }

    pub fn read_bytes(&mut self, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
        self.inputs.push(FileDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(&bytes),
        });
        Ok(bytes)
    }

    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = self.read_bytes(path)?;
        String::from_utf8(bytes).map_err(|e| CliError::data(path, format!("not UTF-8 ({e})")))
    }

    /// Writes `contents` to `rel` under the output directory.
    pub fn write(&mut self, rel: &str, contents: impl AsRef<[u8]>) -> Result<(), CliError> {
        let path = self.out_dir.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
        let contents = contents.as_ref();
        fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
        self.outputs.push(FileDigest {
            path: rel.to_string(),
            sha256: sha256_hex(contents),
        });
        Ok(())
    }

    pub fn finish<C: Serialize>(
        self,
        command: &str,
        seed: u64,
        config: &C,
    ) -> Result<(), CliError> {
        #[derive(Serialize)]
        struct Meta<'a, C> {
            tool: &'static str,
            version: &'static str,
            command: &'a str,
            seed: u64,
            config: &'a C,
            inputs: Vec<FileDigest>,
            outputs: Vec<FileDigest>,
        }
        let meta = Meta {
            tool: "placenet",
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed,
            config,
            inputs: self.inputs,
            outputs: self.outputs,
        };
        let mut text = serde_json::to_string_pretty(&meta).expect("metadata serializes");
        text.push('\n');
        let path = self.out_dir.join(META_FILE);
        fs::write(&path, text).map_err(|e| CliError::io(&path, e))
    }
}

/// Renders a CSV table with a header row.
pub fn csv_table<R, F>(header: &[&str], rows: R) -> String
where
    R: IntoIterator<Item = Vec<F>>,
    F: AsRef<[u8]>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory");
    for row in rows {
        w.write_record(row).expect("in-memory");
    }
    String::from_utf8(w.into_inner().expect("in-memory")).expect("utf-8 fields")
}

/// Resolves a manifest path against the manifest's own directory.
pub fn resolve(manifest: &Path, entry: &str) -> PathBuf {
    let p = Path::new(entry);
    if p.is_absolute() {
        return p.to_path_buf();
    }
    manifest.parent().unwrap_or(Path::new("")).join(p)
}

/// A file-name-safe rendering of an id.
pub fn file_stem(id: &str) -> String {
    id.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.') {
                c
            } else {
                '_'
            }
        })
        .collect()
}
