use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::commands::Payload;

pub const RUN_RECORD_SCHEMA: &str = "horace.run/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema: String,
    pub command: String,
    /// Arguments after the program name.
    pub argv: Vec<String>,
    pub seed: Option<u64>,
    pub prime: Option<u64>,
    pub wall_clock_ms: u64,
    pub payload: Payload,
}

impl RunRecord {
    /// Hex SHA-256 of the arguments and seed.
    pub fn content_hash(&self) -> String {
        let key = serde_json::json!({ "argv": self.argv, "seed": self.seed, "prime": self.prime });
        hex::encode(Sha256::digest(key.to_string().as_bytes()))
    }

    pub fn file_name(&self) -> String {
        format!("{}-{}.json", self.command, &self.content_hash()[..16])
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let rec: Self =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if rec.schema != RUN_RECORD_SCHEMA {
            bail!("{}: unknown schema {}", path.display(), rec.schema);
        }
        Ok(rec)
    }
}

/// Writes `contents` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn save(dir: &Path, rec: &RunRecord) -> Result<PathBuf> {
    let path = dir.join(rec.file_name());
    write_atomic(&path, &serde_json::to_string_pretty(rec)?)?;
    Ok(path)
}

/// Record files named directly or found (non-recursively) in directories.
pub fn collect(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = fs::read_dir(p)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|q| q.extension().is_some_and(|x| x == "json"))
                .collect();
            found.sort();
            out.extend(found);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}
