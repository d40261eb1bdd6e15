//! Newline-delimited classification cache: a header line, then one entry
//! per classified `TYData`, keyed by the SHA-256 of its canonical JSON.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use tybraid_core::json::DataJson;

use crate::report::Failure;

const FORMAT: &str = "tybraid-cache";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Header {
    format: String,
    version: String,
    modulus: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Entry {
    kind: String,
    checksum: String,
    result_checksum: String,
    result: Value,
}

pub struct Cache {
    path: PathBuf,
    header: Header,
    entries: Vec<Entry>,
    /// Lines dropped on load: unreadable, wrong header, or failed checksums.
    pub dropped: usize,
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn canonical(value: &impl Serialize) -> Result<String, Failure> {
    let v = serde_json::to_value(value).map_err(|e| Failure::new("cache", e))?;
    serde_json::to_string(&v).map_err(|e| Failure::new("cache", e))
}

pub fn data_checksum(data: &DataJson) -> Result<String, Failure> {
    Ok(sha256_hex(&canonical(data)?))
}

impl Entry {
    /// Both checksums recomputed from the stored result.
    fn valid(&self) -> bool {
        let Some(data) = self.result.get("data") else {
            return false;
        };
        let Ok(text) = serde_json::to_string(&self.result) else {
            return false;
        };
        let Ok(data_text) = serde_json::to_string(data) else {
            return false;
        };
        sha256_hex(&text) == self.result_checksum && sha256_hex(&data_text) == self.checksum
    }
}

impl Cache {
    pub fn open(path: &Path, modulus: u32) -> Result<Cache, Failure> {
        let header = Header {
            format: FORMAT.to_string(),
            version: tybraid_core::VERSION.to_string(),
            modulus,
        };
        let mut cache = Cache {
            path: path.to_path_buf(),
            header,
            entries: Vec::new(),
            dropped: 0,
        };
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(Failure::new("cache", format!("{}: {e}", path.display()))),
        };
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let current = match lines.next().map(serde_json::from_str::<Header>) {
            Some(Ok(h)) => h == cache.header,
            _ => false,
        };
        for line in lines {
            match serde_json::from_str::<Entry>(line) {
                Ok(e) if current && e.valid() => cache.entries.push(e),
                _ => cache.dropped += 1,
            }
        }
        if !current && !text.trim().is_empty() {
            cache.dropped += 1;
        }
        Ok(cache)
    }

    pub fn get<T: DeserializeOwned>(
        &self,
        kind: &str,
        data: &DataJson,
    ) -> Result<Option<T>, Failure> {
        let key = data_checksum(data)?;
        let want = serde_json::to_value(data).map_err(|e| Failure::new("cache", e))?;
        for e in self
            .entries
            .iter()
            .filter(|e| e.kind == kind && e.checksum == key)
        {
            if e.result.get("data") != Some(&want) {
                continue;
            }
            if let Ok(r) = serde_json::from_value(e.result.clone()) {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }

    /// Appends an entry and rewrites the file without dropped lines.
    pub fn put(
        &mut self,
        kind: &str,
        data: &DataJson,
        result: &impl Serialize,
    ) -> Result<(), Failure> {
        let result = serde_json::to_value(result).map_err(|e| Failure::new("cache", e))?;
        let entry = Entry {
            kind: kind.to_string(),
            checksum: data_checksum(data)?,
            result_checksum: sha256_hex(
                &serde_json::to_string(&result).map_err(|e| Failure::new("cache", e))?,
            ),
            result,
        };
        self.entries
            .retain(|e| !(e.kind == entry.kind && e.checksum == entry.checksum));
        self.entries.push(entry);
        let mut out = canonical(&self.header)? + "\n";
        for e in &self.entries {
            out += &canonical(e)?;
            out.push('\n');
        }
        fs::write(&self.path, out)
            .map_err(|e| Failure::new("cache", format!("{}: {e}", self.path.display())))
    }
}
