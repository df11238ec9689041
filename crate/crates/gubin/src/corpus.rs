//! On-disk mismatch corpus.
//!
//! Layout: `<dir>/<hash>.cnf` for every mined and minimized formula, plus
//! `<dir>/index.json`, a list of entries in mining order. `hash` is the
//! SHA-256 of the formula's DIMACS text, so identical formulas share a file.

use std::fs;
use std::io;
use std::path::Path;

use gubin_core::harness::{GenConfig, Mismatch};
use gubin_core::Formula;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dimacs::serialize_dimacs;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfgDoc {
    pub n_vars: u32,
    pub n_clauses: usize,
    pub max_width: u32,
    pub seed: u64,
    pub allow_duplicate_clauses: bool,
}

impl From<&GenConfig> for CfgDoc {
    fn from(c: &GenConfig) -> Self {
        CfgDoc {
            n_vars: c.n_vars,
            n_clauses: c.n_clauses,
            max_width: c.max_width,
            seed: c.seed,
            allow_duplicate_clauses: c.allow_duplicate_clauses,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    pub hash: String,
    pub seed: Option<u64>,
    pub cfg: Option<CfgDoc>,
    pub gubin: String,
    pub oracle: String,
    pub minimized_hash: Option<String>,
}

pub fn content_hash(f: &Formula) -> String {
    hex::encode(Sha256::digest(serialize_dimacs(f).as_bytes()))
}

/// In-memory corpus; entries keep insertion order and are unique by hash.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub entries: Vec<IndexEntry>,
    files: Vec<(String, String)>,
}

impl Corpus {
    pub fn new() -> Self {
        Corpus::default()
    }

    fn add_file(&mut self, f: &Formula) -> String {
        let hash = content_hash(f);
        if !self.files.iter().any(|(h, _)| *h == hash) {
            self.files.push((hash.clone(), serialize_dimacs(f)));
        }
        hash
    }

    /// Adds a mismatch and, optionally, its minimized form. Returns false if
    /// an entry with the same hash was already present.
    pub fn add(&mut self, mm: &Mismatch, minimized: Option<&Mismatch>) -> bool {
        let hash = content_hash(&mm.formula);
        if self.entries.iter().any(|e| e.hash == hash) {
            return false;
        }
        self.add_file(&mm.formula);
        let minimized_hash = minimized.map(|m| self.add_file(&m.formula));
        self.entries.push(IndexEntry {
            hash,
            seed: mm.origin.map(|c| c.seed),
            cfg: mm.origin.as_ref().map(CfgDoc::from),
            gubin: mm.gubin_verdict.as_str().to_string(),
            oracle: mm.oracle_verdict.as_str().to_string(),
            minimized_hash,
        });
        true
    }

    pub fn index_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("index serializes") + "\n"
    }

    pub fn write(&self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        for (hash, text) in &self.files {
            fs::write(dir.join(format!("{hash}.cnf")), text)?;
        }
        fs::write(dir.join("index.json"), self.index_json())
    }

    pub fn read_index(dir: &Path) -> io::Result<Vec<IndexEntry>> {
        let text = fs::read_to_string(dir.join("index.json"))?;
        serde_json::from_str(&text).map_err(io::Error::other)
    }
}
