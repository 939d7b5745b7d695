//! Result store: one JSON file per case under a directory named by the hash
//! of its id, plus an index rewritten atomically after each write.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use axialforge::algebra::Algebra;
use axialforge::analysis::FormKind;
use axialforge::cases::CaseId;
use axialforge::engine::{Budget, Verdict};
use axialforge::expected::CaseOutcome;
use axialforge::linalg::{QMatrix, SparseVec};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// A completed algebra as stored, enough to re-run the checks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StoredAlgebra {
    pub algebra: Algebra,
    pub axes: Vec<SparseVec>,
    pub form: Option<QMatrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunRecord {
    pub case: CaseId,
    /// Position in enumeration order; fixes report row order.
    pub order: usize,
    pub components: String,
    pub verdict: Verdict,
    pub dim: Option<usize>,
    pub m: Option<usize>,
    pub form: Option<FormKind>,
    pub primitive: Option<bool>,
    pub radical_quotient_dim: Option<usize>,
    pub wall_ms: u128,
    pub budget: Budget,
    pub expansions: usize,
    /// Relative to the store root.
    pub checkpoint: Option<String>,
    pub algebra: Option<StoredAlgebra>,
}

impl RunRecord {
    pub fn outcome(&self) -> CaseOutcome {
        CaseOutcome {
            group: self.case.group.clone(),
            axes: self.case.axes.clone(),
            shape: self.case.shape.clone(),
            components: self.components.clone(),
            verdict: self.verdict,
            dim: self.dim,
            m: self.m,
            form: self.form,
            primitive: self.primitive,
        }
    }
}

pub struct Store {
    root: PathBuf,
}

pub fn case_hash(id: &CaseId) -> String {
    hex::encode(&Sha256::digest(id.to_string().as_bytes())[..12])
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))?;
    Ok(())
}

impl Store {
    pub fn open(root: &Path) -> Result<Store> {
        fs::create_dir_all(root.join("cases")).with_context(|| format!("creating store {}", root.display()))?;
        Ok(Store { root: root.to_path_buf() })
    }

    fn case_dir(&self, id: &CaseId) -> PathBuf {
        self.root.join("cases").join(case_hash(id))
    }

    pub fn record_path(&self, id: &CaseId) -> PathBuf {
        self.case_dir(id).join("record.json")
    }

    pub fn get(&self, id: &CaseId) -> Result<Option<RunRecord>> {
        let p = self.record_path(id);
        if !p.exists() {
            return Ok(None);
        }
        let text = fs::read(&p).with_context(|| format!("reading {}", p.display()))?;
        Ok(Some(serde_json::from_slice(&text).with_context(|| format!("parsing {}", p.display()))?))
    }

    pub fn checkpoint(&self, id: &CaseId) -> Option<Vec<u8>> {
        fs::read(self.case_dir(id).join("checkpoint.json")).ok()
    }

    /// Writes a record and, for unfinished runs, its checkpoint.
    pub fn put(&self, mut rec: RunRecord, checkpoint: Option<&[u8]>) -> Result<()> {
        let dir = self.case_dir(&rec.case);
        fs::create_dir_all(&dir)?;
        let cp_path = dir.join("checkpoint.json");
        match checkpoint {
            Some(bytes) => {
                write_atomic(&cp_path, bytes)?;
                rec.checkpoint = Some(format!("cases/{}/checkpoint.json", case_hash(&rec.case)));
            }
            None => {
                let _ = fs::remove_file(&cp_path);
                rec.checkpoint = None;
            }
        }
        write_atomic(&dir.join("record.json"), &serde_json::to_vec_pretty(&rec)?)
    }

    /// Rewrites the index from the case directories.
    pub fn write_index(&self) -> Result<()> {
        let mut index: BTreeMap<String, String> = BTreeMap::new();
        for rec in self.all()? {
            index.insert(rec.case.to_string(), case_hash(&rec.case));
        }
        write_atomic(&self.root.join("index.json"), &serde_json::to_vec_pretty(&index)?)
    }

    /// Every record, in enumeration order.
    pub fn all(&self) -> Result<Vec<RunRecord>> {
        let mut out = Vec::new();
        let dir = self.root.join("cases");
        if !dir.exists() {
            return Ok(out);
        }
        let mut entries: Vec<_> = fs::read_dir(&dir)?.collect::<std::io::Result<_>>()?;
        entries.sort_by_key(|e| e.file_name());
        for e in entries {
            let p = e.path().join("record.json");
            if p.exists() {
                let text = fs::read(&p)?;
                out.push(
                    serde_json::from_slice::<RunRecord>(&text).with_context(|| format!("parsing {}", p.display()))?,
                );
            }
        }
        out.sort_by(|a, b| (a.order, &a.case).cmp(&(b.order, &b.case)));
        Ok(out)
    }
}
