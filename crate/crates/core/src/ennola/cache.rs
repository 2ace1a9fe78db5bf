//! On-disk cache of the Schur coefficients of `Ψ_n`, one JSON file per
//! `(k, n)`.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::MasterContext;
use crate::arith::{Poly, Rat};
use crate::error::{Error, Result};
use crate::partition::{MultiPartition, Partition};
use crate::symfunc::{Basis, SymFunc};

pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    mu: Vec<String>,
    poly: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    k: usize,
    n: usize,
    entries: Vec<Entry>,
}

/// Outcome of reading one cache file.
#[derive(Debug)]
pub enum CacheLoad {
    Hit(SymFunc),
    Missing,
    /// Present but unusable; the message says why.
    Stale(String),
}

#[derive(Clone, Debug)]
pub struct PsiCache {
    dir: PathBuf,
}

impl PsiCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        PsiCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, k: usize, n: usize) -> PathBuf {
        self.dir.join(format!("psi-k{k}-n{n}.json"))
    }

    /// Serializes `Ψ_n` (Schur basis) to the canonical byte form.
    pub fn encode(k: usize, n: usize, psi_n: &SymFunc) -> Result<String> {
        let entries = psi_n
            .terms()
            .map(|(mu, c)| {
                Ok(Entry {
                    mu: mu.components().iter().map(|p| p.to_string()).collect(),
                    poly: c.to_poly()?.to_json(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let file = CacheFile {
            version: CACHE_VERSION,
            k,
            n,
            entries,
        };
        let mut text = serde_json::to_string_pretty(&file).map_err(|e| Error::Format(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }

    fn decode(k: usize, n: usize, text: &str) -> std::result::Result<SymFunc, String> {
        let file: CacheFile = serde_json::from_str(text).map_err(|e| format!("unreadable: {e}"))?;
        if file.version != CACHE_VERSION {
            return Err(format!("version {} (expected {CACHE_VERSION})", file.version));
        }
        if file.k != k || file.n != n {
            return Err(format!("holds k={}, n={}", file.k, file.n));
        }
        let mut terms = Vec::with_capacity(file.entries.len());
        for e in file.entries {
            let parts = e
                .mu
                .iter()
                .map(|s| Partition::parse(s))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| e.to_string())?;
            let mu = MultiPartition::new(parts).map_err(|e| e.to_string())?;
            let p = Poly::from_json(&e.poly).map_err(|e| e.to_string())?;
            terms.push((mu, Rat::from_poly(p)));
        }
        SymFunc::from_terms(k, n, Basis::Schur, terms).map_err(|e| e.to_string())
    }

    pub fn load(&self, k: usize, n: usize) -> CacheLoad {
        let path = self.path(k, n);
        match fs::read_to_string(&path) {
            Ok(text) => match PsiCache::decode(k, n, &text) {
                Ok(f) => CacheLoad::Hit(f),
                Err(msg) => CacheLoad::Stale(format!("{}: {msg}", path.display())),
            },
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => CacheLoad::Missing,
            Err(e) => CacheLoad::Stale(format!("{}: {e}", path.display())),
        }
    }

    /// Writes `Ψ_1, …, Ψ_N` of `ctx`, atomically per file.
    pub fn store(&self, ctx: &MasterContext) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        for n in 1..=ctx.order() {
            let text = PsiCache::encode(ctx.k(), n, ctx.psi_schur(n))?;
            let path = self.path(ctx.k(), n);
            let tmp = path.with_extension("json.tmp");
            let mut f = fs::File::create(&tmp)?;
            f.write_all(text.as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, &path)?;
        }
        Ok(())
    }

    /// Removes cache files; all `k` when `k` is `None`. Returns the count.
    pub fn clear(&self, k: Option<usize>) -> Result<usize> {
        let entries = match fs::read_dir(&self.dir) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e.into()),
        };
        let prefix = k.map_or_else(|| "psi-k".to_string(), |k| format!("psi-k{k}-"));
        let mut removed = 0;
        for entry in entries {
            let entry = entry?;
            let name = entry.file_name();
            let name = name.to_string_lossy();
            if name.starts_with(&prefix) && name.ends_with(".json") {
                fs::remove_file(entry.path())?;
                removed += 1;
            }
        }
        Ok(removed)
    }

    /// Loads the context from the cache when every degree is present and
    /// current; otherwise computes and stores it. Warnings describe stale
    /// files that were ignored.
    pub fn context(&self, k: usize, order: usize) -> Result<(MasterContext, Vec<String>)> {
        let mut warnings = Vec::new();
        let mut pieces = Vec::with_capacity(order);
        for n in 1..=order {
            match self.load(k, n) {
                CacheLoad::Hit(f) => pieces.push(f),
                CacheLoad::Missing => break,
                CacheLoad::Stale(msg) => {
                    warnings.push(format!("ignoring cache file {msg}"));
                    break;
                }
            }
        }
        if pieces.len() == order {
            return Ok((MasterContext::from_psi_schur(k, order, pieces)?, warnings));
        }
        let ctx = MasterContext::build(k, order)?;
        self.store(&ctx)?;
        Ok((ctx, warnings))
    }
}
