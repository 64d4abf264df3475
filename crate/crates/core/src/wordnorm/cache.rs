//! On-disk norm tables.
//!
//! Layout: magic `CNT1`, the 32-byte key, a u32 element count, then one
//! little-endian u32 per element (`u32::MAX` for an infinite norm), then a
//! SHA-256 of everything before it.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use super::norm::NormTable;
use super::store::GroupStore;
use crate::chevmat::GroupMat;
use crate::rootdata::golden_hash;

const MAGIC: &[u8; 4] = b"CNT1";
const INFINITE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CacheError {
    #[error("malformed norm cache: {0}")]
    Malformed(&'static str),
    #[error("cache key does not match")]
    KeyMismatch,
    #[error("cache has {got} entries, group has {expected}")]
    SizeMismatch { expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormCache {
    pub key: [u8; 32],
    pub norms: Vec<Option<u32>>,
}

/// Key of the table for `T` in `G(model, ring)`; includes the sign-table hash.
pub fn cache_key(ring_spec: &str, model: &str, t: &[GroupMat]) -> [u8; 32] {
    let mut h = Sha256::new();
    for part in [ring_spec.as_bytes(), model.as_bytes(), golden_hash().as_bytes()] {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part);
    }
    for g in t {
        let e = g.encode();
        h.update((e.len() as u64).to_le_bytes());
        h.update(&e);
    }
    h.finalize().into()
}

impl NormCache {
    pub fn from_table(key: [u8; 32], store: &GroupStore, table: &NormTable) -> NormCache {
        NormCache { key, norms: (0..store.len() as u32).map(|e| table.norm(store, e)).collect() }
    }

    /// Rebuild the class-level table; fails if the cache does not fit `store`.
    pub fn to_table(&self, store: &GroupStore, base: Vec<u32>) -> Result<NormTable, CacheError> {
        if self.norms.len() != store.len() {
            return Err(CacheError::SizeMismatch { expected: store.len(), got: self.norms.len() });
        }
        let cl = store.classes();
        let class_norm: Vec<Option<u32>> = (0..cl.len()).map(|c| self.norms[cl.rep(c) as usize]).collect();
        for (e, n) in self.norms.iter().enumerate() {
            if class_norm[cl.class_of[e] as usize] != *n {
                return Err(CacheError::Malformed("norms are not constant on classes"));
            }
        }
        let diameter =
            if class_norm.iter().all(Option::is_some) { class_norm.iter().flatten().max().copied() } else { None };
        Ok(NormTable { base, class_norm, diameter })
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(44 + 4 * self.norms.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&self.key);
        out.extend_from_slice(&(self.norms.len() as u32).to_le_bytes());
        for n in &self.norms {
            out.extend_from_slice(&n.unwrap_or(INFINITE).to_le_bytes());
        }
        let digest = Sha256::digest(&out);
        out.extend_from_slice(&digest);
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<NormCache, CacheError> {
        let body_len = bytes.len().checked_sub(32).ok_or(CacheError::Malformed("truncated"))?;
        let (body, digest) = bytes.split_at(body_len);
        let rest = body.strip_prefix(MAGIC).ok_or(CacheError::Malformed("missing magic"))?;
        if rest.len() < 36 {
            return Err(CacheError::Malformed("truncated"));
        }
        let key: [u8; 32] = rest[..32].try_into().expect("32 bytes");
        let n = u32::from_le_bytes(rest[32..36].try_into().expect("4 bytes")) as usize;
        let data = &rest[36..];
        if data.len() / 4 != n || data.len() % 4 != 0 {
            return Err(CacheError::Malformed("length does not match entry count"));
        }
        if Sha256::digest(body).as_slice() != digest {
            return Err(CacheError::Malformed("checksum mismatch"));
        }
        let norms = data
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().expect("4 bytes")))
            .map(|v| (v != INFINITE).then_some(v))
            .collect();
        Ok(NormCache { key, norms })
    }

    pub fn path(dir: &Path, key: &[u8; 32]) -> PathBuf {
        dir.join(format!("norm-{}.bin", hex::encode(key)))
    }

    pub fn save(&self, dir: &Path) -> io::Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let p = Self::path(dir, &self.key);
        let tmp = p.with_extension("tmp");
        fs::write(&tmp, self.encode())?;
        fs::rename(&tmp, &p)?;
        Ok(p)
    }

    /// `None` when absent or unreadable; a damaged file is treated as a miss.
    pub fn load(dir: &Path, key: &[u8; 32]) -> Option<NormCache> {
        let bytes = fs::read(Self::path(dir, key)).ok()?;
        NormCache::decode(&bytes).ok().filter(|c| &c.key == key)
    }
}
