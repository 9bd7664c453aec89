//! On-disk cache of enumerated subspace lists.
//!
//! One JSON file per `(n, k, field)`: a header describing the enumeration and
//! the RREF bases packed as base64 element indices, row-major, `k * n` per
//! subspace. A file whose header does not match the request is ignored and
//! rewritten.

use std::fs;
use std::path::{Path, PathBuf};

use base64::engine::general_purpose::STANDARD;
use base64::Engine as _;
use serde::{Deserialize, Serialize};

use super::{enumerate_subspaces, Subspace, SubspaceSet};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;

const FORMAT: &str = "quadgraph-subspaces/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Header {
    format: String,
    n: usize,
    k: usize,
    q: u32,
    p: u32,
    e: u32,
    modulus: Vec<u32>,
    count: usize,
    element_bytes: usize,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    #[serde(flatten)]
    header: Header,
    bases: String,
}

fn header_for(n: usize, k: usize, field: &FieldSpec, count: usize) -> Header {
    Header {
        format: FORMAT.into(),
        n,
        k,
        q: field.order(),
        p: field.characteristic(),
        e: field.degree(),
        modulus: field.modulus().to_vec(),
        count,
        element_bytes: if field.order() <= 256 { 1 } else { 2 },
    }
}

#[derive(Debug, Clone)]
pub struct SubspaceCache {
    dir: PathBuf,
}

impl SubspaceCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SubspaceCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, n: usize, k: usize, field: &FieldSpec) -> PathBuf {
        self.dir
            .join(format!("subspaces-n{n}-k{k}-q{}.json", field.order()))
    }

    /// The cached list, or `None` when absent or stale.
    pub fn load(&self, n: usize, k: usize, field: &FieldSpec) -> Result<Option<SubspaceSet>> {
        let path = self.path(n, k, field);
        let Ok(text) = fs::read_to_string(&path) else {
            return Ok(None);
        };
        let Ok(file) = serde_json::from_str::<CacheFile>(&text) else {
            return Ok(None);
        };
        if file.header != header_for(n, k, field, file.header.count) {
            return Ok(None);
        }
        let Ok(bytes) = STANDARD.decode(file.bases.as_bytes()) else {
            return Ok(None);
        };
        let width = file.header.element_bytes;
        let per = k * n;
        if bytes.len() != file.header.count * per * width {
            return Ok(None);
        }
        if per == 0 {
            let items = (0..file.header.count).map(|_| Subspace::zero(n)).collect();
            return Ok(SubspaceSet::new(items).ok());
        }
        let mut items = Vec::with_capacity(file.header.count);
        for chunk in bytes.chunks(per * width) {
            let mut data = Vec::with_capacity(per);
            for e in chunk.chunks(width) {
                let idx = if width == 1 {
                    e[0] as usize
                } else {
                    u16::from_le_bytes([e[0], e[1]]) as usize
                };
                match field.element(idx) {
                    Some(a) => data.push(a),
                    None => return Ok(None),
                }
            }
            let m = Matrix::from_flat(k, n, data)?;
            match Subspace::from_rref(field, m) {
                Ok(s) if s.dim() == k => items.push(s),
                _ => return Ok(None),
            }
        }
        Ok(SubspaceSet::new(items).ok())
    }

    pub fn store(&self, n: usize, k: usize, field: &FieldSpec, set: &SubspaceSet) -> Result<()> {
        let header = header_for(n, k, field, set.len());
        let mut bytes = Vec::with_capacity(set.len() * k * n * header.element_bytes);
        for s in set {
            for a in s.basis().as_slice() {
                if header.element_bytes == 1 {
                    bytes.push(a.index() as u8);
                } else {
                    bytes.extend_from_slice(&(a.index() as u16).to_le_bytes());
                }
            }
        }
        let file = CacheFile {
            header,
            bases: STANDARD.encode(bytes),
        };
        fs::create_dir_all(&self.dir).map_err(|e| Error::Cache(e.to_string()))?;
        let text = serde_json::to_string(&file).map_err(|e| Error::Cache(e.to_string()))?;
        fs::write(self.path(n, k, field), text).map_err(|e| Error::Cache(e.to_string()))
    }

    pub fn load_or_enumerate(&self, n: usize, k: usize, field: &FieldSpec) -> Result<SubspaceSet> {
        if let Some(set) = self.load(n, k, field)? {
            return Ok(set);
        }
        let set = enumerate_subspaces(n, k, field);
        self.store(n, k, field, &set)?;
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_invalidation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SubspaceCache::new(dir.path());
        let f = FieldSpec::prime(3).unwrap();
        let fresh = cache.load_or_enumerate(4, 2, &f).unwrap();
        assert_eq!(fresh.len(), 130);
        let loaded = cache.load(4, 2, &f).unwrap().expect("cache hit");
        assert_eq!(loaded.as_slice(), fresh.as_slice());

        // a different modulus for the same q must not reuse the file
        let f9a = FieldSpec::new(3, 2, Some(&[1, 0, 1])).unwrap();
        let f9b = FieldSpec::from_order(9).unwrap();
        cache.load_or_enumerate(2, 1, &f9a).unwrap();
        assert!(cache.load(2, 1, &f9b).unwrap().is_none());

        fs::write(cache.path(4, 2, &f), "{not json").unwrap();
        assert!(cache.load(4, 2, &f).unwrap().is_none());
        assert_eq!(cache.load_or_enumerate(4, 2, &f).unwrap().len(), 130);
    }
}
