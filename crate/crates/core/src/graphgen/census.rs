//! JSON census export and the on-disk census cache.

use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::enumerate::enumerate_half_graphs;
use super::halfgraph::{Edge, HalfGraph, MarkedPoint, Vertex, ROOT};
use super::{Involution, SignMode};
use crate::error::{Error, Result};
use crate::exactmath::Rational;

pub const CENSUS_FORMAT_VERSION: u32 = 1;

/// One exported graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub root: usize,
    pub d0: u32,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub marked: Vec<MarkedPoint>,
    pub aut: u64,
    #[serde(rename = "D")]
    pub denominator: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contribution: Option<Rational>,
}

pub fn census_entry(g: &HalfGraph, contribution: Option<Rational>) -> CensusEntry {
    CensusEntry {
        root: ROOT,
        d0: g.d0,
        vertices: g.vertices.clone(),
        edges: g.edges.clone(),
        marked: g.marked.clone(),
        aut: g.automorphism_order(),
        denominator: g.combinatorial_denominator(),
        contribution,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CensusKey {
    pub rank: usize,
    pub d: u32,
    pub l: usize,
    pub phi: Involution,
    pub c: Involution,
    pub sign_mode: SignMode,
}

impl CensusKey {
    fn file_name(&self) -> String {
        let mode = match self.sign_mode {
            SignMode::AllSigns => "all",
            SignMode::PlusOnly => "plus",
        };
        format!(
            "census-v{CENSUS_FORMAT_VERSION}-M{}-d{}-l{}-{}-{}-{mode}.json",
            self.rank, self.d, self.l, self.phi, self.c
        )
    }

    fn build(&self) -> Vec<HalfGraph> {
        enumerate_half_graphs(self.rank, self.d, self.l, self.phi, self.c, self.sign_mode).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    /// No cache directory configured.
    Disabled,
    Hit,
    Built,
    /// A cache file existed but failed validation and was replaced.
    Rebuilt,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    key: CensusKey,
    checksum: String,
    graphs: Vec<HalfGraph>,
}

fn checksum(graphs: &[HalfGraph]) -> String {
    let bytes = serde_json::to_vec(graphs).expect("graphs serialize");
    hex::encode(Sha256::digest(bytes))
}

fn read_cache(path: &Path, key: &CensusKey) -> Option<Vec<HalfGraph>> {
    let text = fs::read(path).ok()?;
    let file: CacheFile = serde_json::from_slice(&text).ok()?;
    (file.version == CENSUS_FORMAT_VERSION && file.key == *key && file.checksum == checksum(&file.graphs))
        .then_some(file.graphs)
}

fn write_cache(path: &Path, key: &CensusKey, graphs: &[HalfGraph]) -> Result<()> {
    let cache_err = |e: std::io::Error| Error::Cache {
        path: path.to_path_buf(),
        reason: e.to_string(),
    };
    let file = CacheFile {
        version: CENSUS_FORMAT_VERSION,
        key: *key,
        checksum: checksum(graphs),
        graphs: graphs.to_vec(),
    };
    let bytes = serde_json::to_vec(&file).expect("cache file serializes");
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, bytes).map_err(cache_err)?;
    fs::rename(&tmp, path).map_err(cache_err)
}

/// Enumerate the census for `key`, going through `cache_dir` when given.
///
/// A cache file whose version, key or checksum does not match is treated
/// as corrupt and regenerated.
pub fn load_or_build_census(cache_dir: Option<&Path>, key: &CensusKey) -> Result<(Vec<HalfGraph>, CacheStatus)> {
    let Some(dir) = cache_dir else {
        return Ok((key.build(), CacheStatus::Disabled));
    };
    fs::create_dir_all(dir).map_err(|e| Error::Cache {
        path: dir.to_path_buf(),
        reason: e.to_string(),
    })?;
    let path: PathBuf = dir.join(key.file_name());
    let existed = match fs::metadata(&path) {
        Ok(_) => true,
        Err(e) if e.kind() == ErrorKind::NotFound => false,
        Err(e) => {
            return Err(Error::Cache {
                path,
                reason: e.to_string(),
            })
        }
    };
    if existed {
        if let Some(graphs) = read_cache(&path, key) {
            return Ok((graphs, CacheStatus::Hit));
        }
    }
    let graphs = key.build();
    write_cache(&path, key, &graphs)?;
    let status = if existed { CacheStatus::Rebuilt } else { CacheStatus::Built };
    Ok((graphs, status))
}
