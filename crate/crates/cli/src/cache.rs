//! On-disk store for per-prime class distributions.
//!
//! One JSON file per prime with a self-describing header. Files are written
//! to a temporary name in the same directory and renamed into place, so a
//! reader never sees a partial file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use charvar_core::count::DistributionCache;
use charvar_core::ClassDistribution;
use serde::{Deserialize, Serialize};

pub const FORMAT: &str = "charvar-class-distribution";
pub const FORMAT_VERSION: u32 = 1;
pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    format: String,
    version: u32,
    code_version: String,
    prime: u32,
    distribution: ClassDistribution,
}

#[derive(Debug, Clone)]
pub struct FileCache {
    dir: PathBuf,
}

impl FileCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        FileCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, prime: u32) -> PathBuf {
        self.dir.join(format!("classdist-p{prime}.json"))
    }

    fn write(&self, d: &ClassDistribution) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let body = CacheFile {
            format: FORMAT.into(),
            version: FORMAT_VERSION,
            code_version: CODE_VERSION.into(),
            prime: d.prime,
            distribution: d.clone(),
        };
        let json = serde_json::to_vec(&body).map_err(std::io::Error::other)?;
        let tmp = self.dir.join(format!(
            ".classdist-p{}.{}.tmp",
            d.prime,
            std::process::id()
        ));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&json)?;
        f.sync_all()?;
        drop(f);
        fs::rename(&tmp, self.path_for(d.prime)).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }
}

impl DistributionCache for FileCache {
    /// Anything unreadable, from another format or code version, or for a
    /// different prime counts as a miss.
    fn load(&self, prime: u32) -> Option<ClassDistribution> {
        let bytes = fs::read(self.path_for(prime)).ok()?;
        let file: CacheFile = serde_json::from_slice(&bytes).ok()?;
        let fresh = file.format == FORMAT
            && file.version == FORMAT_VERSION
            && file.code_version == CODE_VERSION
            && file.prime == prime
            && file.distribution.prime == prime;
        fresh.then_some(file.distribution)
    }

    fn store(&self, distribution: &ClassDistribution) {
        if let Err(e) = self.write(distribution) {
            eprintln!("warning: could not cache p={}: {e}", distribution.prime);
        }
    }
}
