//! On-disk cache of full eta tables, one JSON file per (n, engine, version).
//!
//! Files from other versions have different names and are left alone.

use std::fs;
use std::path::{Path, PathBuf};

use classprod::class_algebra::{ClassProduct, Engine};
use serde::{Deserialize, Serialize};

pub const ARTIFACT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    n: usize,
    engine: Engine,
    products: Vec<ClassProduct>,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn path(&self, n: usize, engine: Engine) -> PathBuf {
        self.dir.join(format!("table-n{n}-{engine}-v{ARTIFACT_VERSION}.json"))
    }

    /// A cached table, or `None` if absent or unreadable.
    pub fn load(&self, n: usize, engine: Engine) -> Option<Vec<ClassProduct>> {
        let text = fs::read_to_string(self.path(n, engine)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.version == ARTIFACT_VERSION && entry.n == n && entry.engine == engine)
            .then_some(entry.products)
    }

    /// Writes atomically through a temporary file in the same directory.
    pub fn store(&self, n: usize, engine: Engine, products: &[ClassProduct]) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = Entry { version: ARTIFACT_VERSION, n, engine, products: products.to_vec() };
        let path = self.path(n, engine);
        let tmp = tmp_path(&path);
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(&tmp, &path)
    }
}

fn tmp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(format!(".{}.tmp", std::process::id()));
    path.with_file_name(name)
}
