//! `cache build|inspect|clear` over the holonomy cache directory.

use std::fs;
use std::path::{Path, PathBuf};

use drinfeld::holonomy::{cache_path, CacheStatus, HoloAlgebra, CACHE_ENV, CACHE_VERSION};

use crate::CliError;

pub const DEFAULT_DIR: &str = ".drinfeld-cache";

/// `$DRINFELD_CACHE_DIR`, else `.drinfeld-cache` in the working directory.
pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_DIR))
}

/// Loads or builds `U(T_n)` through `maxdeg`, warning on stderr when a stale
/// file had to be rebuilt.
pub fn algebra(n: usize, maxdeg: usize) -> Result<(HoloAlgebra, CacheStatus), CliError> {
    let dir = cache_dir();
    let (alg, status) = HoloAlgebra::load_or_build_status(n, maxdeg, Some(&dir)).map_err(CliError::from)?;
    if status == CacheStatus::Rebuilt {
        eprintln!(
            "warning: {} had a different version stamp; rebuilt with version {CACHE_VERSION}",
            cache_path(&dir, n, maxdeg).display()
        );
    }
    Ok((alg, status))
}

fn status_word(s: CacheStatus) -> &'static str {
    match s {
        CacheStatus::Uncached => "uncached",
        CacheStatus::Hit => "hit",
        CacheStatus::Built => "built",
        CacheStatus::Rebuilt => "rebuilt",
    }
}

fn dims_line(dims: &[usize]) -> String {
    dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

pub fn build(n: usize, degree: usize) -> Result<String, CliError> {
    let (alg, status) = algebra(n, degree)?;
    Ok(format!(
        "{} {} dims={}\n",
        status_word(status),
        cache_path(&cache_dir(), n, degree).display(),
        dims_line(&alg.dims())
    ))
}

fn cache_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    if !dir.exists() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| CliError::Resource(format!("{}: {e}", dir.display())))? {
        let path = entry.map_err(|e| CliError::Resource(e.to_string()))?.path();
        let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("");
        if name.starts_with("holonomy-") && name.ends_with(".txt") {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

/// One line per cache file: its parameters and whether it would be served.
pub fn inspect() -> Result<String, CliError> {
    let dir = cache_dir();
    let files = cache_files(&dir)?;
    let mut out = format!("{} ({} files)\n", dir.display(), files.len());
    for path in files {
        let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("?").to_string();
        let text = fs::read_to_string(&path).map_err(|e| CliError::Resource(format!("{}: {e}", path.display())))?;
        let line = match HoloAlgebra::from_cache_text(&text) {
            Ok(alg) => format!("{name} ok n={} maxdeg={} dims={}", alg.n(), alg.maxdeg(), dims_line(&alg.dims())),
            Err(e) => format!("{name} unusable: {e}"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

pub fn clear() -> Result<String, CliError> {
    let dir = cache_dir();
    let files = cache_files(&dir)?;
    for path in &files {
        fs::remove_file(path).map_err(|e| CliError::Resource(format!("{}: {e}", path.display())))?;
    }
    Ok(format!("removed {} files from {}\n", files.len(), dir.display()))
}
