pub mod evaluate;
pub mod ingest;
pub mod rank;
pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use liquidrank::{Method, RankedList};

use crate::config::RunConfig;
use crate::error::CliError;

pub const INTERACTIONS_FILE: &str = "interactions.csv";
pub const GRAPH_FILE: &str = "graph.csv";
pub const REPUTATION_FILE: &str = "reputation.json";
pub const REPORT_FILE: &str = "report.json";

pub fn ranking_file(method: Method) -> String {
    format!("ranking_{method}.csv")
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

pub(crate) fn elapsed_ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1000.0
}

/// Method implied by a `ranking_<method>.csv` file name, used when the
/// file has no rows to say so itself.
fn method_from_name(path: &Path) -> Method {
    path.file_stem()
        .and_then(|s| s.to_str())
        .and_then(|s| s.strip_prefix("ranking_"))
        .and_then(|m| m.parse().ok())
        .unwrap_or(Method::Mentions)
}

pub(crate) fn read_ranking(path: &Path) -> Result<RankedList, CliError> {
    let file = std::fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    RankedList::read_csv(std::io::BufReader::new(file), method_from_name(path))
        .map_err(|e| CliError::ranking_file(path, e))
}

/// The given ranking files, or every `ranking_<method>.csv` present in the
/// output directory.
pub(crate) fn ranking_paths(cfg: &RunConfig, given: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    if !given.is_empty() {
        return Ok(given.to_vec());
    }
    let found: Vec<PathBuf> = Method::ALL
        .iter()
        .map(|&m| cfg.out_path(&ranking_file(m)))
        .filter(|p| p.is_file())
        .collect();
    if found.is_empty() {
        return Err(CliError::Io(format!(
            "no ranking files given and none found in {}",
            cfg.out_dir.display()
        )));
    }
    Ok(found)
}

pub(crate) fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "ranking".into())
}
