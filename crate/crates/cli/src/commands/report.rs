use std::path::PathBuf;
use std::time::Instant;

use clap::ValueEnum;
use liquidrank::top_k;

use super::{elapsed_ms, ranking_paths, read_ranking, stem, write_file};
use crate::chart::{svg_chart, text_chart};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::manifest::{self, RunManifest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChartFormat {
    Txt,
    Svg,
}

pub fn run(cfg: &RunConfig, rankings: &[PathBuf], format: ChartFormat) -> Result<(), CliError> {
    let start = Instant::now();
    let mut run = RunManifest::new(cfg);
    for path in ranking_paths(cfg, rankings)? {
        let list = read_ranking(&path)?;
        let shown = top_k(&list, cfg.k);
        let name = stem(&path);
        let (body, ext) = match format {
            ChartFormat::Txt => (text_chart(&name, &shown, list.len()), "txt"),
            ChartFormat::Svg => (svg_chart(&name, &shown, list.len()), "svg"),
        };
        let out = cfg.out_path(&format!("chart_{name}.{ext}"));
        write_file(&out, body.as_bytes())?;
        println!("{} -> {}", path.display(), out.display());
        run.record_count += list.len();
        run.outputs.insert(name, out);
    }
    run.timing_ms.insert("report".into(), elapsed_ms(start));
    manifest::record(&cfg.out_dir, "report", run)
}
