use std::fmt::Write;
use std::path::PathBuf;
use std::time::Instant;

use liquidrank::{evaluate, mean_reciprocal_rank, JudgmentSet, MetricReport};

use super::{elapsed_ms, ranking_paths, read_ranking, stem, write_file, REPORT_FILE};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::manifest::{self, RunManifest};

pub fn run(cfg: &RunConfig, rankings: &[PathBuf], threshold: u8) -> Result<(), CliError> {
    let start = Instant::now();
    let judgments_path = cfg
        .judgments
        .as_deref()
        .ok_or_else(|| CliError::Invalid("evaluate needs --judgments <node,grade CSV>".into()))?;
    let bytes = std::fs::read(judgments_path).map_err(|e| CliError::io(judgments_path, e))?;
    let judgments = JudgmentSet::read_csv(bytes.as_slice())
        .map_err(|e| CliError::eval(Some(judgments_path), e))?
        .with_threshold(threshold);

    let mut run = RunManifest::new(cfg);
    run.input_digest = Some(manifest::digest(&bytes));
    run.record_count = judgments.len();

    let paths = ranking_paths(cfg, rankings)?;
    let mut lists = Vec::new();
    let mut reports: Vec<MetricReport> = Vec::new();
    for path in &paths {
        let list = read_ranking(path)?;
        reports
            .push(evaluate(&list, &judgments, cfg.k).map_err(|e| CliError::eval(Some(path), e))?);
        lists.push(list);
    }
    let mrr = mean_reciprocal_rank(&lists, &judgments).map_err(|e| CliError::eval(None, e))?;

    let out = cfg.out_path(REPORT_FILE);
    let mut text = serde_json::to_string_pretty(&reports).expect("reports serialize");
    text.push('\n');
    write_file(&out, text.as_bytes())?;
    run.outputs.insert("report".into(), out);
    run.timing_ms.insert("evaluate".into(), elapsed_ms(start));
    manifest::record(&cfg.out_dir, "evaluate", run)?;

    let names: Vec<String> = paths.iter().map(|p| stem(p)).collect();
    print!("{}", table(&names, &reports, mrr));
    Ok(())
}

fn table(names: &[String], reports: &[MetricReport], mrr: f64) -> String {
    let width = names.iter().map(String::len).max().unwrap_or(0).max(7);
    let mut out = String::new();
    writeln!(
        out,
        "{:<width$}  {:<8}  {:>4}  {:>9}  {:>9}  {:>9}  {:>11}",
        "ranking", "method", "k", "precision", "avg_prec", "recip_rank", "found/total"
    )
    .unwrap();
    for (name, r) in names.iter().zip(reports) {
        writeln!(
            out,
            "{:<width$}  {:<8}  {:>4}  {:>9.4}  {:>9.4}  {:>10.4}  {:>11}",
            name,
            r.method.as_str(),
            r.k,
            r.precision,
            r.average_precision,
            r.reciprocal_rank,
            format!("{}/{}", r.relevant_found, r.relevant_total)
        )
        .unwrap();
    }
    writeln!(
        out,
        "mean reciprocal rank over {} ranking(s): {mrr:.4}",
        reports.len()
    )
    .unwrap();
    out
}
