use std::time::Instant;

use liquidrank::ingest::write_interactions;
use liquidrank::{build_graph, parse_tweets, to_interactions, ParseMode};

use super::{elapsed_ms, write_file, INTERACTIONS_FILE};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::manifest::{self, RunManifest};

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let input = cfg
        .input
        .as_deref()
        .ok_or_else(|| CliError::Invalid("ingest needs --input <tweets file>".into()))?;
    let mut run = RunManifest::new(cfg);

    let start = Instant::now();
    let bytes = std::fs::read(input).map_err(|e| CliError::io(input, e))?;
    run.input_digest = Some(manifest::digest(&bytes));
    let mode = if cfg.strict {
        ParseMode::Strict
    } else {
        ParseMode::Lenient
    };
    let parsed = parse_tweets(bytes.as_slice(), cfg.tweet_format(input), mode)
        .map_err(|e| CliError::ingest(input, e))?;
    if let Some(first) = parsed.malformed.first() {
        eprintln!(
            "warning: {}: skipped {} malformed line(s); first at line {}: {}",
            input.display(),
            parsed.malformed.len(),
            first.line,
            first.reason
        );
    }
    run.timing_ms.insert("parse".into(), elapsed_ms(start));

    let start = Instant::now();
    let records = to_interactions(&parsed.tweets);
    let graph = build_graph(&records, cfg.window);
    run.timing_ms.insert("extract".into(), elapsed_ms(start));

    let start = Instant::now();
    let mut buf = Vec::new();
    write_interactions(&mut buf, &records).map_err(|e| CliError::Io(e.to_string()))?;
    let out = cfg.out_path(INTERACTIONS_FILE);
    write_file(&out, &buf)?;
    run.timing_ms.insert("write".into(), elapsed_ms(start));

    run.record_count = records.len();
    run.node_count = graph.node_count();
    run.edge_count = graph.edge_count();
    run.malformed_lines = Some(parsed.malformed.len());
    run.outputs.insert("interactions".into(), out.clone());
    manifest::record(&cfg.out_dir, "ingest", run)?;

    println!(
        "{} tweets -> {} interactions ({} nodes, {} edges in window) -> {}",
        parsed.tweets.len(),
        records.len(),
        graph.node_count(),
        graph.edge_count(),
        out.display()
    );
    Ok(())
}
