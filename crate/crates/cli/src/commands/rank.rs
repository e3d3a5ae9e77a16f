use std::path::Path;
use std::time::Instant;

use liquidrank::ingest::read_interactions;
use liquidrank::{
    build_graph, liquid_rank, mention_rank, product_rank, to_ranked_list, Method, RankedList,
    RatingGraph, ReputationSnapshot,
};

use super::{elapsed_ms, ranking_file, write_file, GRAPH_FILE, INTERACTIONS_FILE, REPUTATION_FILE};
use crate::config::{MethodArg, RunConfig};
use crate::error::CliError;
use crate::manifest::{self, RunManifest};

fn wanted(method: MethodArg) -> &'static [Method] {
    match method {
        MethodArg::Mentions => &[Method::Mentions],
        MethodArg::Liquid => &[Method::Liquid],
        MethodArg::Product => &[Method::Product],
        MethodArg::All => &Method::ALL,
    }
}

fn load_graph(
    cfg: &RunConfig,
    snapshot: Option<&Path>,
    run: &mut RunManifest,
) -> Result<RatingGraph, CliError> {
    if let Some(path) = snapshot {
        let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
        run.input_digest = Some(manifest::digest(&bytes));
        let graph = RatingGraph::read_csv(bytes.as_slice(), cfg.window)
            .map_err(|e| CliError::graph(path, e))?;
        run.record_count = graph.total_weight() as usize;
        return Ok(graph);
    }
    let path = cfg
        .input
        .clone()
        .unwrap_or_else(|| cfg.out_path(INTERACTIONS_FILE));
    let bytes = std::fs::read(&path).map_err(|e| CliError::io(&path, e))?;
    run.input_digest = Some(manifest::digest(&bytes));
    let records = read_interactions(bytes.as_slice()).map_err(|e| CliError::ingest(&path, e))?;
    run.record_count = records.len();
    Ok(build_graph(&records, cfg.window))
}

pub fn run(cfg: &RunConfig, snapshot: Option<&Path>) -> Result<(), CliError> {
    let mut run = RunManifest::new(cfg);
    let start = Instant::now();
    let graph = load_graph(cfg, snapshot, &mut run)?;
    run.node_count = graph.node_count();
    run.edge_count = graph.edge_count();
    run.timing_ms.insert("load".into(), elapsed_ms(start));
    if graph.edge_count() == 0 {
        return Err(CliError::Domain(
            "graph is empty: no interactions inside the window".into(),
        ));
    }

    let methods = wanted(cfg.method);
    let need_mentions = methods
        .iter()
        .any(|m| matches!(m, Method::Mentions | Method::Product));
    let need_liquid = methods
        .iter()
        .any(|m| matches!(m, Method::Liquid | Method::Product));

    let start = Instant::now();
    let (mentions, liquid) = std::thread::scope(|s| {
        let mentions = s.spawn(|| need_mentions.then(|| mention_rank(&graph)).transpose());
        let liquid = need_liquid
            .then(|| liquid_rank(&graph, &cfg.params, None))
            .transpose();
        (mentions.join().expect("mention ranking thread"), liquid)
    });
    let mentions = mentions.map_err(CliError::rank)?;
    let state = liquid.map_err(CliError::rank)?;
    run.timing_ms.insert("rank".into(), elapsed_ms(start));

    let start = Instant::now();
    let graph_path = cfg.out_path(GRAPH_FILE);
    let mut buf = Vec::new();
    graph
        .write_csv(&mut buf)
        .map_err(|e| CliError::graph(&graph_path, e))?;
    write_file(&graph_path, &buf)?;
    run.outputs.insert("graph".into(), graph_path);

    let liquid_list = state.as_ref().map(to_ranked_list);
    if let Some(state) = &state {
        if !state.converged {
            eprintln!(
                "warning: liquid rank did not converge within {} iterations (final delta {:e}, epsilon {:e})",
                state.iterations, state.final_delta, cfg.params.epsilon
            );
        }
        let path = cfg.out_path(REPUTATION_FILE);
        let snap = ReputationSnapshot::new(graph.window(), cfg.params, state);
        write_file(&path, snap.to_json().as_bytes())?;
        run.outputs.insert("reputation".into(), path);
    }

    for &method in methods {
        let list: RankedList = match method {
            Method::Mentions => mentions.clone().expect("computed above"),
            Method::Liquid => liquid_list.clone().expect("computed above"),
            Method::Product => product_rank(
                mentions.as_ref().expect("computed above"),
                liquid_list.as_ref().expect("computed above"),
            )
            .map_err(CliError::rank)?,
        };
        let path = cfg.out_path(&ranking_file(method));
        let mut buf = Vec::new();
        list.write_csv(&mut buf).map_err(CliError::rank)?;
        write_file(&path, &buf)?;
        println!("{method}: {} nodes -> {}", list.len(), path.display());
        run.outputs.insert(method.to_string(), path);
    }
    run.timing_ms.insert("write".into(), elapsed_ms(start));

    if let Some(state) = &state {
        println!(
            "liquid rank: {} iterations, final delta {:e}, converged: {}",
            state.iterations, state.final_delta, state.converged
        );
    }
    manifest::record(&cfg.out_dir, "rank", run)
}
