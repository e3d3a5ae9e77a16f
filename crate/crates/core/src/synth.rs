//! Seeded synthetic inputs for benchmarks and scale tests.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{RatingGraph, TimeWindow};
use crate::handle::Handle;
use crate::ingest::TweetRecord;

const BASE_TIMESTAMP: u64 = 1_617_235_200; // 2021-04-01T00:00:00Z
const SPAN_SECONDS: u64 = 30 * 24 * 3600;
const WORDS: [&str; 12] = [
    "bitcoin", "eth", "market", "update", "breaking", "halving", "defi", "nft", "listing", "rally",
    "dip", "thread",
];

fn name(prefix: &str, i: usize) -> Handle {
    Handle::new(&format!("{prefix}{i:05}")).expect("generated handle is valid")
}

/// `n_tweets` posts spread over `n_authors` feed channels, each mentioning up
/// to three channels drawn with a heavy head from a wider pool (the feeds
/// plus ten times as many outside channels).
pub fn synthetic_tweets(seed: u64, n_tweets: usize, n_authors: usize) -> Vec<TweetRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let authors: Vec<Handle> = (0..n_authors).map(|i| name("feed", i)).collect();
    let pool: Vec<Handle> = authors
        .iter()
        .cloned()
        .chain((0..n_authors * 10).map(|i| name("chan", i)))
        .collect();

    (0..n_tweets)
        .map(|_| {
            let author = authors[rng.random_range(0..authors.len())].clone();
            let mut text = String::new();
            for w in 0..rng.random_range(3..9) {
                if w > 0 {
                    text.push(' ');
                }
                text.push_str(WORDS[rng.random_range(0..WORDS.len())]);
            }
            for _ in 0..rng.random_range(0..4) {
                // squaring a uniform draw favours the front of the pool
                let u: f64 = rng.random();
                let target = &pool[((u * u) * pool.len() as f64) as usize];
                text.push_str(" @");
                text.push_str(target.as_str());
            }
            TweetRecord {
                author,
                text,
                timestamp: BASE_TIMESTAMP + rng.random_range(0..SPAN_SECONDS),
            }
        })
        .collect()
}

/// A graph on `n_nodes` nodes with exactly `n_edges` distinct random edges
/// `i -> j` (`i != j`), weights 1 to 5.
///
/// # Panics
///
/// If `n_edges` exceeds the `n_nodes * (n_nodes - 1)` possible edges.
pub fn random_graph(seed: u64, n_nodes: usize, n_edges: usize) -> RatingGraph {
    assert!(
        n_nodes >= 2 && n_edges <= n_nodes * (n_nodes - 1),
        "cannot place {n_edges} edges on {n_nodes} nodes"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes: Vec<Handle> = (0..n_nodes).map(|i| name("n", i)).collect();
    let mut seen = HashSet::with_capacity(n_edges);
    let mut edges = Vec::with_capacity(n_edges);
    while edges.len() < n_edges {
        let i = rng.random_range(0..n_nodes);
        let mut j = rng.random_range(0..n_nodes - 1);
        if j >= i {
            j += 1;
        }
        if seen.insert((i, j)) {
            edges.push((nodes[i].clone(), nodes[j].clone(), rng.random_range(1..=5)));
        }
    }
    RatingGraph::from_parts(nodes, edges, TimeWindow::unbounded()).expect("no self-loops drawn")
}
