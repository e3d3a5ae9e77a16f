//! Reputation ranking over mention graphs.
//!
//! Posts are parsed into mention events ([`ingest`]), aggregated into a
//! weighted directed graph over a time window ([`graph`]), ranked by raw
//! mention count, by the liquid rank fixed point, and by their product
//! ([`rank`]), and scored against graded relevance judgments ([`eval`]).
//!
//! ```
//! use liquidrank::{build_graph, liquid_rank, parse_tweets, to_interactions};
//! use liquidrank::{ParseMode, RankParams, TimeWindow, TweetFormat};
//!
//! let csv = "author,text,timestamp\na,hi @b,1\nb,@a @c,2\nc,@a,3\n";
//! let tweets = parse_tweets(csv.as_bytes(), TweetFormat::Csv, ParseMode::Strict).unwrap();
//! let graph = build_graph(&to_interactions(&tweets.tweets), TimeWindow::unbounded());
//! let state = liquid_rank(&graph, &RankParams::default(), None).unwrap();
//! assert!(state.converged);
//! ```

pub mod eval;
pub mod graph;
pub mod handle;
pub mod ingest;
pub mod rank;
pub mod synth;

use thiserror::Error;

pub use eval::{
    average_precision, evaluate, mean_reciprocal_rank, precision_at_k, reciprocal_rank, EvalError,
    JudgmentSet, MetricReport,
};
pub use graph::{build_graph, Edge, GraphError, RatingGraph, TimeWindow};
pub use handle::{Handle, InvalidHandle};
pub use ingest::{
    extract_mentions, parse_tweets, to_interactions, IngestError, InteractionRecord, ParseMode,
    ParsedTweets, TweetFormat, TweetRecord,
};
pub use rank::{
    liquid_rank, mention_rank, product_rank, to_ranked_list, top_k, Method, NormMode, RankError,
    RankParams, RankedEntry, RankedList, ReputationSnapshot, ReputationState,
};

/// Any error raised by this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Rank(#[from] RankError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
