//! Rankings over a [`RatingGraph`]: raw mention counts, the liquid rank
//! fixed point, and their product.

mod liquid;
mod list;
mod snapshot;

pub use liquid::liquid_rank;
pub use list::{format_score, product_rank, top_k, RankedEntry, RankedList};
pub use snapshot::ReputationSnapshot;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::RatingGraph;
use crate::handle::Handle;

#[derive(Debug, Error)]
pub enum RankError {
    #[error("graph is empty")]
    EmptyGraph,
    #[error("update vector is zero at iteration {iteration}: no rater holds reputation")]
    DegenerateUpdate { iteration: usize },
    #[error("invalid rank parameters: {0}")]
    InvalidParams(String),
    #[error("invalid initial reputation: {0}")]
    InvalidInitial(String),
    #[error("rankings cover different nodes (only in mentions: {only_in_mentions:?}, only in liquid: {only_in_liquid:?})")]
    NodeSetMismatch {
        only_in_mentions: Vec<String>,
        only_in_liquid: Vec<String>,
    },
    #[error("line {line}: {reason}")]
    Format { line: u64, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// How the score vector is rescaled after every cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormMode {
    /// Scores sum to one.
    #[default]
    L1,
    /// The largest score is one.
    Max,
}

impl NormMode {
    pub fn as_str(self) -> &'static str {
        match self {
            NormMode::L1 => "l1",
            NormMode::Max => "max",
        }
    }

    pub(crate) fn norm(self, v: &[f64]) -> f64 {
        match self {
            NormMode::L1 => v.iter().sum(),
            NormMode::Max => v.iter().copied().fold(0.0, f64::max),
        }
    }
}

impl FromStr for NormMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "l1" => Ok(NormMode::L1),
            "max" => Ok(NormMode::Max),
            other => Err(format!("unknown norm mode {other:?} (expected l1 or max)")),
        }
    }
}

impl fmt::Display for NormMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Convergence control for [`liquid_rank`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankParams {
    /// Stop once no score moves by this much or more in one cycle.
    pub epsilon: f64,
    pub max_iters: usize,
    /// Weight of the fresh update in each cycle; 1 disables damping.
    pub alpha: f64,
    pub norm_mode: NormMode,
}

impl Default for RankParams {
    fn default() -> Self {
        RankParams {
            epsilon: 1e-4,
            max_iters: 1000,
            alpha: 0.5,
            norm_mode: NormMode::L1,
        }
    }
}

impl RankParams {
    pub fn validate(&self) -> Result<(), RankError> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(RankError::InvalidParams(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if self.max_iters == 0 {
            return Err(RankError::InvalidParams(
                "max_iters must be at least 1".into(),
            ));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(RankError::InvalidParams(format!(
                "alpha must be in (0, 1], got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// Result of [`liquid_rank`]: the score vector and how the iteration ended.
#[derive(Debug, Clone, PartialEq)]
pub struct ReputationState {
    pub scores: BTreeMap<Handle, f64>,
    pub iterations: usize,
    /// Largest per-node change of the L1-normalized shares in the last cycle.
    pub final_delta: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mentions,
    Liquid,
    Product,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Mentions, Method::Liquid, Method::Product];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Mentions => "mentions",
            Method::Liquid => "liquid",
            Method::Product => "product",
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mentions" => Ok(Method::Mentions),
            "liquid" => Ok(Method::Liquid),
            "product" => Ok(Method::Product),
            other => Err(format!("unknown ranking method {other:?}")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ranks every node by the number of mentions it received.
pub fn mention_rank(graph: &RatingGraph) -> Result<RankedList, RankError> {
    if graph.node_count() == 0 {
        return Err(RankError::EmptyGraph);
    }
    let scores = graph
        .nodes()
        .iter()
        .enumerate()
        .map(|(j, node)| (node.clone(), graph.in_weight_at(j) as f64));
    Ok(RankedList::from_scores(Method::Mentions, scores))
}

/// Ranks the nodes of a liquid rank result.
pub fn to_ranked_list(state: &ReputationState) -> RankedList {
    RankedList::from_scores(
        Method::Liquid,
        state.scores.iter().map(|(n, &s)| (n.clone(), s)),
    )
}
