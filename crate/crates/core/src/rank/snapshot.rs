use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{RankParams, ReputationState};
use crate::graph::TimeWindow;
use crate::handle::Handle;

/// On-disk record of one liquid rank run (`reputation.json`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReputationSnapshot {
    pub window: TimeWindow,
    pub params: RankParams,
    pub iterations: usize,
    pub final_delta: f64,
    pub converged: bool,
    /// Sorted by node.
    pub scores: BTreeMap<Handle, f64>,
}

impl ReputationSnapshot {
    pub fn new(window: TimeWindow, params: RankParams, state: &ReputationState) -> Self {
        ReputationSnapshot {
            window,
            params,
            iterations: state.iterations,
            final_delta: state.final_delta,
            converged: state.converged,
            scores: state.scores.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("snapshot serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
