//! The weighted, directed rating graph.
//!
//! An edge `i -> j` with weight `w` means channel `i` mentioned channel `j`
//! `w` times inside the graph's time window. Nodes are kept in lexicographic
//! order and referred to by their index in that order.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::handle::Handle;
use crate::ingest::InteractionRecord;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("self-loop on {0:?}")]
    SelfLoop(String),
    #[error("edge {rater:?} -> {ratee:?} has zero weight")]
    ZeroWeight { rater: String, ratee: String },
    #[error("invalid time window [{start}, {end})")]
    InvalidWindow { start: u64, end: u64 },
    #[error("line {line}: {reason}")]
    Format { line: u64, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Half-open interval `[start, end)` of UTC epoch seconds. `end == None`
/// means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimeWindow {
    start: u64,
    end: Option<u64>,
}

impl TimeWindow {
    pub fn new(start: u64, end: Option<u64>) -> Result<Self, GraphError> {
        match end {
            Some(end) if end <= start => Err(GraphError::InvalidWindow { start, end }),
            _ => Ok(TimeWindow { start, end }),
        }
    }

    pub fn unbounded() -> Self {
        TimeWindow {
            start: 0,
            end: None,
        }
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn end(&self) -> Option<u64> {
        self.end
    }

    pub fn contains(&self, timestamp: u64) -> bool {
        timestamp >= self.start && self.end.is_none_or(|end| timestamp < end)
    }
}

impl Default for TimeWindow {
    fn default() -> Self {
        TimeWindow::unbounded()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub rater: usize,
    pub ratee: usize,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatingGraph {
    nodes: Vec<Handle>,
    /// Sorted by `(rater, ratee)`.
    edges: Vec<Edge>,
    window: TimeWindow,
    /// Inbound adjacency: edges into node `j` are
    /// `inbound[in_offsets[j]..in_offsets[j + 1]]`, sorted by rater.
    in_offsets: Vec<usize>,
    inbound: Vec<(usize, u64)>,
}

impl RatingGraph {
    fn from_counts(
        extra_nodes: BTreeSet<Handle>,
        counts: BTreeMap<(Handle, Handle), u64>,
        window: TimeWindow,
    ) -> Self {
        let mut node_set = extra_nodes;
        for (rater, ratee) in counts.keys() {
            node_set.insert(rater.clone());
            node_set.insert(ratee.clone());
        }
        let nodes: Vec<Handle> = node_set.into_iter().collect();
        let index = |h: &Handle| nodes.binary_search(h).expect("node collected above");

        // BTreeMap order on (rater, ratee) handles is the same as index order.
        let edges: Vec<Edge> = counts
            .iter()
            .map(|((rater, ratee), &weight)| Edge {
                rater: index(rater),
                ratee: index(ratee),
                weight,
            })
            .collect();

        let mut in_offsets = vec![0usize; nodes.len() + 1];
        for e in &edges {
            in_offsets[e.ratee + 1] += 1;
        }
        for j in 0..nodes.len() {
            in_offsets[j + 1] += in_offsets[j];
        }
        let mut cursor = in_offsets.clone();
        let mut inbound = vec![(0usize, 0u64); edges.len()];
        for e in &edges {
            inbound[cursor[e.ratee]] = (e.rater, e.weight);
            cursor[e.ratee] += 1;
        }

        RatingGraph {
            nodes,
            edges,
            window,
            in_offsets,
            inbound,
        }
    }

    /// Builds a graph from pre-aggregated counts plus any isolated nodes.
    /// Repeated `(rater, ratee)` pairs are summed.
    pub fn from_parts(
        nodes: impl IntoIterator<Item = Handle>,
        edges: impl IntoIterator<Item = (Handle, Handle, u64)>,
        window: TimeWindow,
    ) -> Result<Self, GraphError> {
        let mut counts: BTreeMap<(Handle, Handle), u64> = BTreeMap::new();
        for (rater, ratee, weight) in edges {
            if rater == ratee {
                return Err(GraphError::SelfLoop(rater.into_string()));
            }
            if weight == 0 {
                return Err(GraphError::ZeroWeight {
                    rater: rater.into_string(),
                    ratee: ratee.into_string(),
                });
            }
            *counts.entry((rater, ratee)).or_default() += weight;
        }
        Ok(Self::from_counts(
            nodes.into_iter().collect(),
            counts,
            window,
        ))
    }

    pub fn nodes(&self) -> &[Handle] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn window(&self) -> TimeWindow {
        self.window
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, node: &str) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.as_str().cmp(node)).ok()
    }

    /// `V_ij`, zero when there is no edge.
    pub fn weight(&self, rater: usize, ratee: usize) -> u64 {
        self.inbound_of(ratee)
            .binary_search_by_key(&rater, |&(i, _)| i)
            .map_or(0, |pos| self.inbound_of(ratee)[pos].1)
    }

    /// `(rater index, weight)` pairs for the edges into `ratee`, sorted by rater.
    pub fn inbound_of(&self, ratee: usize) -> &[(usize, u64)] {
        &self.inbound[self.in_offsets[ratee]..self.in_offsets[ratee + 1]]
    }

    /// Total mentions received by `node`.
    pub fn in_weight(&self, node: &str) -> Result<u64, GraphError> {
        let j = self
            .index_of(node)
            .ok_or_else(|| GraphError::UnknownNode(node.to_owned()))?;
        Ok(self.in_weight_at(j))
    }

    pub fn in_weight_at(&self, ratee: usize) -> u64 {
        self.inbound_of(ratee).iter().map(|&(_, w)| w).sum()
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// Writes the `rater,ratee,weight` snapshot, rows sorted by `(rater, ratee)`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), GraphError> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| GraphError::Io(std::io::Error::other(e.to_string()));
        w.write_record(["rater", "ratee", "weight"]).map_err(io)?;
        for e in &self.edges {
            let weight = e.weight.to_string();
            w.write_record([
                self.nodes[e.rater].as_str(),
                self.nodes[e.ratee].as_str(),
                weight.as_str(),
            ])
            .map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Loads a snapshot written by [`RatingGraph::write_csv`]. The window is
    /// not stored in the file and is taken from the caller.
    pub fn read_csv<R: Read>(input: R, window: TimeWindow) -> Result<Self, GraphError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(input);
        let mut edges = Vec::new();
        for (idx, record) in reader.records().enumerate() {
            let record = record.map_err(|e| GraphError::Format {
                line: e.position().map_or(0, |p| p.line()),
                reason: e.to_string(),
            })?;
            let line = record.position().map_or(idx as u64 + 1, |p| p.line());
            let bad = |reason: String| GraphError::Format { line, reason };
            if idx == 0 {
                if record.iter().collect::<Vec<_>>() != ["rater", "ratee", "weight"] {
                    return Err(bad("expected header \"rater,ratee,weight\"".into()));
                }
                continue;
            }
            if record.len() != 3 {
                return Err(bad(format!("expected 3 fields, found {}", record.len())));
            }
            let rater = Handle::new(&record[0]).map_err(|e| bad(e.to_string()))?;
            let ratee = Handle::new(&record[1]).map_err(|e| bad(e.to_string()))?;
            let weight = record[2]
                .parse::<u64>()
                .map_err(|e| bad(format!("weight {:?}: {e}", &record[2])))?;
            if rater == ratee || weight == 0 {
                return Err(bad("self-loop or zero weight".into()));
            }
            edges.push((rater, ratee, weight));
        }
        Self::from_parts([], edges, window)
    }
}

/// Aggregates the records falling inside `window` into mention counts.
pub fn build_graph(records: &[InteractionRecord], window: TimeWindow) -> RatingGraph {
    let mut counts: BTreeMap<(Handle, Handle), u64> = BTreeMap::new();
    for r in records.iter().filter(|r| window.contains(r.timestamp())) {
        *counts
            .entry((r.rater().clone(), r.ratee().clone()))
            .or_default() += 1;
    }
    RatingGraph::from_counts(BTreeSet::new(), counts, window)
}
