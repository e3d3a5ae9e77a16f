//! Ranking quality against graded relevance judgments.
//!
//! Grades run 0 to 2. A node is relevant when its grade reaches the set's
//! threshold (2 unless overridden); unjudged nodes are irrelevant. Every
//! metric here depends only on the ranking's relevance pattern, so the
//! pattern-level functions carry the arithmetic and the list-level ones
//! just build the pattern.

use std::collections::BTreeMap;
use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::handle::Handle;
use crate::rank::{Method, RankedList};

pub const MAX_GRADE: u8 = 2;
pub const DEFAULT_RELEVANCE_THRESHOLD: u8 = 2;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("ranking has no entries")]
    EmptyRanking,
    #[error("no rankings given")]
    EmptyInput,
    #[error("cutoff k must be at least 1")]
    InvalidCutoff,
    #[error("grade {grade} for {node:?} is outside 0..=2")]
    InvalidGrade { node: String, grade: i64 },
    #[error("duplicate judgment for {node:?} on line {line}")]
    DuplicateJudgment { node: String, line: u64 },
    #[error("line {line}: {reason}")]
    Format { line: u64, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JudgmentSet {
    grades: BTreeMap<Handle, u8>,
    relevance_threshold: u8,
}

impl JudgmentSet {
    /// Fails on grades above 2 or on a node judged twice.
    pub fn new(grades: impl IntoIterator<Item = (Handle, u8)>) -> Result<Self, EvalError> {
        let mut map = BTreeMap::new();
        for (i, (node, grade)) in grades.into_iter().enumerate() {
            if grade > MAX_GRADE {
                return Err(EvalError::InvalidGrade {
                    node: node.into_string(),
                    grade: grade.into(),
                });
            }
            if map.contains_key(&node) {
                return Err(EvalError::DuplicateJudgment {
                    node: node.into_string(),
                    line: i as u64 + 1,
                });
            }
            map.insert(node, grade);
        }
        Ok(JudgmentSet {
            grades: map,
            relevance_threshold: DEFAULT_RELEVANCE_THRESHOLD,
        })
    }

    pub fn with_threshold(mut self, threshold: u8) -> Self {
        self.relevance_threshold = threshold;
        self
    }

    pub fn relevance_threshold(&self) -> u8 {
        self.relevance_threshold
    }

    pub fn grade(&self, node: &str) -> Option<u8> {
        self.grades.get(node).copied()
    }

    pub fn is_relevant(&self, node: &str) -> bool {
        self.grade(node)
            .is_some_and(|g| g >= self.relevance_threshold)
    }

    pub fn relevant_total(&self) -> usize {
        self.grades
            .values()
            .filter(|&&g| g >= self.relevance_threshold)
            .count()
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    /// Reads a `node,grade` CSV. Duplicate nodes are an error.
    pub fn read_csv<R: Read>(input: R) -> Result<Self, EvalError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(input);
        let mut grades: BTreeMap<Handle, u8> = BTreeMap::new();
        for (idx, record) in reader.records().enumerate() {
            let record = record.map_err(|e| EvalError::Format {
                line: e.position().map_or(0, |p| p.line()),
                reason: e.to_string(),
            })?;
            let line = record.position().map_or(idx as u64 + 1, |p| p.line());
            let bad = |reason: String| EvalError::Format { line, reason };
            if idx == 0 {
                if record.iter().collect::<Vec<_>>() != ["node", "grade"] {
                    return Err(bad("expected header \"node,grade\"".into()));
                }
                continue;
            }
            if record.len() != 2 {
                return Err(bad(format!("expected 2 fields, found {}", record.len())));
            }
            let node = Handle::new(&record[0]).map_err(|e| bad(e.to_string()))?;
            let grade: i64 = record[1]
                .trim()
                .parse()
                .map_err(|e| bad(format!("grade {:?}: {e}", &record[1])))?;
            if !(0..=i64::from(MAX_GRADE)).contains(&grade) {
                return Err(EvalError::InvalidGrade {
                    node: node.into_string(),
                    grade,
                });
            }
            if grades.contains_key(&node) {
                return Err(EvalError::DuplicateJudgment {
                    node: node.into_string(),
                    line,
                });
            }
            grades.insert(node, grade as u8);
        }
        Ok(JudgmentSet {
            grades,
            relevance_threshold: DEFAULT_RELEVANCE_THRESHOLD,
        })
    }
}

/// Relevance of each entry, in rank order.
pub fn relevance_pattern(list: &RankedList, judgments: &JudgmentSet) -> Vec<bool> {
    list.nodes()
        .map(|n| judgments.is_relevant(n.as_str()))
        .collect()
}

/// Fraction of the first `min(k, N)` entries that are relevant.
pub fn pattern_precision(pattern: &[bool], k: usize) -> f64 {
    let cut = k.min(pattern.len());
    if cut == 0 {
        return 0.0;
    }
    pattern[..cut].iter().filter(|&&r| r).count() as f64 / cut as f64
}

/// Mean of precision@r over the relevant ranks r within the cutoff,
/// normalized by the number of relevant entries inside the cutoff.
pub fn pattern_average_precision(pattern: &[bool], k: usize) -> f64 {
    let mut hits = 0usize;
    let mut sum = 0.0;
    for (i, _) in pattern.iter().take(k).enumerate().filter(|(_, &r)| r) {
        hits += 1;
        sum += hits as f64 / (i + 1) as f64;
    }
    if hits == 0 {
        0.0
    } else {
        sum / hits as f64
    }
}

pub fn pattern_reciprocal_rank(pattern: &[bool]) -> f64 {
    pattern
        .iter()
        .position(|&r| r)
        .map_or(0.0, |i| 1.0 / (i + 1) as f64)
}

fn checked(list: &RankedList, k: usize) -> Result<(), EvalError> {
    if k == 0 {
        return Err(EvalError::InvalidCutoff);
    }
    if list.is_empty() {
        return Err(EvalError::EmptyRanking);
    }
    Ok(())
}

pub fn precision_at_k(
    list: &RankedList,
    judgments: &JudgmentSet,
    k: usize,
) -> Result<f64, EvalError> {
    checked(list, k)?;
    Ok(pattern_precision(&relevance_pattern(list, judgments), k))
}

pub fn average_precision(
    list: &RankedList,
    judgments: &JudgmentSet,
    k: usize,
) -> Result<f64, EvalError> {
    checked(list, k)?;
    Ok(pattern_average_precision(
        &relevance_pattern(list, judgments),
        k,
    ))
}

/// `1/r` for the first relevant rank `r` anywhere in the list, 0 if none.
pub fn reciprocal_rank(list: &RankedList, judgments: &JudgmentSet) -> Result<f64, EvalError> {
    checked(list, 1)?;
    Ok(pattern_reciprocal_rank(&relevance_pattern(list, judgments)))
}

pub fn mean_reciprocal_rank(
    lists: &[RankedList],
    judgments: &JudgmentSet,
) -> Result<f64, EvalError> {
    if lists.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    let mut sum = 0.0;
    for list in lists {
        sum += reciprocal_rank(list, judgments)?;
    }
    Ok(sum / lists.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub method: Method,
    pub k: usize,
    pub precision: f64,
    pub average_precision: f64,
    pub reciprocal_rank: f64,
    pub relevant_found: usize,
    pub relevant_total: usize,
}

pub fn evaluate(
    list: &RankedList,
    judgments: &JudgmentSet,
    k: usize,
) -> Result<MetricReport, EvalError> {
    checked(list, k)?;
    let pattern = relevance_pattern(list, judgments);
    Ok(MetricReport {
        method: list.method(),
        k,
        precision: pattern_precision(&pattern, k),
        average_precision: pattern_average_precision(&pattern, k),
        reciprocal_rank: pattern_reciprocal_rank(&pattern),
        relevant_found: pattern.iter().take(k).filter(|&&r| r).count(),
        relevant_total: judgments.relevant_total(),
    })
}
