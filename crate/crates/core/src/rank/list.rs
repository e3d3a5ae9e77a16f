use std::collections::BTreeMap;
use std::io::{Read, Write};

use super::{Method, RankError};
use crate::handle::Handle;

#[derive(Debug, Clone, PartialEq)]
pub struct RankedEntry {
    pub node: Handle,
    pub score: f64,
    /// 1-based position.
    pub rank: usize,
}

/// Nodes ordered by score descending, ties broken by node id ascending.
/// Ranks run 1..=N without gaps, even across ties.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedList {
    method: Method,
    entries: Vec<RankedEntry>,
}

impl RankedList {
    pub fn from_scores(method: Method, scores: impl IntoIterator<Item = (Handle, f64)>) -> Self {
        let mut pairs: Vec<(Handle, f64)> = scores.into_iter().collect();
        pairs.sort_by(|(na, sa), (nb, sb)| sb.total_cmp(sa).then_with(|| na.cmp(nb)));
        let entries = pairs
            .into_iter()
            .enumerate()
            .map(|(i, (node, score))| RankedEntry {
                node,
                score,
                rank: i + 1,
            })
            .collect();
        RankedList { method, entries }
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn entries(&self) -> &[RankedEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Handle> {
        self.entries.iter().map(|e| &e.node)
    }

    pub fn score_of(&self, node: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.node.as_str() == node)
            .map(|e| e.score)
    }

    /// Writes `rank,node,score,method` rows in rank order, scores with 12
    /// significant digits.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), RankError> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| RankError::Io(std::io::Error::other(e.to_string()));
        w.write_record(["rank", "node", "score", "method"])
            .map_err(io)?;
        for e in &self.entries {
            let rank = e.rank.to_string();
            let score = format_score(e.score);
            w.write_record([
                rank.as_str(),
                e.node.as_str(),
                score.as_str(),
                self.method.as_str(),
            ])
            .map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a ranking CSV. A header-only file yields an empty list whose
    /// method is `fallback`.
    pub fn read_csv<R: Read>(input: R, fallback: Method) -> Result<Self, RankError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(input);
        let mut method = None;
        let mut entries = Vec::new();
        for (idx, record) in reader.records().enumerate() {
            let record = record.map_err(|e| RankError::Format {
                line: e.position().map_or(0, |p| p.line()),
                reason: e.to_string(),
            })?;
            let line = record.position().map_or(idx as u64 + 1, |p| p.line());
            let bad = |reason: String| RankError::Format { line, reason };
            if idx == 0 {
                if record.iter().collect::<Vec<_>>() != ["rank", "node", "score", "method"] {
                    return Err(bad("expected header \"rank,node,score,method\"".into()));
                }
                continue;
            }
            if record.len() != 4 {
                return Err(bad(format!("expected 4 fields, found {}", record.len())));
            }
            let rank: usize = record[0]
                .parse()
                .map_err(|e| bad(format!("rank {:?}: {e}", &record[0])))?;
            if rank != entries.len() + 1 {
                return Err(bad(format!(
                    "expected rank {}, found {rank}",
                    entries.len() + 1
                )));
            }
            let node = Handle::new(&record[1]).map_err(|e| bad(e.to_string()))?;
            let score: f64 = record[2]
                .parse()
                .map_err(|e| bad(format!("score {:?}: {e}", &record[2])))?;
            if !score.is_finite() {
                return Err(bad(format!("score {:?} is not finite", &record[2])));
            }
            let row_method: Method = record[3].parse().map_err(bad)?;
            if *method.get_or_insert(row_method) != row_method {
                return Err(bad("mixed methods in one ranking".into()));
            }
            entries.push(RankedEntry { node, score, rank });
        }
        Ok(RankedList {
            method: method.unwrap_or(fallback),
            entries,
        })
    }
}

/// The first `min(k, N)` entries, ranks unchanged.
///
/// # Panics
///
/// If `k == 0`.
pub fn top_k(list: &RankedList, k: usize) -> RankedList {
    assert!(k >= 1, "top_k needs k >= 1");
    RankedList {
        method: list.method,
        entries: list.entries.iter().take(k).cloned().collect(),
    }
}

/// Scores every node by its share of all mentions times its liquid score.
pub fn product_rank(mentions: &RankedList, liquid: &RankedList) -> Result<RankedList, RankError> {
    let m: BTreeMap<&Handle, f64> = mentions
        .entries
        .iter()
        .map(|e| (&e.node, e.score))
        .collect();
    let l: BTreeMap<&Handle, f64> = liquid.entries.iter().map(|e| (&e.node, e.score)).collect();
    let only_in_mentions: Vec<String> = m
        .keys()
        .filter(|n| !l.contains_key(*n))
        .map(|n| n.to_string())
        .collect();
    let only_in_liquid: Vec<String> = l
        .keys()
        .filter(|n| !m.contains_key(*n))
        .map(|n| n.to_string())
        .collect();
    if !only_in_mentions.is_empty() || !only_in_liquid.is_empty() {
        return Err(RankError::NodeSetMismatch {
            only_in_mentions,
            only_in_liquid,
        });
    }
    let total: f64 = m.values().sum();
    let scores = m.iter().map(|(node, &count)| {
        let share = if total > 0.0 { count / total } else { 0.0 };
        ((*node).clone(), share * l[node])
    });
    Ok(RankedList::from_scores(Method::Product, scores))
}

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros dropped,
/// exponent form outside `[1e-4, 1e12)`.
pub fn format_score(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    } else {
        let decimals = (11 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_owned()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
