//! Tweet parsing and mention extraction.
//!
//! Posts become [`InteractionRecord`]s, one per mention occurrence, with the
//! post author as rater and the mentioned channel as ratee.

mod formats;
mod mentions;

pub use formats::{
    parse_tweets, read_interactions, write_interactions, write_tweets, Malformed, ParseMode,
    ParsedTweets, TweetFormat,
};
pub use mentions::extract_mentions;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::handle::Handle;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: {reason}")]
    Format { line: u64, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One post: who wrote it, what it says, and when (UTC epoch seconds).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TweetRecord {
    pub author: Handle,
    pub text: String,
    pub timestamp: u64,
}

/// A single mention of `ratee` by `rater` at `timestamp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct InteractionRecord {
    rater: Handle,
    ratee: Handle,
    timestamp: u64,
}

impl InteractionRecord {
    /// Returns `None` for a self-mention.
    pub fn new(rater: Handle, ratee: Handle, timestamp: u64) -> Option<Self> {
        (rater != ratee).then_some(InteractionRecord {
            rater,
            ratee,
            timestamp,
        })
    }

    pub fn rater(&self) -> &Handle {
        &self.rater
    }

    pub fn ratee(&self) -> &Handle {
        &self.ratee
    }

    pub fn timestamp(&self) -> u64 {
        self.timestamp
    }
}

/// Converts posts into rating events: one record per mention occurrence,
/// self-mentions dropped, in input order then mention order.
pub fn to_interactions(tweets: &[TweetRecord]) -> Vec<InteractionRecord> {
    tweets
        .iter()
        .flat_map(|t| {
            extract_mentions(&t.text)
                .into_iter()
                .filter_map(|ratee| InteractionRecord::new(t.author.clone(), ratee, t.timestamp))
        })
        .collect()
}
