use std::io::{BufRead, BufReader, Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{IngestError, InteractionRecord, TweetRecord};
use crate::handle::Handle;

const TWEET_HEADER: [&str; 3] = ["author", "text", "timestamp"];
const INTERACTION_HEADER: [&str; 3] = ["rater", "ratee", "timestamp"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TweetFormat {
    Jsonl,
    Csv,
}

impl FromStr for TweetFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jsonl" => Ok(TweetFormat::Jsonl),
            "csv" => Ok(TweetFormat::Csv),
            other => Err(format!(
                "unknown tweet format {other:?} (expected jsonl or csv)"
            )),
        }
    }
}

/// Strict parsing fails on the first malformed line; lenient parsing skips
/// it and records it in [`ParsedTweets::malformed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    Strict,
    #[default]
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Malformed {
    pub line: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParsedTweets {
    pub tweets: Vec<TweetRecord>,
    pub malformed: Vec<Malformed>,
}

impl ParsedTweets {
    fn reject(&mut self, mode: ParseMode, line: u64, reason: String) -> Result<(), IngestError> {
        match mode {
            ParseMode::Strict => Err(IngestError::Format { line, reason }),
            ParseMode::Lenient => {
                self.malformed.push(Malformed { line, reason });
                Ok(())
            }
        }
    }
}

#[derive(Deserialize)]
struct JsonTweet {
    author: String,
    text: String,
    timestamp: u64,
}

fn make_tweet(author: &str, text: String, timestamp: u64) -> Result<TweetRecord, String> {
    let author = Handle::new(author).map_err(|e| format!("author: {e}"))?;
    Ok(TweetRecord {
        author,
        text,
        timestamp,
    })
}

/// Parses a tweet dataset. Blank JSONL lines are ignored; an empty CSV input
/// (no header) yields no tweets.
pub fn parse_tweets<R: Read>(
    input: R,
    format: TweetFormat,
    mode: ParseMode,
) -> Result<ParsedTweets, IngestError> {
    match format {
        TweetFormat::Jsonl => parse_jsonl(BufReader::new(input), mode),
        TweetFormat::Csv => parse_csv(input, mode),
    }
}

fn parse_jsonl<R: BufRead>(input: R, mode: ParseMode) -> Result<ParsedTweets, IngestError> {
    let mut parsed = ParsedTweets::default();
    for (idx, raw) in input.split(b'\n').enumerate() {
        let line = idx as u64 + 1;
        let raw = raw?;
        let text = match std::str::from_utf8(&raw) {
            Ok(t) => t,
            Err(e) => {
                parsed.reject(mode, line, format!("invalid UTF-8: {e}"))?;
                continue;
            }
        };
        if text.trim().is_empty() {
            continue;
        }
        let tweet = serde_json::from_str::<JsonTweet>(text)
            .map_err(|e| e.to_string())
            .and_then(|j| make_tweet(&j.author, j.text, j.timestamp));
        match tweet {
            Ok(t) => parsed.tweets.push(t),
            Err(reason) => parsed.reject(mode, line, reason)?,
        }
    }
    Ok(parsed)
}

fn csv_reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(input)
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn csv_error_line(err: &csv::Error) -> u64 {
    err.position().map_or(0, |p| p.line())
}

/// Reads the header row and checks it matches `expected` exactly.
/// Returns `false` when the input is empty.
fn check_header<R: Read>(
    reader: &mut csv::Reader<R>,
    expected: &[&str],
) -> Result<bool, IngestError> {
    let mut header = csv::StringRecord::new();
    let has_header = reader
        .read_record(&mut header)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => IngestError::Io(std::io::Error::other(e.to_string())),
            _ => IngestError::Format {
                line: 1,
                reason: format!("unreadable header: {e}"),
            },
        })?;
    if !has_header {
        return Ok(false);
    }
    let fields: Vec<&str> = header
        .iter()
        .enumerate()
        .map(|(i, f)| {
            if i == 0 {
                f.trim_start_matches('\u{feff}')
            } else {
                f
            }
        })
        .collect();
    if fields != expected {
        return Err(IngestError::Format {
            line: 1,
            reason: format!(
                "expected header {:?}, found {:?}",
                expected.join(","),
                fields.join(",")
            ),
        });
    }
    Ok(true)
}

fn parse_csv<R: Read>(input: R, mode: ParseMode) -> Result<ParsedTweets, IngestError> {
    let mut reader = csv_reader(input);
    let mut parsed = ParsedTweets::default();
    if !check_header(&mut reader, &TWEET_HEADER)? {
        return Ok(parsed);
    }
    let mut record = csv::StringRecord::new();
    loop {
        match reader.read_record(&mut record) {
            Ok(false) => break,
            Ok(true) => {
                let line = record_line(&record);
                match csv_tweet(&record) {
                    Ok(t) => parsed.tweets.push(t),
                    Err(reason) => parsed.reject(mode, line, reason)?,
                }
            }
            Err(e) => {
                if let csv::ErrorKind::Io(_) = e.kind() {
                    return Err(IngestError::Io(std::io::Error::other(e.to_string())));
                }
                parsed.reject(mode, csv_error_line(&e), e.to_string())?;
            }
        }
    }
    Ok(parsed)
}

fn csv_tweet(record: &csv::StringRecord) -> Result<TweetRecord, String> {
    if record.len() != 3 {
        return Err(format!(
            "expected 3 fields (author,text,timestamp), found {}",
            record.len()
        ));
    }
    let timestamp = record[2]
        .trim()
        .parse::<u64>()
        .map_err(|e| format!("timestamp {:?}: {e}", &record[2]))?;
    make_tweet(&record[0], record[1].to_owned(), timestamp)
}

/// Serializes tweets in either input format; the output parses back to the
/// same records.
pub fn write_tweets<W: Write>(
    mut out: W,
    tweets: &[TweetRecord],
    format: TweetFormat,
) -> Result<(), IngestError> {
    match format {
        TweetFormat::Jsonl => {
            for t in tweets {
                serde_json::to_writer(&mut out, t).map_err(std::io::Error::other)?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
        TweetFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(TWEET_HEADER).map_err(csv_io)?;
            for t in tweets {
                let ts = t.timestamp.to_string();
                w.write_record([t.author.as_str(), t.text.as_str(), ts.as_str()])
                    .map_err(csv_io)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn csv_io(e: csv::Error) -> IngestError {
    IngestError::Io(std::io::Error::other(e.to_string()))
}

/// Writes the canonical `rater,ratee,timestamp` CSV, preserving record order.
pub fn write_interactions<W: Write>(
    out: W,
    records: &[InteractionRecord],
) -> Result<(), IngestError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(INTERACTION_HEADER).map_err(csv_io)?;
    for r in records {
        let ts = r.timestamp.to_string();
        w.write_record([r.rater.as_str(), r.ratee.as_str(), ts.as_str()])
            .map_err(csv_io)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads an interaction CSV. Always strict: these files are machine written.
pub fn read_interactions<R: Read>(input: R) -> Result<Vec<InteractionRecord>, IngestError> {
    let mut reader = csv_reader(input);
    if !check_header(&mut reader, &INTERACTION_HEADER)? {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut record = csv::StringRecord::new();
    loop {
        match reader.read_record(&mut record) {
            Ok(false) => break,
            Ok(true) => {
                let line = record_line(&record);
                let parsed = interaction_from(&record)
                    .map_err(|reason| IngestError::Format { line, reason })?;
                out.push(parsed);
            }
            Err(e) => {
                if let csv::ErrorKind::Io(_) = e.kind() {
                    return Err(csv_io(e));
                }
                return Err(IngestError::Format {
                    line: csv_error_line(&e),
                    reason: e.to_string(),
                });
            }
        }
    }
    Ok(out)
}

fn interaction_from(record: &csv::StringRecord) -> Result<InteractionRecord, String> {
    if record.len() != 3 {
        return Err(format!(
            "expected 3 fields (rater,ratee,timestamp), found {}",
            record.len()
        ));
    }
    let rater = Handle::new(&record[0]).map_err(|e| format!("rater: {e}"))?;
    let ratee = Handle::new(&record[1]).map_err(|e| format!("ratee: {e}"))?;
    let timestamp = record[2]
        .parse::<u64>()
        .map_err(|e| format!("timestamp {:?}: {e}", &record[2]))?;
    InteractionRecord::new(rater, ratee, timestamp)
        .ok_or_else(|| format!("self-rating by {:?}", &record[0]))
}
