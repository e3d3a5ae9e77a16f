//! Run configuration: command-line flags layered over an optional TOML
//! file, layered over defaults.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use liquidrank::{NormMode, RankParams, TimeWindow, TweetFormat};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_K: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    Jsonl,
    Csv,
}

impl From<InputFormat> for TweetFormat {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Jsonl => TweetFormat::Jsonl,
            InputFormat::Csv => TweetFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormArg {
    L1,
    Max,
}

impl From<NormArg> for NormMode {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::L1 => NormMode::L1,
            NormArg::Max => NormMode::Max,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Mentions,
    Liquid,
    Product,
    All,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct SharedArgs {
    /// TOML file with defaults for any of these flags; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Input file: tweets for `ingest`, interactions CSV for `rank`
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Tweet file format; inferred from the input extension when omitted
    #[arg(long, value_enum, global = true)]
    pub format: Option<InputFormat>,
    /// Window start, UTC epoch seconds (inclusive)
    #[arg(long, global = true)]
    pub window_start: Option<u64>,
    /// Window end, UTC epoch seconds (exclusive); unbounded when omitted
    #[arg(long, global = true)]
    pub window_end: Option<u64>,
    /// Convergence threshold [default: 0.0001]
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    /// Iteration cap [default: 1000]
    #[arg(long, global = true)]
    pub max_iters: Option<usize>,
    /// Damping weight in (0, 1]; 1 disables damping [default: 0.5]
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    /// Score normalization [default: l1]
    #[arg(long, value_enum, global = true)]
    pub norm: Option<NormArg>,
    /// Cutoff for evaluation and charts [default: 50]
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Rankings to compute [default: all]
    #[arg(long, value_enum, global = true)]
    pub method: Option<MethodArg>,
    /// Relevance judgments CSV (node,grade)
    #[arg(long, global = true)]
    pub judgments: Option<PathBuf>,
    /// Output directory [default: out]
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    /// Fail on the first malformed input line instead of skipping it
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    input: Option<PathBuf>,
    format: Option<InputFormat>,
    window_start: Option<u64>,
    window_end: Option<u64>,
    epsilon: Option<f64>,
    max_iters: Option<usize>,
    alpha: Option<f64>,
    norm: Option<NormArg>,
    k: Option<usize>,
    method: Option<MethodArg>,
    judgments: Option<PathBuf>,
    out_dir: Option<PathBuf>,
    strict: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub format: Option<InputFormat>,
    pub window: TimeWindow,
    pub params: RankParams,
    pub k: usize,
    pub method: MethodArg,
    pub judgments: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub strict: bool,
}

impl RunConfig {
    pub fn resolve(args: &SharedArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                toml::from_str::<FileConfig>(&text)
                    .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let defaults = RankParams::default();
        let params = RankParams {
            epsilon: args.epsilon.or(file.epsilon).unwrap_or(defaults.epsilon),
            max_iters: args
                .max_iters
                .or(file.max_iters)
                .unwrap_or(defaults.max_iters),
            alpha: args.alpha.or(file.alpha).unwrap_or(defaults.alpha),
            norm_mode: args
                .norm
                .or(file.norm)
                .map_or(defaults.norm_mode, NormMode::from),
        };
        params
            .validate()
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        let window = TimeWindow::new(
            args.window_start.or(file.window_start).unwrap_or(0),
            args.window_end.or(file.window_end),
        )
        .map_err(|e| CliError::Invalid(e.to_string()))?;
        let k = args.k.or(file.k).unwrap_or(DEFAULT_K);
        if k == 0 {
            return Err(CliError::Invalid("--k must be at least 1".into()));
        }
        Ok(RunConfig {
            input: args.input.clone().or(file.input),
            format: args.format.or(file.format),
            window,
            params,
            k,
            method: args.method.or(file.method).unwrap_or(MethodArg::All),
            judgments: args.judgments.clone().or(file.judgments),
            out_dir: args
                .out_dir
                .clone()
                .or(file.out_dir)
                .unwrap_or_else(|| "out".into()),
            strict: args.strict || file.strict.unwrap_or(false),
        })
    }

    /// The declared tweet format, else one inferred from the extension.
    pub fn tweet_format(&self, input: &Path) -> TweetFormat {
        match self.format {
            Some(f) => f.into(),
            None if input
                .extension()
                .is_some_and(|e| e.eq_ignore_ascii_case("csv")) =>
            {
                TweetFormat::Csv
            }
            None => TweetFormat::Jsonl,
        }
    }

    pub fn out_path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }
}
