//! `liquidrank`: ingest tweets, rank channels, evaluate and chart rankings.

mod chart;
mod commands;
mod config;
mod error;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::report::ChartFormat;
use crate::config::{RunConfig, SharedArgs};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "liquidrank",
    version,
    about = "Mention-graph reputation ranking"
)]
struct Cli {
    #[command(flatten)]
    shared: SharedArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse tweets (--input) into OUT_DIR/interactions.csv
    Ingest,
    /// Rank channels from interactions.csv (or --input / --graph)
    Rank {
        /// Rank from a rater,ratee,weight graph snapshot instead of interactions
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Score ranking CSVs against --judgments
    Evaluate {
        /// Ranking CSVs; defaults to the ranking_*.csv files in OUT_DIR
        rankings: Vec<PathBuf>,
        /// Lowest grade counted as relevant
        #[arg(long, default_value_t = 2)]
        relevance_threshold: u8,
    },
    /// Draw a bar chart of the top K entries of each ranking
    Report {
        /// Ranking CSVs; defaults to the ranking_*.csv files in OUT_DIR
        rankings: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "txt")]
        chart: ChartFormat,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(&cli.shared)?;
    match cli.command {
        Command::Ingest => commands::ingest::run(&cfg),
        Command::Rank { graph } => commands::rank::run(&cfg, graph.as_deref()),
        Command::Evaluate {
            rankings,
            relevance_threshold,
        } => commands::evaluate::run(&cfg, &rankings, relevance_threshold),
        Command::Report { rankings, chart } => commands::report::run(&cfg, &rankings, chart),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
