mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "bibnet", version, about = "Bibliometric network analysis of journal corpora")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Input file: a corpus (JSONL) or, for `generate`, a TOML config.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, default_value = ".")]
    output_dir: PathBuf,
    /// Width of time blocks in years.
    #[arg(long, global = true, default_value_t = 5)]
    block_width: i32,
    /// Papers with at least this many authors are flagged as large.
    #[arg(long, global = true, default_value_t = 50)]
    large_paper_threshold: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and cull a corpus.
    Ingest,
    /// Resolve author mentions to identities.
    Disambiguate(commands::DisambigArgs),
    /// Write a synthetic corpus and its gold identities.
    Generate(commands::GenerateArgs),
    /// Compute figures and tables from a corpus and identity map.
    Analyze(commands::AnalyzeArgs),
    /// Run ingest, disambiguate and analyze in one go.
    Report(commands::ReportArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Ingest => commands::ingest(&cli.global),
        Command::Disambiguate(a) => commands::disambiguate(&cli.global, a),
        Command::Generate(a) => commands::generate(&cli.global, a),
        Command::Analyze(a) => commands::analyze(&cli.global, a),
        Command::Report(a) => commands::report(&cli.global, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
