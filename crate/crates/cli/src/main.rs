mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use anyhow::Result;
use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command, Format};
use output::RunManifest;

fn params(cli: &Cli) -> Result<Value> {
    let args = match &cli.command {
        Command::Gen(a) => serde_json::to_value(a)?,
        Command::Contract(a) => serde_json::to_value(a)?,
        Command::Cover(a) => serde_json::to_value(a)?,
        Command::MaxcutBipartite(a) => serde_json::to_value(a)?,
        Command::FindKst(a) => serde_json::to_value(a)?,
        Command::Paths(a) => serde_json::to_value(a)?,
        Command::PipelineKst(a) => serde_json::to_value(a)?,
        Command::PipelineKs(a) => serde_json::to_value(a)?,
        Command::Expand(a) => serde_json::to_value(a)?,
        Command::DenseToClique(a) => serde_json::to_value(a)?,
        Command::Verify(a) => serde_json::to_value(a)?,
    };
    Ok(json!({ "global": cli.global, "command": args }))
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(threads) = cli.global.threads {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    let result = commands::run(&cli.command, &cli.global)?;
    let manifest = RunManifest::new(
        cli.command.name(),
        params(cli)?,
        cli.global.seed,
        result.input.as_deref(),
    );
    let default_format = if matches!(cli.command, Command::Gen(_)) { Format::Edges } else { Format::Json };
    let format = cli.global.format.unwrap_or(default_format);
    match (format, &result.graph) {
        (Format::Edges, Some(g)) => {
            let mut sink = output::open_sink(cli.global.out.as_deref())?;
            sink.write_all(minorforge::write_edge_list(g).as_bytes())?;
        }
        (Format::Edges, None) => anyhow::bail!("--format edges is only available for gen"),
        _ => output::emit(cli.global.out.as_deref(), format, &manifest, &result.report)?,
    }
    Ok(result.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
