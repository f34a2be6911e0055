use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cutmet_cli::{parse_checks, run, OutputFormat, RunConfig};
use cutmet_core::autgrp::DEFAULT_VERTEX_CAP;
use cutmet_core::cones::DEFAULT_HYPERMETRIC_BOUND;

#[derive(Parser)]
#[command(
    name = "cutmet",
    version,
    about = "Certify symmetry and adjacency facts about metric and cut cones"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification checks for every n in a range.
    Verify {
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        /// Comma-separated check ids, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value_t = DEFAULT_HYPERMETRIC_BOUND)]
        hypermetric_bound: i64,
        /// Largest graph handed to the automorphism search and pair checks.
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        aut_vertex_cap: usize,
        /// `text` or `json`.
        #[arg(long, default_value = "text")]
        format: String,
        /// Directory for graph6, edge-list and label files.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Verify {
        n_min,
        n_max,
        checks,
        hypermetric_bound,
        aut_vertex_cap,
        format,
        export,
    } = cli.command;

    let config = (|| {
        let config = RunConfig {
            n_min,
            n_max,
            checks: parse_checks(&checks)?,
            hypermetric_bound,
            aut_vertex_cap,
            output_format: format.parse()?,
            export_dir: export,
        };
        config.validate()?;
        Ok::<_, cutmet_cli::ConfigError>(config)
    })();
    let config = match config {
        Ok(c) => c,
        Err(e) => {
            eprintln!("cutmet: {e}");
            return ExitCode::from(2);
        }
    };

    let report = run(&config);
    match config.output_format {
        OutputFormat::Text => print!("{}", report.to_text()),
        OutputFormat::Json => println!("{}", report.to_json()),
    }
    if let Some(err) = report.export.as_ref().and_then(|e| e.error.as_ref()) {
        eprintln!("cutmet: export failed: {err}");
    }
    ExitCode::from(report.exit_code() as u8)
}
