//! Command-line driver: runs the verification checks over a range of `n`,
//! renders reports and exports the graphs.

pub mod checks;
pub mod config;
pub mod export;
pub mod report;

pub use checks::{run_check, run_verify};
pub use config::{parse_checks, CheckId, ConfigError, OutputFormat, RunConfig};
pub use export::{export_graphs, ExportError};
pub use report::{CheckRecord, Outcome, VerificationReport};

/// Runs the checks, then the export when a directory is configured. Export
/// failures are recorded in the report and do not affect check outcomes.
pub fn run(config: &RunConfig) -> VerificationReport {
    let mut report = run_verify(config);
    if let Some(dir) = &config.export_dir {
        let record = match export_graphs(config) {
            Ok(files) => report::ExportRecord {
                directory: dir.display().to_string(),
                files: files
                    .iter()
                    .map(|p| {
                        p.file_name().map_or_else(
                            || p.display().to_string(),
                            |f| f.to_string_lossy().into_owned(),
                        )
                    })
                    .collect(),
                error: None,
            },
            Err(e) => report::ExportRecord {
                directory: dir.display().to_string(),
                files: Vec::new(),
                error: Some(e.to_string()),
            },
        };
        report.export = Some(record);
    }
    report
}
