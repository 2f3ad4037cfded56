//! Command-line front-end: graph specs in, JSON reports and DOT out.

pub mod args;
pub mod commands;
pub mod dot;
pub mod error;
pub mod input;
pub mod parse;
pub mod report;

use std::fs;
use std::path::Path;

pub use args::Cli;
pub use commands::{run, Outcome};
pub use error::{exit, CliError};

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Canonical serialization of a report.
pub fn render_report(outcome: &Outcome) -> String {
    let mut s = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
    s.push('\n');
    s
}

/// Write the outputs requested by `cli`. One DOT graph goes to the given
/// path; several go into it as a directory.
pub fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), CliError> {
    if let Some(dot) = &cli.dot {
        match outcome.dots.as_slice() {
            [] => {}
            [(_, single)] => write(dot, single)?,
            many => {
                fs::create_dir_all(dot).map_err(|source| CliError::Io {
                    path: dot.display().to_string(),
                    source,
                })?;
                for (name, contents) in many {
                    write(&dot.join(name), contents)?;
                }
            }
        }
    }
    match &cli.json {
        Some(path) => {
            write(path, &render_report(outcome))?;
            for line in &outcome.summary {
                println!("{line}");
            }
        }
        None => print!("{}", render_report(outcome)),
    }
    Ok(())
}

/// Run a parsed command line and return the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    match run(cli).and_then(|o| emit(cli, &o).map(|_| o)) {
        Ok(o) if o.success => exit::OK,
        Ok(_) => exit::FAILED,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
