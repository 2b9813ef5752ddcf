//! Front-end for the `s3coulomb` binary. Parsing and rendering live here so the
//! output can be checked in-process.

pub mod args;
mod commands;
mod output;

use std::fs;
use std::io::Write;

use anyhow::{Context, Result};

pub use args::{Cli, Command, Format};
pub use commands::Rendered;
pub use output::SCHEMA_VERSION;

/// Produce the bytes a command would write, without touching the filesystem.
pub fn render(cli: &Cli) -> Result<Rendered> {
    match &cli.command {
        Command::Spectrum(a) => commands::spectrum(cli, a),
        Command::Table1(a) => commands::table(cli, a),
        Command::Verify(a) => commands::verify(cli, a),
        Command::Sample(a) => commands::sample(cli, a),
        Command::Eigensolve(a) => commands::eigensolve(cli, a),
        Command::Matrix(a) => commands::matrix(cli, a),
    }
}

/// Render and write to `--out` or stdout; returns the exit status.
pub fn run(cli: &Cli) -> Result<i32> {
    let rendered = render(cli)?;
    match &cli.out {
        Some(path) => fs::write(path, &rendered.bytes)
            .with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(&rendered.bytes)?;
            stdout.flush()?;
        }
    }
    Ok(rendered.status)
}
