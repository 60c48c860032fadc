//! Figure data, region classification and ad hoc inference on the command line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod figures;
pub mod format;
pub mod report;
pub mod table;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

pub use config::{Basis, Command, Grid, ObservableSpec, RunConfig, Scheme};
pub use error::{CliError, CliResult};

/// `fig4.csv` → `fig4_inset.csv`.
pub fn inset_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match out.extension() {
        Some(ext) => format!("{stem}_inset.{}", ext.to_string_lossy()),
        None => format!("{stem}_inset"),
    };
    out.with_file_name(name)
}

fn write_file(
    path: &Path,
    write: impl FnOnce(&mut BufWriter<File>) -> CliResult<()>,
) -> CliResult<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write(&mut w)?;
    w.flush()?;
    Ok(())
}

/// Runs one command; text output goes to `stdout` unless `--out` redirects it.
pub fn run<W: Write>(config: &RunConfig, stdout: &mut W) -> CliResult<()> {
    config.validate()?;
    match &config.command {
        Command::Fig(n) => {
            let data = figures::figure(config, *n)?;
            match &config.out {
                Some(path) => {
                    write_file(path, |w| data.main.write_to(w))?;
                    if let Some(inset) = &data.inset {
                        write_file(&inset_path(path), |w| inset.write_to(w))?;
                    }
                }
                None => {
                    data.main.write_to(stdout)?;
                    if let Some(inset) = &data.inset {
                        writeln!(stdout)?;
                        inset.write_to(stdout)?;
                    }
                }
            }
        }
        Command::Classify { a, alpha } => {
            let (_, text) = report::classify(config, *a, *alpha)?;
            emit(config, stdout, &text)?;
        }
        Command::Infer {
            observable,
            mean,
            scheme,
        } => {
            let text = report::infer(config, observable, *mean, *scheme)?;
            emit(config, stdout, &text)?;
        }
    }
    Ok(())
}

fn emit<W: Write>(config: &RunConfig, stdout: &mut W, text: &str) -> CliResult<()> {
    match &config.out {
        Some(path) => write_file(path, |w| Ok(w.write_all(text.as_bytes())?)),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}
