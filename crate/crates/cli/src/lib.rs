//! Command-line experiments for network stag-hunt learning dynamics.
//!
//! Each experiment writes a CSV of `x,y,series` rows plus a JSON sidecar
//! holding the resolved configuration, seeds and scalar summaries.

pub mod config;
pub mod experiments;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use config::{parse_config, Experiment, ExperimentConfig, Settings};
pub use experiments::run;
pub use output::{Row, SeriesOutput};

/// Runs the program and returns its exit code. Errors go to `err` as one line.
pub fn main_with_args<I, T, O, E>(args: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    O: Write,
    E: Write,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    // help and version are not errors
    if let Err(e) = Settings::try_parse_from(&args) {
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
            let _ = write!(out, "{e}");
            return 0;
        }
    }
    match execute(args, out) {
        Ok(code) => code,
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn execute<O: Write>(args: Vec<OsString>, out: &mut O) -> anyhow::Result<i32> {
    let cfg = parse_config(args)?;
    let result = run(&cfg)?;
    let (csv, sidecar) = result.write(&cfg.output)?;
    writeln!(out, "wrote {} and {}", csv.display(), sidecar.display())?;
    if cfg.experiment == Experiment::VerifySuite {
        let passed = result.metadata.summary["passed"] as usize;
        let failed = result.metadata.summary["failed"] as usize;
        for row in result.rows.iter().filter(|r| r.y == 0.0) {
            writeln!(out, "FAIL {}", row.series)?;
        }
        writeln!(out, "verify-suite: {passed} passed, {failed} failed")?;
        return Ok(if failed == 0 { 0 } else { 1 });
    }
    Ok(0)
}
