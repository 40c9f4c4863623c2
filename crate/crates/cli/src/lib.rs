//! The `varj` command-line front end: argument parsing, dataset loading,
//! report rendering (json, text, csv) and density-overlay plots.

pub mod commands;
pub mod config;
pub mod data;
pub mod error;
pub mod plot;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use serde_json::json;

pub use commands::{execute, Outcome};
pub use config::{parse_args, parse_distribution, Format, RunConfig};
pub use data::{load_dataset, parse_values, DataSource};
pub use error::{CliError, CliResult};

fn report_error(e: &CliError, format: Format, stderr: &mut dyn Write) {
    let _ = match format {
        Format::Json => writeln!(
            stderr,
            "{}",
            json!({ "error": { "category": e.category(), "message": e.to_string() } })
        ),
        _ => writeln!(stderr, "varj: error[{}]: {}", e.category(), e.to_string().trim_end()),
    };
}

fn write_file(path: &std::path::Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Run the program on `argv` (program name first) and return the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cfg = match config::parse_args_raw(argv) {
        Ok(Ok(cfg)) => cfg,
        Ok(Err(e)) => {
            report_error(&e, Format::Text, stderr);
            return e.exit_code();
        }
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
        Err(e) => {
            let e = config::usage_from_clap(&e);
            report_error(&e, Format::Text, stderr);
            return e.exit_code();
        }
    };
    let fail = |e: CliError, stderr: &mut dyn Write| {
        report_error(&e, cfg.format, stderr);
        e.exit_code()
    };
    let outcome = match execute(&cfg) {
        Ok(o) => o,
        Err(e) => return fail(e, stderr),
    };
    let text = match outcome.output.render(cfg.format) {
        Ok(t) => t,
        Err(e) => return fail(e, stderr),
    };
    let written = match &cfg.output {
        Some(path) => write_file(path, &text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write standard output: {e}"))),
    };
    if let Err(e) = written {
        return fail(e, stderr);
    }
    if let (Some(path), Some(plot)) = (&cfg.plot, &outcome.plot) {
        if let Err(e) = write_file(path, &plot.to_svg()) {
            return fail(e, stderr);
        }
    }
    match outcome.failure {
        Some(e) => fail(e, stderr),
        None => 0,
    }
}
