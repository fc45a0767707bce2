//! Configuration, execution and report output for the `qmodulus` binary.

mod config;
mod table;

use std::io::Write;

pub use config::{parse_rational, Format, Overrides, SuiteConfig};
pub use table::emit_table;

use qmodulus::modulus::{run_suite, VerificationReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("precondition {0}")]
    Precondition(String),
    #[error(transparent)]
    Toolkit(#[from] qmodulus::Error),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Exit status: every error is a problem with the request, so 2.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// What a run produced.
#[derive(Debug)]
pub struct Outcome {
    pub reports: Vec<VerificationReport>,
    pub rendered: String,
}

impl Outcome {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn first_failure(&self) -> Option<&VerificationReport> {
        self.reports.iter().find(|r| !r.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }
}

pub fn render(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize") + "\n",
        Format::Md => emit_table(reports),
    }
}

/// Run the configured suite and write the report to the configured path,
/// or return it for printing.
pub fn run(cfg: &SuiteConfig) -> Result<Outcome, CliError> {
    let reports = run_suite(cfg.suite, &cfg.run).map_err(|e| match e {
        qmodulus::Error::Precondition(msg) => CliError::Precondition(msg),
        other => CliError::Toolkit(other),
    })?;
    let rendered = render(&reports, cfg.format);
    if let Some(path) = &cfg.out {
        std::fs::File::create(path)?.write_all(rendered.as_bytes())?;
    }
    Ok(Outcome { reports, rendered })
}
