//! Command-line front end for the closed-form barrier/well solver: bundled
//! figure datasets, parameter sweeps, bound states, transmission resonances,
//! and seeded self-checks.
//!
//! Output is deterministic by construction — CSV uses fixed 17-significant-
//! digit formatting with LF line endings, so identical inputs produce
//! byte-identical files — and every file-producing run leaves a
//! `<stem>.manifest.json` recording the fully resolved parameters.
//!
//! Parameters resolve in layers, later layers winning field by field:
//! built-in defaults, then a dataset preset (`figure <id>` or `--preset`),
//! then a flat `key = value` config file, then explicit flags.

use std::fmt;

pub mod checks;
pub mod commands;
pub mod config;
pub mod output;

/// Command failures carrying their process exit code: 2 for bad usage or
/// parameters, 3 for runtime (threshold/domain/io) errors, 4 for failed
/// self-checks.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 3,
            CliError::ChecksFailed(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => f.write_str(m),
            CliError::ChecksFailed(n) => write!(f, "{n} check suite(s) failed"),
        }
    }
}

impl std::error::Error for CliError {}
