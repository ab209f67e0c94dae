//! Subcommand registry: each command is a trait object implementing a name,
//! a one-line description, and a run method producing the uniform report.

mod deform_cmds;
mod ns_cmds;
mod trb_cmds;

use std::path::PathBuf;

use trb_core::instance::InstanceFile;

use crate::report::Report;

/// Why a run could not produce a report: bad input (exit 2) versus a
/// mathematical failure surfaced as an error (exit 1).
#[derive(Debug)]
pub enum CliError {
    Malformed(String),
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::Math(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Malformed(m) | CliError::Math(m) => m,
        }
    }
}

pub fn core_err(e: trb_core::Error) -> CliError {
    use trb_core::Error::*;
    match e {
        Parse(_) | ShapeMismatch(_) | IndexOutOfRange(_) => CliError::Malformed(e.to_string()),
        _ => CliError::Math(e.to_string()),
    }
}

/// Everything a command needs: parsed global flags plus the file arguments.
pub struct RunContext {
    pub files: Vec<PathBuf>,
    pub seed: u64,
    pub samples: usize,
    pub nmax: usize,
    pub order: usize,
    pub b_file: Option<PathBuf>,
    pub h_file: Option<PathBuf>,
    pub candidates: Option<PathBuf>,
}

impl RunContext {
    pub fn read_file(&self, path: &PathBuf) -> Result<String, CliError> {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))
    }

    /// Load and parse the first positional file.
    pub fn instance(&self) -> Result<InstanceFile, CliError> {
        let path = self
            .files
            .first()
            .ok_or_else(|| CliError::Malformed("expected an instance file argument".into()))?;
        let text = self.read_file(path)?;
        InstanceFile::parse(&text).map_err(core_err)
    }

    pub fn instance_digest(&self) -> Option<String> {
        self.instance().ok().and_then(|i| i.digest().ok())
    }

    pub fn report(&self, command: &str) -> Report {
        Report::new(command, self.instance_digest(), self.seed)
    }
}

pub trait Command {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError>;
}

pub fn registry() -> Vec<Box<dyn Command>> {
    let mut out: Vec<Box<dyn Command>> = Vec::new();
    out.extend(trb_cmds::commands());
    out.extend(ns_cmds::commands());
    out.extend(deform_cmds::commands());
    out
}
