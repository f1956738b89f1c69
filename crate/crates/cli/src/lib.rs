//! Command-line front end: algebra files, the pipeline driver, reports and
//! the subcommands.

pub mod algebra_file;
pub mod commands;
pub mod pipeline;
pub mod report;

use lieinv::liealg::LieError;

#[derive(thiserror::Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("invalid algebra: {0}")]
    Validation(LieError),
    #[error(transparent)]
    Pipeline(#[from] lieinv::Error),
    #[error("{0}")]
    Overflow(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("cannot write {path}: {source}")]
    Output { path: String, source: std::io::Error },
}

impl CliError {
    /// 2 for bad input or an algebra that fails validation, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Validation(_) => 2,
            _ => 1,
        }
    }
}
