//! Std companion of `quadhull-core`: text formats, JSON reports, the
//! parallel search driver and the `quadhull` command line.

pub mod args;
pub mod commands;
pub mod driver;
pub mod format;
pub mod report;
pub mod tables;

use quadhull_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_FALSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::BudgetExceeded { .. } | Error::NodeBudget(_)) => EXIT_BUDGET,
            CliError::Core(Error::SelfCheck(_)) => EXIT_FALSE,
            _ => EXIT_PARSE,
        }
    }

    pub fn is_budget(&self) -> bool {
        self.exit_code() == EXIT_BUDGET
    }
}
