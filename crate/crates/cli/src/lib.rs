//! File formats, audit drivers and fixtures for the `duality` command-line
//! tool.  The library half exists so integration tests can call the same
//! code paths the binary does.

pub mod audit;
pub mod fixtures;
pub mod report;
pub mod schema;

/// Process exit codes, shared by every subcommand: 0 all checks pass,
/// 1 a check failed, 2 parse error, 3 precondition or genericity error.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

/// Errors mapped onto exit codes by `main`.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input file (bad JSON, bad rational, wrong shape).
    Parse(String),
    /// Well-formed input rejected by a validation or precondition.
    Precondition(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(s) => write!(f, "parse error: {s}"),
            CliError::Precondition(s) => write!(f, "precondition error: {s}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Precondition(_) => EXIT_PRECONDITION,
        }
    }
}
