use std::fmt;

use framekit::FrameError;

pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DIMENSION: i32 = 3;
pub const EXIT_MRC: i32 = 4;
pub const EXIT_CERTIFICATION: i32 = 5;

/// An error with the process exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        CliError::new(EXIT_PARSE, message)
    }

    pub fn dimension(message: impl Into<String>) -> Self {
        CliError::new(EXIT_DIMENSION, message)
    }

    pub fn mrc(message: impl Into<String>) -> Self {
        CliError::new(EXIT_MRC, message)
    }

    pub fn certification(message: impl Into<String>) -> Self {
        CliError::new(EXIT_CERTIFICATION, message)
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError::new(EXIT_OTHER, message)
    }

    pub fn from_json(e: serde_json::Error) -> Self {
        CliError::parse(format!("invalid JSON: {e}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<FrameError> for CliError {
    fn from(e: FrameError) -> Self {
        use FrameError::*;
        let code = match &e {
            NonFinite => EXIT_PARSE,
            DimensionMismatch { .. } | BadIndexSet(_) | InvalidArgument(_) | NotAFrame { .. } => {
                EXIT_DIMENSION
            }
            MrcViolated { .. } => EXIT_MRC,
            BadSeeds(_)
            | IntegralityBroken { .. }
            | Overflow
            | GeneratorNotTotallyNonsingular { .. }
            | NotFullSpark { .. }
            | NotCanonicalOrder
            | FirstBlockNotOrthonormal
            | NotParseval { .. } => EXIT_CERTIFICATION,
            _ => EXIT_OTHER,
        };
        CliError::new(code, e.to_string())
    }
}
