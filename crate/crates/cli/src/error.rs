//! Error-to-exit-code mapping. Three failure classes: configuration problems
//! (unreadable, unparsable, or semantically invalid input), model errors
//! (construction or size guards), and oracle verification mismatches.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Exit 1: the run never started — bad arguments, unreadable or invalid
    /// configuration, or an unwritable output target.
    Config(String),
    /// Exit 2: a model could not be built or evaluated.
    Model(negspec::Error),
    /// Exit 3: the dense oracle disagreed with the engine.
    Verification(negspec::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Model(_) => 2,
            CliError::Verification(_) => 3,
        }
    }

    /// Classify a library error raised while verifying: only a genuine
    /// mismatch is a verification failure, everything else is a model error.
    pub fn from_verify(err: negspec::Error) -> Self {
        match err {
            negspec::Error::VerificationMismatch { .. } => CliError::Verification(err),
            other => CliError::Model(other),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "invalid configuration: {msg}"),
            CliError::Model(e) => write!(f, "model error: {e}"),
            CliError::Verification(e) => write!(f, "verification failed: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<negspec::Error> for CliError {
    fn from(err: negspec::Error) -> Self {
        CliError::Model(err)
    }
}
