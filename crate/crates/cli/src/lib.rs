//! Command-line front end for `gsb-core`: reads stanza files, runs one
//! operation and reports the outcome as text and as versioned JSON.

pub mod commands;
pub mod document;
pub mod report;
pub mod resolve;

use thiserror::Error;

pub use commands::{run, Command, Options};
pub use document::{parse_document, serialize_document, InputDocument, ParseError};
pub use report::{Report, Verdict};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Input(String),
    #[error("limit exceeded: {0}")]
    Limit(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn verdict(&self) -> Verdict {
        match self {
            CliError::Limit(_) => Verdict::LimitExceeded,
            _ => Verdict::InputError,
        }
    }
}
