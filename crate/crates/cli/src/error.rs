use serde_json::{json, Value};

use reidemeister_core::ratfunc::RatFnError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or unreadable files. Exit code 2.
    #[error("{0}")]
    Usage(String),
    /// The engine rejected the input or a check failed. Exit code 1.
    #[error("{message}")]
    Domain { code: &'static str, message: String },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Domain {
            code: "invalid-input",
            message: msg.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain { code, .. } => code,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "code": self.code(), "message": self.to_string(), "exit": self.exit_code() } })
    }
}

impl From<reidemeister_core::Error> for CliError {
    fn from(e: reidemeister_core::Error) -> Self {
        CliError::Domain {
            code: e.code(),
            message: e.to_string(),
        }
    }
}

impl From<RatFnError> for CliError {
    fn from(e: RatFnError) -> Self {
        reidemeister_core::Error::from(e).into()
    }
}
