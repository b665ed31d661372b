use std::fmt;

/// A failure together with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_IO: i32 = 4;

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        Self { code: EXIT_CONFIG, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self { code: EXIT_IO, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<areatype::Error> for CliError {
    fn from(e: areatype::Error) -> Self {
        use areatype::Error as E;
        let code = match &e {
            E::BudgetExceeded { .. } => EXIT_BUDGET,
            E::Io(_) => EXIT_IO,
            _ => EXIT_CONFIG,
        };
        let message = match &e {
            E::BudgetExceeded { .. } => format!("{e} (raise AREATYPE_BUDGET to allow it)"),
            _ => e.to_string(),
        };
        Self { code, message }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            Self::io(e.to_string())
        } else {
            Self::config(format!("invalid JSON: {e}"))
        }
    }
}
