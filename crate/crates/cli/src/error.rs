use std::fmt;

use fuzzopt_core::lp::LpError;
use fuzzopt_core::Error;
use serde::Serialize;

/// Exit code for domain outcomes such as infeasibility or a missing certificate.
pub const EXIT_DOMAIN: i32 = 1;
/// Exit code for malformed or invalid input.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io {
        path: String,
        message: String,
    },
    Json {
        /// `parse` for malformed JSON, `schema` for well-formed JSON of the wrong shape.
        kind: &'static str,
        source: String,
        message: String,
        line: usize,
        column: usize,
        path: Option<String>,
    },
    Core(Error),
    /// A reproduction run finished with failing assertions.
    Failed(usize),
}

impl CliError {
    pub fn from_json(source: &str, e: &serde_json::Error, path: String) -> Self {
        let kind = match e.classify() {
            serde_json::error::Category::Data => "schema",
            _ => "parse",
        };
        CliError::Json {
            kind,
            source: source.to_string(),
            message: e.to_string(),
            line: e.line(),
            column: e.column(),
            path: (kind == "schema" && path != ".").then_some(path),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if !e.is_input_error() => EXIT_DOMAIN,
            CliError::Failed(_) => EXIT_DOMAIN,
            _ => EXIT_INPUT,
        }
    }

    pub fn to_object(&self) -> ErrorObject {
        let mut o = ErrorObject {
            kind: "",
            message: self.to_string(),
            source: None,
            line: None,
            column: None,
            path: None,
        };
        match self {
            CliError::Usage(_) => o.kind = "usage",
            CliError::Io { path, .. } => {
                o.kind = "io";
                o.source = Some(path.clone());
            }
            CliError::Json {
                kind,
                source,
                line,
                column,
                path,
                ..
            } => {
                o.kind = kind;
                o.source = Some(source.clone());
                o.line = Some(*line);
                o.column = Some(*column);
                o.path = path.clone();
            }
            CliError::Core(e) => o.kind = core_kind(e),
            CliError::Failed(_) => o.kind = "assertions_failed",
        }
        o
    }
}

fn core_kind(e: &Error) -> &'static str {
    match e {
        Error::Fuzzy(_) => "invalid_fuzzy_input",
        Error::Lp(LpError::IterationLimit | LpError::Numerical(_)) => "numerical",
        Error::Lp(_) => "invalid_lp",
        Error::Infeasible { .. } => "infeasible",
        Error::OutsideBox(_) => "outside_box",
        Error::InvalidBox(_) => "invalid_box",
        Error::NoCertificate => "no_certificate",
        Error::TooManyVectors { .. } => "too_many_vectors",
        Error::EmptyIntersection(_) => "empty_intersection",
        Error::EmptyBias => "empty_bias",
        Error::NoSeparator => "no_separator",
        Error::InvalidDataset(_) => "invalid_dataset",
        Error::InvalidArgument(_) => "invalid_argument",
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Io { path, message } => write!(f, "{path}: {message}"),
            CliError::Json { source, message, .. } => write!(f, "{source}: {message}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Failed(n) => write!(f, "{n} assertion(s) failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<fuzzopt_core::FuzzyError> for CliError {
    fn from(e: fuzzopt_core::FuzzyError) -> Self {
        CliError::Core(e.into())
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorObject {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}
