use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;

use crate::error::CliError;

/// Parses `text` as `T`, reporting syntax errors by position and schema
/// errors by field path. `source` names the input in error objects.
pub fn parse_json<T: DeserializeOwned>(text: &str, source: &str) -> Result<T, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::from_json(source, &inner, path)
    })?;
    de.end().map_err(|e| CliError::from_json(source, &e, String::from(".")))?;
    Ok(value)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_json(&text, &path.display().to_string())
}
