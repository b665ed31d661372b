//! Declarative experiment files.
//!
//! A file is a flat TOML or JSON table naming a `command` plus the same
//! options the command takes on the command line, with `_` or `-` in keys:
//!
//! ```toml
//! command = "sweep-count"
//! seed = 1
//! output = "counts.csv"
//! q = "4..12"
//! step = 2
//! k = 2
//! ```
//!
//! The table is turned back into an argument list and parsed by the regular
//! parser, so defaults and validation are shared with the command line.

use std::path::Path;

use serde_json::Value;

use crate::error::CliError;

/// Keys passed positionally rather than as `--key value`.
const POSITIONAL: &[&str] = &["kind"];

pub fn load(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e == "json");
    let value: Value = if is_json {
        serde_json::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?
    } else {
        let table: toml::Table = toml::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        serde_json::to_value(table).map_err(|e| CliError::config(e.to_string()))?
    };
    Ok(value)
}

fn scalar(key: &str, v: &Value) -> Result<String, CliError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(CliError::config(format!("`{key}` must be a string or number"))),
    }
}

/// Argument list equivalent to an experiment table.
pub fn to_argv(value: &Value) -> Result<Vec<String>, CliError> {
    let table = value
        .as_object()
        .ok_or_else(|| CliError::config("experiment file must be a table"))?;
    let command = table
        .get("command")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::config("experiment file needs a `command` string"))?;
    if command == "run" {
        return Err(CliError::config("experiment files cannot nest `run`"));
    }
    let mut argv = vec!["areatype".to_string(), command.to_string()];
    for key in POSITIONAL {
        if let Some(v) = table.get(*key) {
            argv.push(scalar(key, v)?);
        }
    }
    for (key, v) in table {
        if key == "command" || POSITIONAL.contains(&key.as_str()) {
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        match v {
            Value::Bool(true) => argv.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                let parts = items.iter().map(|i| scalar(key, i)).collect::<Result<Vec<_>, _>>()?;
                argv.push(flag);
                argv.push(parts.join(","));
            }
            other => {
                argv.push(flag);
                argv.push(scalar(key, other)?);
            }
        }
    }
    Ok(argv)
}
