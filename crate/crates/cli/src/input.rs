//! Reading instance files.
//!
//! A file holds either a `"kind"`-tagged object or the bare payload for the
//! kind a command expects. A top-level `"generator"` field (the banner this
//! tool writes) is ignored, so any output object can be fed back in.

use std::fs;
use std::io::Read;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

use crate::CliError;

pub const BANNER_FIELD: &str = "generator";

fn read_text(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// The object in `path` with the banner removed, plus its `"kind"` tag if
/// present.
pub fn read_object(path: &Path) -> Result<(Option<String>, Map<String, Value>), CliError> {
    let text = read_text(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
    let Value::Object(mut obj) = value else {
        return Err(CliError::Schema(format!("{}: expected a JSON object", path.display())));
    };
    obj.remove(BANNER_FIELD);
    let kind = match obj.remove("kind") {
        None => None,
        Some(Value::String(k)) => Some(k),
        Some(other) => return Err(CliError::Schema(format!("{}: bad kind {other}", path.display()))),
    };
    Ok((kind, obj))
}

pub fn decode<T: DeserializeOwned>(path: &Path, obj: Map<String, Value>) -> Result<T, CliError> {
    serde_json::from_value(Value::Object(obj)).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

/// Loads a payload of kind `kind`, tagged or bare.
pub fn load<T: DeserializeOwned>(path: &Path, kind: &str) -> Result<T, CliError> {
    let (tag, obj) = read_object(path)?;
    if let Some(tag) = tag {
        if tag != kind {
            return Err(CliError::Schema(format!(
                "{}: expected kind {kind:?}, found {tag:?}",
                path.display()
            )));
        }
    }
    decode(path, obj)
}
