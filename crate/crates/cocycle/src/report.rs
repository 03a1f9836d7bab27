//! Reports: `key: value` lines on stdout, a JSON document for `--out`.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;
use crate::format::FORMAT;

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    fields: Vec<(String, Value, bool)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), fields: Vec::new() }
    }

    /// A field shown on stdout and stored in the JSON document.
    pub fn show(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.push(key, value, true)
    }

    /// A field stored only in the JSON document (tables, cochains).
    pub fn detail(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.push(key, value, false)
    }

    fn push(&mut self, key: &str, value: impl Serialize, shown: bool) -> &mut Self {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.fields.push((key.into(), v, shown));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _, _)| k == key).map(|(_, v, _)| v)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, v, shown) in &self.fields {
            if *shown {
                let rendered = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out.push_str(&format!("{k}: {rendered}\n"));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("format".into(), FORMAT.into());
        m.insert("kind".into(), "report".into());
        m.insert("command".into(), self.command.clone().into());
        for (k, v, _) in &self.fields {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    let name = path.file_name().ok_or_else(|| CliError::Parse(format!("{} is not a file path", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_shows_only_summary_fields() {
        let mut r = Report::new("psi");
        r.show("trivializable", false).detail("table", vec![1, 2, 3]).show("note", "plain");
        assert_eq!(r.to_text(), "command: psi\ntrivializable: false\nnote: plain\n");
        assert_eq!(r.to_json()["table"], serde_json::json!([1, 2, 3]));
        assert_eq!(r.to_json()["format"], 1);
    }
}
