//! Flat key=value configuration files for sweep specs.
//!
//! Lines are `key = value`; `#` starts a comment; blank lines are ignored.
//! Keys mirror the sweep command-line flags.

use std::collections::HashMap;

/// Parsed key=value pairs; values stay strings until merged with the CLI.
#[derive(Debug, Default)]
pub struct ConfigFile {
    entries: HashMap<String, String>,
}

const KNOWN_KEYS: &[&str] = &[
    "kind",
    "n",
    "j",
    "t",
    "pair-sep",
    "axis1-min",
    "axis1-max",
    "axis1-steps",
    "axis2-min",
    "axis2-max",
    "axis2-steps",
    "out",
    "format",
];

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!(
                    "line {}: expected key=value, got {line:?}",
                    lineno + 1
                ));
            };
            let key = key.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key {key:?}", lineno + 1));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn get_parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, String> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| format!("config key {key:?}: cannot parse {raw:?}")),
        }
    }
}
