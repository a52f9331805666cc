//! Plain-text reports with stable `key: value` lines.
//!
//! Purpose: one output shape for every verb.  Identical (file, flags, seed)
//! invocations must produce byte-identical text, so nothing time-, locale-,
//! or machine-dependent is ever pushed into a report.

use std::fmt::Display;

pub struct Report {
    lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            lines: vec![format!("command: {command}")],
        }
    }

    pub fn push(&mut self, key: &str, value: impl Display) {
        self.lines.push(format!("{key}: {value}"));
    }

    /// Edge-id list value: space-separated ids, or `none` when absent or empty.
    pub fn push_ids(&mut self, key: &str, ids: Option<&[usize]>) {
        let value = match ids {
            Some(ids) if !ids.is_empty() => ids
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" "),
            _ => "none".to_string(),
        };
        self.push(key, value);
    }

    pub fn text(&self) -> String {
        let mut text = self.lines.join("\n");
        text.push('\n');
        text
    }

    pub fn print(&self) {
        print!("{}", self.text());
    }
}
