//! Job files: line-oriented blocks.
//!
//! ```text
//! # comment
//! chart {
//!   vars: x, y
//!   ideal: x^2 + y^2 - 1        # optional, comma separated
//!   invert: x                    # optional
//! }
//! foliation {
//!   field: 1, y                  # one line per field, one entry per chart variable
//! }
//! foliation {
//!   leaf: x                      # graph form: leaf variables ...
//!   row: y                       # ... and one row per leaf variable over the rest
//! }
//! params { vars: c }
//! variety { ideal: x*y }
//! family { f: x^3 - x^2 - l*x^2 + l*x; x: x; base: l }
//! task { k: 1; mu: heuristic; subset-cap: 2000; minor-budget: 200000; point: 0, 0 }
//! task { lambda: 3/7; prec: 12; order: 4; form: 1; pole: 1 }
//! ```
//!
//! Inside a block, entries end at a newline or `;`. A block may sit on one
//! line. Values are comma-separated where a list is expected.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "job line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for JobError {}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, JobError> {
    Err(JobError {
        line,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Block {
    pub line: usize,
    /// Entries in file order; keys may repeat.
    pub entries: Vec<(String, String, usize)>,
}

impl Block {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _, _)| k == key)
            .map(|(_, v, _)| v.as_str())
    }

    pub fn all(&self, key: &str) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(k, _, _)| k == key)
            .map(|(_, v, _)| v.as_str())
            .collect()
    }

    pub fn list(&self, key: &str) -> Vec<String> {
        self.get(key).map(split_list).unwrap_or_default()
    }

    fn check_keys(&self, name: &str, allowed: &[&str]) -> Result<(), JobError> {
        for (k, _, line) in &self.entries {
            if !allowed.contains(&k.as_str()) {
                return err(*line, format!("unknown key `{k}` in block `{name}`"));
            }
        }
        Ok(())
    }
}

/// Splits on commas, dropping empty items.
pub fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect()
}

const BLOCKS: &[(&str, &[&str])] = &[
    ("chart", &["vars", "ideal", "invert"]),
    ("foliation", &["field", "leaf", "row"]),
    ("params", &["vars"]),
    ("variety", &["ideal"]),
    ("family", &["f", "x", "base"]),
    (
        "task",
        &[
            "k", "mu", "subset-cap", "minor-budget", "point", "lambda", "prec", "order", "form",
            "pole",
        ],
    ),
];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JobFile {
    pub blocks: BTreeMap<String, Block>,
}

impl JobFile {
    pub fn parse(text: &str) -> Result<JobFile, JobError> {
        let mut blocks = BTreeMap::new();
        let mut current: Option<(String, Block)> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            let mut rest = content;
            while !rest.is_empty() {
                if current.is_none() {
                    let Some(open) = rest.find('{') else {
                        return err(line, format!("expected `name {{`, found `{rest}`"));
                    };
                    let name = rest[..open].trim();
                    if !BLOCKS.iter().any(|(b, _)| *b == name) {
                        return err(line, format!("unknown block `{name}`"));
                    }
                    if blocks.contains_key(name) {
                        return err(line, format!("block `{name}` appears twice"));
                    }
                    current = Some((
                        name.to_string(),
                        Block {
                            line,
                            entries: Vec::new(),
                        },
                    ));
                    rest = rest[open + 1..].trim_start();
                    continue;
                }
                let close = rest.find('}');
                let end = rest.find(';');
                let (item, next, closes) = match (close, end) {
                    (Some(c), Some(e)) if e < c => (&rest[..e], &rest[e + 1..], false),
                    (Some(c), _) => (&rest[..c], &rest[c + 1..], true),
                    (None, Some(e)) => (&rest[..e], &rest[e + 1..], false),
                    (None, None) => (rest, "", false),
                };
                let item = item.trim();
                if !item.is_empty() {
                    let Some((k, v)) = item.split_once(':') else {
                        return err(line, format!("expected `key: value`, found `{item}`"));
                    };
                    let (_, block) = current.as_mut().expect("inside a block");
                    block
                        .entries
                        .push((k.trim().to_string(), v.trim().to_string(), line));
                }
                if closes {
                    let (name, block) = current.take().expect("inside a block");
                    let keys = BLOCKS.iter().find(|(b, _)| *b == name).expect("known").1;
                    block.check_keys(&name, keys)?;
                    blocks.insert(name, block);
                }
                rest = next.trim_start();
            }
        }
        if let Some((name, block)) = current {
            return err(block.line, format!("block `{name}` is not closed"));
        }
        Ok(JobFile { blocks })
    }

    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.get(name)
    }

    pub fn require(&self, name: &str) -> Result<&Block, JobError> {
        self.blocks.get(name).map_or_else(
            || err(0, format!("missing block `{name}`")),
            Ok,
        )
    }

    /// Fails when a block outside `allowed` is present.
    pub fn only(&self, allowed: &[&str]) -> Result<(), JobError> {
        for (name, b) in &self.blocks {
            if !allowed.contains(&name.as_str()) {
                return err(b.line, format!("block `{name}` is not used by this command"));
            }
        }
        Ok(())
    }

    pub fn task(&self, key: &str) -> Option<&str> {
        self.block("task").and_then(|b| b.get(key))
    }
}
