//! Edge-list and metadata parsing.
//!
//! Edge list: one `source target timestamp` record per line, separated by
//! whitespace, commas or tabs (auto-detected from the first record). Metadata:
//! one `node,label` record per line. Lines starting with `#` are comments; LF
//! and CRLF endings are both accepted.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::TemporalEdge;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Delimiter {
    Whitespace,
    Comma,
    Tab,
}

impl Delimiter {
    fn detect(line: &str) -> Delimiter {
        if line.contains('\t') {
            Delimiter::Tab
        } else if line.contains(',') {
            Delimiter::Comma
        } else {
            Delimiter::Whitespace
        }
    }

    fn split<'a>(&self, line: &'a str) -> Vec<&'a str> {
        match self {
            Delimiter::Whitespace => line.split_whitespace().collect(),
            Delimiter::Comma => line.split(',').map(str::trim).collect(),
            Delimiter::Tab => line.split('\t').map(str::trim).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct IngestOptions {
    /// `None` detects the delimiter from the first record.
    pub delimiter: Option<Delimiter>,
    pub has_header: bool,
    pub source_column: usize,
    pub target_column: usize,
    pub timestamp_column: usize,
    /// Raw timestamps are divided (flooring) by this bin width, e.g. 20 for
    /// 20-second contact intervals or 86400 to turn epoch seconds into days.
    pub time_bin: i64,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions {
            delimiter: None,
            has_header: false,
            source_column: 0,
            target_column: 1,
            timestamp_column: 2,
            time_bin: 1,
        }
    }
}

impl IngestOptions {
    pub fn validate(&self) -> Result<()> {
        let cols = [self.source_column, self.target_column, self.timestamp_column];
        if cols[0] == cols[1] || cols[0] == cols[2] || cols[1] == cols[2] {
            return Err(Error::InvalidConfig(format!(
                "column indices must be distinct, got {cols:?}"
            )));
        }
        if self.time_bin < 1 {
            return Err(Error::InvalidConfig("time_bin must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IssueKind {
    MissingColumns { expected: usize, found: usize },
    NonIntegerTimestamp { value: String },
    InvalidUtf8,
    DuplicateNode { node: String },
}

impl fmt::Display for IssueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IssueKind::MissingColumns { expected, found } => {
                write!(f, "expected at least {expected} columns, found {found}")
            }
            IssueKind::NonIntegerTimestamp { value } => {
                write!(f, "timestamp {value:?} is not an integer")
            }
            IssueKind::InvalidUtf8 => write!(f, "line is not valid UTF-8"),
            IssueKind::DuplicateNode { node } => {
                write!(f, "node {node:?} listed again, later label wins")
            }
        }
    }
}

/// A skipped or suspicious input line (1-based line number).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineIssue {
    pub line: usize,
    #[serde(flatten)]
    pub kind: IssueKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedEdges {
    pub edges: Vec<TemporalEdge>,
    pub issues: Vec<LineIssue>,
}

/// Yields `(line_number, content)` for non-empty, non-comment lines.
fn records(text: &[u8]) -> impl Iterator<Item = (usize, std::result::Result<&str, ()>)> {
    text.split(|&b| b == b'\n').enumerate().filter_map(|(i, raw)| {
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        match std::str::from_utf8(raw) {
            Ok(s) => {
                let s = s.trim();
                if s.is_empty() || s.starts_with('#') {
                    None
                } else {
                    Some((i + 1, Ok(s)))
                }
            }
            Err(_) => Some((i + 1, Err(()))),
        }
    })
}

pub fn parse_edge_list(text: &[u8], opts: &IngestOptions) -> Result<ParsedEdges> {
    opts.validate()?;
    let needed = opts
        .source_column
        .max(opts.target_column)
        .max(opts.timestamp_column)
        + 1;
    let mut delimiter = opts.delimiter;
    let mut edges = Vec::new();
    let mut issues = Vec::new();
    let mut header_pending = opts.has_header;

    for (line, record) in records(text) {
        let Ok(record) = record else {
            issues.push(LineIssue {
                line,
                kind: IssueKind::InvalidUtf8,
            });
            continue;
        };
        let delim = *delimiter.get_or_insert_with(|| Delimiter::detect(record));
        if header_pending {
            header_pending = false;
            continue;
        }
        let fields = delim.split(record);
        if fields.len() < needed {
            issues.push(LineIssue {
                line,
                kind: IssueKind::MissingColumns {
                    expected: needed,
                    found: fields.len(),
                },
            });
            continue;
        }
        let raw_t = fields[opts.timestamp_column];
        let Ok(t) = raw_t.parse::<i64>() else {
            issues.push(LineIssue {
                line,
                kind: IssueKind::NonIntegerTimestamp {
                    value: raw_t.to_owned(),
                },
            });
            continue;
        };
        edges.push(TemporalEdge::new(
            fields[opts.source_column],
            fields[opts.target_column],
            t.div_euclid(opts.time_bin),
        ));
    }

    if edges.is_empty() {
        return Err(Error::NoValidEdges { issues });
    }
    Ok(ParsedEdges { edges, issues })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedMetadata {
    pub labels: BTreeMap<String, String>,
    pub issues: Vec<LineIssue>,
}

/// Parses `node,label` records. Nothing here is fatal: malformed lines and
/// repeated nodes (last label wins) are reported.
pub fn parse_metadata(text: &[u8]) -> ParsedMetadata {
    let mut labels = BTreeMap::new();
    let mut issues = Vec::new();
    let mut delimiter = None;
    for (line, record) in records(text) {
        let Ok(record) = record else {
            issues.push(LineIssue {
                line,
                kind: IssueKind::InvalidUtf8,
            });
            continue;
        };
        let delim = *delimiter.get_or_insert_with(|| Delimiter::detect(record));
        let fields = delim.split(record);
        if fields.len() < 2 || fields[0].is_empty() {
            issues.push(LineIssue {
                line,
                kind: IssueKind::MissingColumns {
                    expected: 2,
                    found: fields.len(),
                },
            });
            continue;
        }
        if labels
            .insert(fields[0].to_owned(), fields[1].to_owned())
            .is_some()
        {
            issues.push(LineIssue {
                line,
                kind: IssueKind::DuplicateNode {
                    node: fields[0].to_owned(),
                },
            });
        }
    }
    ParsedMetadata { labels, issues }
}

/// Canonical text form: `source target timestamp\n` per edge.
pub fn write_edge_list(edges: &[TemporalEdge]) -> String {
    let mut out = String::with_capacity(edges.len() * 16);
    for e in edges {
        out.push_str(&e.source);
        out.push(' ');
        out.push_str(&e.target);
        out.push(' ');
        out.push_str(&e.timestamp.to_string());
        out.push('\n');
    }
    out
}
