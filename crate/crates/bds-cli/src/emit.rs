//! Output plumbing shared by the subcommands. Emissions are deterministic:
//! callers pre-sort rows, rationals render through exact Display, and JSON
//! goes through serde with fixed field order.

use bds_core::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// tab-separated values, LF line endings, UTF-8
    Tsv,
    /// schema-versioned JSON
    Json,
}

/// Comma-join a label vector; empty vectors render as "-" so TSV cells are
/// never empty.
pub fn join_rats(labels: &[Rat]) -> String {
    if labels.is_empty() {
        "-".to_string()
    } else {
        labels
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub fn join_strs(labels: &[String]) -> String {
    if labels.is_empty() {
        "-".to_string()
    } else {
        labels.join(",")
    }
}

/// Render an optional degree the way the atlas does.
pub fn degree_cell(d: Option<usize>) -> String {
    match d {
        Some(d) => d.to_string(),
        None => "none".to_string(),
    }
}

pub fn print_json<T: serde::Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("serializable emission");
    println!("{text}");
}
