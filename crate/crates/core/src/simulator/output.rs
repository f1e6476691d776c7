//! CSV and JSON renderings of a sweep table.

use std::fmt::Write as _;

use super::point::RunStats;

pub const CSV_HEADER: &str =
    "code,n,k,d,epsilon,trials,logical_errors,bp_converged,osd_invoked,mean_iters,ler,ler_stderr";

pub fn csv_row(s: &RunStats) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        s.code,
        s.n,
        s.k,
        s.d.map(|d| d.to_string()).unwrap_or_default(),
        s.epsilon,
        s.trials,
        s.logical_errors,
        s.bp_converged,
        s.osd_invoked,
        s.mean_iters,
        s.ler,
        s.ler_stderr
    )
}

/// Header plus one row per point. Each line of `preamble` becomes a
/// leading `#` comment.
pub fn to_csv(table: &[RunStats], preamble: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(p) = preamble {
        for line in p.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    out.push_str(CSV_HEADER);
    out.push('\n');
    for s in table {
        out.push_str(&csv_row(s));
        out.push('\n');
    }
    out
}

/// JSON array of objects keyed like the CSV header.
pub fn to_json(table: &[RunStats]) -> String {
    serde_json::to_string_pretty(table).expect("RunStats serializes")
}
