//! Rendering of scenario traces as CSV or an aligned text table.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scenario::TraceRow;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TraceFormat {
    #[default]
    Csv,
    Table,
}

impl FromStr for TraceFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "csv" => Ok(TraceFormat::Csv),
            "table" => Ok(TraceFormat::Table),
            other => Err(format!("unknown trace format `{other}` (expected csv or table)")),
        }
    }
}

/// Six fractional digits. Exact binary ties round to even.
pub fn format_real(x: f64) -> String {
    // avoid printing "-0.000000"
    let x = if x == 0.0 { 0.0 } else { x };
    let s = format!("{x:.6}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        return s[1..].to_string();
    }
    s
}

fn header(rows: &[TraceRow]) -> Vec<String> {
    let mut cols = vec!["time".to_string()];
    for (atom, _) in &rows[0].intervals {
        cols.push(format!("{atom}_bel"));
        cols.push(format!("{atom}_pl"));
    }
    cols.extend(["conflict", "status", "hypothesis"].map(String::from));
    cols
}

fn record(row: &TraceRow) -> Vec<String> {
    let mut fields = vec![format_real(row.time)];
    for (_, iv) in &row.intervals {
        fields.push(format_real(iv.support()));
        fields.push(format_real(iv.plausibility()));
    }
    fields.push(format_real(row.cumulative_conflict));
    fields.push(row.status.label().to_string());
    fields.push(row.status.hypothesis().unwrap_or("").to_string());
    fields
}

pub fn emit_trace(rows: &[TraceRow], format: TraceFormat) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let header = header(rows);
    let records: Vec<Vec<String>> = rows.iter().map(record).collect();
    match format {
        TraceFormat::Csv => to_csv(&header, &records),
        TraceFormat::Table => Ok(to_table(&header, &records)),
    }
}

fn to_csv(header: &[String], records: &[Vec<String>]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(header).map_err(csv_err)?;
    for r in records {
        w.write_record(r).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output of utf-8 fields"))
}

fn to_table(header: &[String], records: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            records
                .iter()
                .map(|r| r[c].chars().count())
                .chain([header[c].chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    // the last two columns are text
    let numeric = header.len() - 2;
    let mut out = String::new();
    let line = |fields: &[String], out: &mut String| {
        let cells: Vec<String> = fields
            .iter()
            .enumerate()
            .map(|(c, f)| {
                if c < numeric {
                    format!("{f:>w$}", w = widths[c])
                } else {
                    format!("{f:<w$}", w = widths[c])
                }
            })
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    };
    line(header, &mut out);
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    let _ = writeln!(out, "{}", rule.join("  "));
    for r in records {
        line(r, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decision::{ConflictReason, DecisionStatus};
    use crate::evidence::EvidentialInterval;

    fn row(lake_bel: f64) -> TraceRow {
        TraceRow {
            time: 0.0,
            intervals: vec![
                ("lake".into(), EvidentialInterval::new(lake_bel, 1.0).unwrap()),
                ("tower".into(), EvidentialInterval::new(0.0, 1.0 - lake_bel).unwrap()),
            ],
            cumulative_conflict: 0.0,
            status: DecisionStatus::Decided("lake".into()),
            fused: 2,
        }
    }

    #[test]
    fn csv_layout() {
        let text = emit_trace(&[row(0.8)], TraceFormat::Csv).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "time,lake_bel,lake_pl,tower_bel,tower_pl,conflict,status,hypothesis"
        );
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields[1], "0.800000");
        assert_eq!(fields[6], "decided");
        assert_eq!(fields[7], "lake");
        assert!(text.ends_with('\n') && !text.contains('\r'));
    }

    #[test]
    fn conflicted_rows_have_no_hypothesis() {
        let mut r = row(0.0);
        r.status = DecisionStatus::Conflicted(ConflictReason::Tie);
        let text = emit_trace(&[r], TraceFormat::Csv).unwrap();
        assert!(text.lines().nth(1).unwrap().ends_with(",tie,"));
    }

    #[test]
    fn table_matches_csv_numbers() {
        let rows = [row(0.8), row(0.25)];
        let csv = emit_trace(&rows, TraceFormat::Csv).unwrap();
        let table = emit_trace(&rows, TraceFormat::Table).unwrap();
        let csv_cells: Vec<&str> = csv.lines().skip(1).flat_map(|l| l.split(',')).filter(|c| !c.is_empty()).collect();
        let table_cells: Vec<&str> = table.lines().skip(2).flat_map(|l| l.split_whitespace()).collect();
        assert_eq!(csv_cells, table_cells);
        assert!(table.lines().next().unwrap().starts_with("    time"));
    }

    #[test]
    fn empty_trace() {
        assert!(matches!(emit_trace(&[], TraceFormat::Csv), Err(Error::EmptyTrace)));
    }

    #[test]
    fn rounding() {
        assert_eq!(format_real(0.8), "0.800000");
        assert_eq!(format_real(1.0), "1.000000");
        assert_eq!(format_real(-0.0), "0.000000");
        assert_eq!(format_real(-1e-9), "0.000000");
        assert_eq!(format_real(0.28 / 0.58), "0.482759");
        // 1/128 and 3/128 sit exactly halfway at the sixth digit
        assert_eq!(format_real(1.0 / 128.0), "0.007812");
        assert_eq!(format_real(3.0 / 128.0), "0.023438");
    }

    #[test]
    fn parse_format() {
        assert_eq!("csv".parse::<TraceFormat>().unwrap(), TraceFormat::Csv);
        assert_eq!("table".parse::<TraceFormat>().unwrap(), TraceFormat::Table);
        assert!("json".parse::<TraceFormat>().is_err());
    }
}
