//! CSV reading and writing for labeled records.
//!
//! Header: `angle_deg,flow_m3d,watercut_frac,pattern`, optionally followed by a
//! `provenance` column. Missing provenance means `reconstructed`.

use crate::error::{FlowError, Result};
use crate::kb::FlowPattern;

use super::record::{ExperimentRecord, Provenance};

pub const CSV_HEADER: [&str; 4] = ["angle_deg", "flow_m3d", "watercut_frac", "pattern"];
pub const PROVENANCE_COLUMN: &str = "provenance";

pub fn parse_csv(text: &str) -> Result<Vec<ExperimentRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let header = reader.headers().map_err(|e| csv_error(e, 1))?.clone();
    let fields: Vec<&str> = header.iter().collect();
    let with_provenance = match fields.as_slice() {
        [a, b, c, d] if [*a, *b, *c, *d] == CSV_HEADER => false,
        [a, b, c, d, e] if [*a, *b, *c, *d] == CSV_HEADER && *e == PROVENANCE_COLUMN => true,
        _ => {
            return Err(FlowError::Data {
                line: 1,
                message: format!(
                    "bad header `{}`, expected `{}`",
                    fields.join(","),
                    CSV_HEADER.join(",")
                ),
            })
        }
    };

    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| csv_error(e, 0))?;
        let line = row.position().map_or(0, |p| p.line());
        let err = |message: String| FlowError::Data { line, message };
        let expected = if with_provenance { 5 } else { 4 };
        if row.len() != expected {
            return Err(err(format!(
                "expected {expected} fields, found {}",
                row.len()
            )));
        }
        let num = |i: usize| -> Result<f64> {
            row[i]
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| err(format!("`{}` is not a number ({})", &row[i], CSV_HEADER[i])))
        };
        let pattern: FlowPattern = row[3].parse().map_err(|e| err(format!("{e}")))?;
        let provenance = if with_provenance {
            Provenance::parse(&row[4]).ok_or_else(|| {
                err(format!(
                    "unknown provenance `{}` (expected paper-table or reconstructed)",
                    &row[4]
                ))
            })?
        } else {
            Provenance::Reconstructed
        };
        let record = ExperimentRecord {
            angle: num(0)?,
            flow: num(1)?,
            watercut: num(2)?,
            pattern,
            provenance,
        };
        if let Some(field) = record.out_of_range_field() {
            return Err(err(format!("{field} out of range")));
        }
        records.push(record);
    }
    Ok(records)
}

fn csv_error(e: csv::Error, fallback_line: u64) -> FlowError {
    let line = e.position().map_or(fallback_line, |p| p.line());
    FlowError::Data {
        line,
        message: e.to_string(),
    }
}

/// Writes records with the provenance column, so [`parse_csv`] restores them exactly.
pub fn serialize_csv(records: &[ExperimentRecord]) -> String {
    let mut out = format!("{},{PROVENANCE_COLUMN}\n", CSV_HEADER.join(","));
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.angle,
            r.flow,
            r.watercut,
            r.pattern.label(),
            r.provenance.as_str()
        ));
    }
    out
}
