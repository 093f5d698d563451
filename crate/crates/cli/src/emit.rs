//! CSV and JSON emission of sweep records and covariance matrices.
//! Output is byte-deterministic: fixed column order, fixed float formatting
//! (15 significant digits in CSV).

use gausschain::{CovarianceMatrix, SweepRecord};
use serde_json::json;
use std::io::Write;

use crate::config::Format;
use crate::CliError;

fn fmt(x: f64) -> String {
    format!("{x:.14e}")
}

/// Serializes records as CSV: header `tau,pair,log_negativity[,block
/// fields]`, one row per (grid point, pair), grid order.
pub fn records_to_csv(records: &[SweepRecord], with_blocks: bool) -> String {
    let mut out = String::new();
    out.push_str("tau,pair,log_negativity");
    if with_blocks {
        for b in ["c12", "c13"] {
            for e in ["qq", "qp", "pq", "pp"] {
                out.push_str(&format!(",{b}_{e}"));
            }
        }
    }
    out.push('\n');
    for rec in records {
        for &((a, b), lam) in &rec.entries {
            out.push_str(&format!("{},{a}-{b},{}", fmt(rec.tau), fmt(lam)));
            if with_blocks {
                let (c12, c13) = rec.blocks.expect("blocks recorded");
                for m in [c12, c13] {
                    for r in 0..2 {
                        for c in 0..2 {
                            out.push(',');
                            out.push_str(&fmt(m[(r, c)]));
                        }
                    }
                }
            }
            out.push('\n');
        }
    }
    out
}

/// Serializes records as a JSON array of per-grid-point objects.
pub fn records_to_json(records: &[SweepRecord]) -> String {
    let array: Vec<serde_json::Value> = records
        .iter()
        .map(|rec| {
            let entries: Vec<serde_json::Value> = rec
                .entries
                .iter()
                .map(|&((a, b), lam)| json!({"pair": [a, b], "log_negativity": lam}))
                .collect();
            let mut obj = json!({"tau": rec.tau, "entries": entries});
            if let Some((c12, c13)) = rec.blocks {
                let block = |m: nalgebra::Matrix2<f64>| {
                    json!([[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]])
                };
                obj["c12"] = block(c12);
                obj["c13"] = block(c13);
            }
            obj
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&array).expect("serializable records");
    text.push('\n');
    text
}

/// Serializes a covariance matrix: CSV rows `i,j,value` (1-based, full
/// matrix) or a JSON object with the dense matrix.
pub fn covariance_to_text(v: &CovarianceMatrix, tau: f64, format: Format) -> String {
    let m = v.matrix();
    match format {
        Format::Csv => {
            let mut out = String::from("i,j,value\n");
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    out.push_str(&format!("{},{},{}\n", i + 1, j + 1, fmt(m[(i, j)])));
                }
            }
            out
        }
        Format::Json => {
            let rows: Vec<Vec<f64>> = (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
                .collect();
            let mut text = serde_json::to_string_pretty(&json!({
                "modes": v.modes(),
                "tau": tau,
                "v": rows,
            }))
            .expect("serializable matrix");
            text.push('\n');
            text
        }
    }
}

/// Writes to the path, or to stdout when no path is given. Failures carry
/// the path in the message.
pub fn write_output(text: &str, path: Option<&str>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("writing {p}: {e}"))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("writing stdout: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gausschain::SweepRecord;

    #[test]
    fn empty_records_give_header_only() {
        assert_eq!(records_to_csv(&[], false), "tau,pair,log_negativity\n");
    }

    #[test]
    fn csv_rows_per_pair() {
        let rec = SweepRecord {
            tau: 0.5,
            entries: vec![((1, 2), 0.25), ((1, 3), 0.0)],
            blocks: None,
        };
        let csv = records_to_csv(&[rec], false);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("5.00000000000000e-1,1-2,"));
        assert!(lines[2].contains(",1-3,"));
    }

    #[test]
    fn json_is_parseable() {
        let rec = SweepRecord {
            tau: 1.0,
            entries: vec![((1, 2), 0.1)],
            blocks: Some((nalgebra::Matrix2::identity(), nalgebra::Matrix2::zeros())),
        };
        let text = records_to_json(&[rec]);
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed[0]["tau"], 1.0);
        assert_eq!(parsed[0]["c12"][0][0], 1.0);
    }
}
