//! CSV writers for projections, similarity landscapes and sweeps.

use std::io::Write;
use std::path::Path;

use hyperseed::{Landscape, ProjectionRow};
use serde::Serialize;

use crate::datasets::TabularDataset;
use crate::error::{HarnessError, Result};
use crate::sweep::SweepRow;

fn csv_string<T: Serialize>(rows: &[T], context: &str) -> Result<String> {
    let err = |source| HarnessError::Csv {
        context: context.to_string(),
        source,
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| err(csv::Error::from(e.into_error())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| HarnessError::io(path, e))
}

/// Header: `sample,i,j,true_label,predicted_label,similarity`.
pub fn projection_csv(rows: &[ProjectionRow]) -> Result<String> {
    if rows.is_empty() {
        return Ok("sample,i,j,true_label,predicted_label,similarity\n".to_string());
    }
    csv_string(rows, "projection")
}

pub fn write_projection_csv(path: &Path, rows: &[ProjectionRow]) -> Result<()> {
    write_text(path, &projection_csv(rows)?)
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    csv_string(rows, "sweep")
}

pub fn write_sweep_csv(path: &Path, rows: &[SweepRow]) -> Result<()> {
    write_text(path, &sweep_csv(rows)?)
}

/// Features followed by a `label` column holding label names.
pub fn write_dataset_csv(path: &Path, ds: &TabularDataset) -> Result<()> {
    let ctx = || path.display().to_string();
    let mut w = csv::Writer::from_path(path).map_err(|source| HarnessError::Csv {
        context: ctx(),
        source,
    })?;
    let mut header: Vec<&str> = ds.feature_names.iter().map(String::as_str).collect();
    header.push("label");
    w.write_record(&header)
        .map_err(|source| HarnessError::Csv {
            context: ctx(),
            source,
        })?;
    for (x, &l) in ds.samples.iter().zip(&ds.labels) {
        let mut rec: Vec<String> = x.iter().map(|v| v.to_string()).collect();
        rec.push(ds.label_names[l].clone());
        w.write_record(&rec).map_err(|source| HarnessError::Csv {
            context: ctx(),
            source,
        })?;
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

/// One line per map row, one column per map column, no header.
pub fn landscape_csv(l: &Landscape) -> String {
    let mut out = Vec::new();
    for i in 0..l.rows {
        let line: Vec<String> = l.row(i).iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(",")).expect("write to vec");
    }
    String::from_utf8(out).expect("ascii")
}

pub fn write_landscape_csv(path: &Path, l: &Landscape) -> Result<()> {
    write_text(path, &landscape_csv(l))
}
