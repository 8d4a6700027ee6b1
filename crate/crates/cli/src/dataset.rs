//! Training data as CSV: header `x0,x1,…,x{k-1},label`, one point per row.
//! Labels must be 0 or 1; feature vectors must not be all zero.

use std::path::Path;

use maqa_core::qslp::{DataPoint, ToyDataset};

use crate::error::CliError;
use crate::report::{format_f64, write_csv};

pub fn read_dataset(path: &Path) -> Result<ToyDataset, CliError> {
    let err = |message: String| CliError::Dataset {
        path: path.to_path_buf(),
        message,
    };
    let mut reader = csv::Reader::from_path(path).map_err(|e| err(e.to_string()))?;
    let header = reader.headers().map_err(|e| err(e.to_string()))?.clone();
    let k = header
        .len()
        .checked_sub(1)
        .filter(|&k| k > 0)
        .ok_or_else(|| err("header needs at least one feature column and a label column".into()))?;
    for (i, name) in header.iter().enumerate() {
        let want = if i == k {
            "label".to_string()
        } else {
            format!("x{i}")
        };
        if name.trim() != want {
            return Err(err(format!("column {i} is `{name}`, expected `{want}`")));
        }
    }
    let mut points = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let line = row + 2;
        let record = record.map_err(|e| err(e.to_string()))?;
        let values = record
            .iter()
            .map(|v| v.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| err(format!("line {line}: {e}")))?;
        let (label, x) = values.split_last().expect("record has k + 1 fields");
        points.push(DataPoint {
            x: x.to_vec(),
            label: *label,
        });
    }
    if points.is_empty() {
        return Err(err("no data rows".into()));
    }
    ToyDataset::new(points).map_err(|e| err(e.to_string()))
}

pub fn write_dataset(path: &Path, data: &ToyDataset) -> Result<(), CliError> {
    let k = data.points().first().map_or(0, |p| p.x.len());
    let mut header: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
    header.push("label".into());
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows: Vec<Vec<String>> = data
        .points()
        .iter()
        .map(|p| {
            p.x.iter()
                .chain(std::iter::once(&p.label))
                .map(|&v| format_f64(v))
                .collect()
        })
        .collect();
    write_csv(path, &header, &rows)
}
