//! Labeled feature tables: CSV loading and stratified splits.

use std::collections::BTreeMap;
use std::path::Path;

use hyperseed::SeededRng;

use crate::error::{HarnessError, Result};

/// Feature vectors with class labels. Label ordinals follow first appearance.
#[derive(Clone, Debug, PartialEq)]
pub struct TabularDataset {
    pub name: String,
    pub feature_names: Vec<String>,
    pub samples: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    pub label_names: Vec<String>,
}

impl TabularDataset {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn num_labels(&self) -> usize {
        self.label_names.len()
    }

    pub fn subset(&self, rows: &[usize]) -> (Vec<Vec<f64>>, Vec<usize>) {
        (
            rows.iter().map(|&r| self.samples[r].clone()).collect(),
            rows.iter().map(|&r| self.labels[r]).collect(),
        )
    }
}

/// Assigns ordinals to label strings in order of first appearance.
#[derive(Default)]
pub(crate) struct LabelIndex {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl LabelIndex {
    pub(crate) fn ordinal(&mut self, name: &str) -> usize {
        if let Some(&k) = self.index.get(name) {
            return k;
        }
        let k = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), k);
        k
    }

    pub(crate) fn into_names(self) -> Vec<String> {
        self.names
    }
}

/// Loads a headed CSV file. Every column except `label_column` must be numeric.
pub fn load_csv_dataset(path: &Path, label_column: &str) -> Result<TabularDataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;
    let headers = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    if headers.is_empty() || headers.iter().all(str::is_empty) {
        return Err(HarnessError::data(path, "empty file"));
    }
    let label_at = headers
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| HarnessError::data(path, format!("no column named {label_column:?}")))?;
    let feature_names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != label_at)
        .map(|(_, h)| h.to_string())
        .collect();

    let mut labels = LabelIndex::default();
    let mut samples = Vec::new();
    let mut label_ids = Vec::new();
    for (k, record) in reader.records().enumerate() {
        // header is row 1
        let row = k + 2;
        let record = record.map_err(|e| HarnessError::Row {
            path: path.to_path_buf(),
            row,
            message: e.to_string(),
        })?;
        if record.len() != headers.len() {
            return Err(HarnessError::Row {
                path: path.to_path_buf(),
                row,
                message: format!("expected {} fields, found {}", headers.len(), record.len()),
            });
        }
        let mut features = Vec::with_capacity(feature_names.len());
        for (col, cell) in record.iter().enumerate() {
            if col == label_at {
                continue;
            }
            let value: f64 = cell.parse().map_err(|_| HarnessError::Row {
                path: path.to_path_buf(),
                row,
                message: format!("column {:?}: {cell:?} is not a number", &headers[col]),
            })?;
            if !value.is_finite() {
                return Err(HarnessError::Row {
                    path: path.to_path_buf(),
                    row,
                    message: format!("column {:?}: {cell:?} is not finite", &headers[col]),
                });
            }
            features.push(value);
        }
        samples.push(features);
        label_ids.push(labels.ordinal(&record[label_at]));
    }
    if samples.is_empty() {
        return Err(HarnessError::data(path, "no samples"));
    }
    Ok(TabularDataset {
        name: path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        feature_names,
        samples,
        labels: label_ids,
        label_names: labels.into_names(),
    })
}

fn csv_error(path: &Path, e: csv::Error) -> HarnessError {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => HarnessError::io(path, source),
        other => HarnessError::data(path, format!("{other:?}")),
    }
}

/// Splits row indices per class: each class contributes
/// `round(train_fraction * class_size)` rows to training, at least one when
/// the class has two or more rows. Both halves come back sorted.
pub fn stratified_split(
    labels: &[usize],
    train_fraction: f64,
    rng: &mut SeededRng,
) -> (Vec<usize>, Vec<usize>) {
    let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (row, &l) in labels.iter().enumerate() {
        by_class.entry(l).or_default().push(row);
    }
    let mut train = Vec::new();
    let mut test = Vec::new();
    for rows in by_class.values_mut() {
        rng.shuffle(rows);
        let n = rows.len();
        let mut take = (train_fraction * n as f64).round() as usize;
        if n >= 2 {
            take = take.clamp(1, n - 1);
        } else {
            take = n;
        }
        train.extend_from_slice(&rows[..take]);
        test.extend_from_slice(&rows[take..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> std::path::PathBuf {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn loads_a_small_table() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "t.csv", "a,kind,b\n1,x,2\n3,y,4\n5,x,6\n");
        let ds = load_csv_dataset(&p, "kind").unwrap();
        assert_eq!(ds.feature_names, vec!["a", "b"]);
        assert_eq!(
            ds.samples,
            vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]]
        );
        assert_eq!(ds.labels, vec![0, 1, 0]);
        assert_eq!(ds.label_names, vec!["x", "y"]);
        assert_eq!(ds.name, "t");
    }

    #[test]
    fn rejects_malformed_files() {
        let dir = tempfile::tempdir().unwrap();
        let empty = write(&dir, "e.csv", "");
        assert!(load_csv_dataset(&empty, "kind").is_err());
        let header_only = write(&dir, "h.csv", "a,kind\n");
        assert!(load_csv_dataset(&header_only, "kind")
            .unwrap_err()
            .to_string()
            .contains("no samples"));
        let bad = write(&dir, "b.csv", "a,kind\n1,x\noops,y\n");
        let e = load_csv_dataset(&bad, "kind").unwrap_err().to_string();
        assert!(e.contains("row 3"), "{e}");
        let ragged = write(&dir, "r.csv", "a,kind\n1,x\n2,y,3\n");
        assert!(load_csv_dataset(&ragged, "kind")
            .unwrap_err()
            .to_string()
            .contains("row 3"));
        assert!(load_csv_dataset(&bad, "missing").is_err());
        assert!(load_csv_dataset(&dir.path().join("nope.csv"), "kind").is_err());
    }

    #[test]
    fn split_is_stratified_and_seeded() {
        let labels: Vec<usize> = (0..150).map(|k| k / 50).collect();
        let (train, test) = stratified_split(&labels, 0.2, &mut SeededRng::new(1));
        assert_eq!(train.len(), 30);
        assert_eq!(test.len(), 120);
        for c in 0..3 {
            assert_eq!(train.iter().filter(|&&r| labels[r] == c).count(), 10);
        }
        let mut all: Vec<usize> = train.iter().chain(&test).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..150).collect::<Vec<_>>());
        assert_eq!(
            (train.clone(), test),
            stratified_split(&labels, 0.2, &mut SeededRng::new(1))
        );
        assert_ne!(
            train,
            stratified_split(&labels, 0.2, &mut SeededRng::new(2)).0
        );
    }

    #[test]
    fn tiny_classes_keep_a_training_row() {
        let (train, test) = stratified_split(&[0, 0, 1], 0.1, &mut SeededRng::new(3));
        assert_eq!(train.len(), 2);
        assert_eq!(test.len(), 1);
    }
}
