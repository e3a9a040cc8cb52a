//! Classification metrics.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub correct: usize,
    pub total: usize,
    pub accuracy: f64,
    /// Recall per true class; absent for classes without test samples.
    pub per_class: Vec<Option<f64>>,
    /// `confusion[true][predicted]`.
    pub confusion: Vec<Vec<u64>>,
}

pub fn evaluate(truth: &[usize], predicted: &[usize], num_labels: usize) -> Metrics {
    assert_eq!(truth.len(), predicted.len(), "one prediction per sample");
    let mut confusion = vec![vec![0u64; num_labels]; num_labels];
    for (&t, &p) in truth.iter().zip(predicted) {
        confusion[t][p] += 1;
    }
    let correct = truth.iter().zip(predicted).filter(|(t, p)| t == p).count();
    let total = truth.len();
    let per_class = confusion
        .iter()
        .enumerate()
        .map(|(c, row)| {
            let n: u64 = row.iter().sum();
            (n > 0).then(|| row[c] as f64 / n as f64)
        })
        .collect();
    Metrics {
        correct,
        total,
        accuracy: if total == 0 {
            0.0
        } else {
            correct as f64 / total as f64
        },
        per_class,
        confusion,
    }
}

/// Mean and population standard deviation.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}
