//! Precision, recall and F1 with inliers as the positive class.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct F1Score {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Set when nothing was predicted; precision is then reported as 0.
    pub empty_prediction: bool,
}

fn mark(set: &[usize], n: usize) -> Result<Vec<bool>> {
    let mut bits = vec![false; n];
    for &i in set {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        bits[i] = true;
    }
    Ok(bits)
}

pub fn f1(predicted: &[usize], truth: &[usize], n: usize) -> Result<F1Score> {
    let p = mark(predicted, n)?;
    let t = mark(truth, n)?;
    let np = p.iter().filter(|&&b| b).count();
    let nt = t.iter().filter(|&&b| b).count();
    let hit = p.iter().zip(&t).filter(|(a, b)| **a && **b).count();
    let precision = if np == 0 { 0.0 } else { hit as f64 / np as f64 };
    let recall = if nt == 0 { 0.0 } else { hit as f64 / nt as f64 };
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    Ok(F1Score {
        precision,
        recall,
        f1,
        empty_prediction: np == 0,
    })
}

/// Rows carrying `label`.
pub fn rows_with(labels: &[u32], label: u32) -> Vec<usize> {
    labels
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == label)
        .map(|(i, _)| i)
        .collect()
}

/// Rows with any inlier label (`>= 1`).
pub fn inlier_rows(labels: &[u32]) -> Vec<usize> {
    labels
        .iter()
        .enumerate()
        .filter(|(_, &l)| l >= 1)
        .map(|(i, _)| i)
        .collect()
}

/// Most frequent inlier label among `predicted`; ties go to the smaller
/// label. `None` if no predicted row has an inlier label.
pub fn majority_class(predicted: &[usize], labels: &[u32]) -> Option<u32> {
    let max = *labels.iter().max()?;
    let mut counts = vec![0usize; max as usize + 1];
    for &i in predicted {
        if let Some(&l) = labels.get(i) {
            counts[l as usize] += 1;
        }
    }
    (1..=max)
        .filter(|&l| counts[l as usize] > 0)
        .max_by(|&a, &b| counts[a as usize].cmp(&counts[b as usize]).then(b.cmp(&a)))
}

/// F1 of one peeled class against the true class it mostly covers.
pub fn class_f1(predicted: &[usize], labels: &[u32]) -> Result<(Option<u32>, F1Score)> {
    let n = labels.len();
    match majority_class(predicted, labels) {
        Some(l) => Ok((Some(l), f1(predicted, &rows_with(labels, l), n)?)),
        None => Ok((None, f1(predicted, &[], n)?)),
    }
}
