//! JSON records written by the command-line tool.

use serde::{Deserialize, Serialize};

use crate::eval::F1Score;
use crate::multiclass::ClassFit;
use crate::params::{DerivedParams, Params};
use crate::rgd::RecognitionResult;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitRecord {
    pub center: Vec<f64>,
    pub radius: f64,
    pub inliers: Vec<usize>,
    pub score: f64,
    pub candidates: usize,
}

impl From<RecognitionResult> for FitRecord {
    fn from(r: RecognitionResult) -> Self {
        FitRecord {
            center: r.ball.center,
            radius: r.ball.radius,
            inliers: r.inliers,
            score: r.score,
            candidates: r.candidates_evaluated,
        }
    }
}

impl From<ClassFit> for FitRecord {
    fn from(c: ClassFit) -> Self {
        FitRecord {
            center: c.ball.center,
            radius: c.ball.radius,
            inliers: c.inliers,
            score: c.score,
            candidates: c.candidates_evaluated,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsEcho {
    pub gamma: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub mu: f64,
    pub meb_iters: usize,
    pub forest: usize,
    pub rounds: usize,
    pub seed: u64,
    pub height: usize,
    pub sample_size: usize,
}

impl ParamsEcho {
    pub fn new(p: &Params) -> Self {
        ParamsEcho {
            gamma: p.gamma,
            epsilon: p.epsilon,
            delta: p.delta,
            mu: p.mu,
            meb_iters: p.meb_iterations(),
            forest: p.forest_size,
            rounds: p.sequential_rounds,
            seed: p.seed,
            height: p.height(),
            sample_size: p.sample_size(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counts {
    pub top_k: usize,
    pub inlier_count: usize,
}

impl From<&DerivedParams> for Counts {
    fn from(dp: &DerivedParams) -> Self {
        Counts {
            top_k: dp.k,
            inlier_count: dp.m,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    #[serde(flatten)]
    pub fit: FitRecord,
    #[serde(flatten)]
    pub counts: Counts,
    pub params_echo: ParamsEcho,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub millis: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub fraction: f64,
    #[serde(flatten)]
    pub fit: FitRecord,
    #[serde(flatten)]
    pub counts: Counts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiReport {
    pub classes: Vec<ClassReport>,
    pub params_echo: ParamsEcho,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub millis: Option<u64>,
}

/// Inlier sets of either report kind, for evaluation.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AnyReport {
    Multi { classes: Vec<InlierSet> },
    Single { inliers: Vec<usize> },
}

#[derive(Debug, Clone, Deserialize)]
pub struct InlierSet {
    pub inliers: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassEval {
    /// True class the peel is matched to; `None` if it covers only outliers.
    pub label: Option<u32>,
    #[serde(flatten)]
    pub metrics: F1Score,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiEval {
    pub classes: Vec<ClassEval>,
    pub average_f1: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn millis_only_when_set() {
        let rep = FitReport {
            fit: FitRecord {
                center: vec![0.0],
                radius: 1.0,
                inliers: vec![0],
                score: 0.0,
                candidates: 1,
            },
            counts: Counts { top_k: 1, inlier_count: 1 },
            params_echo: ParamsEcho::new(&Params::default()),
            millis: None,
        };
        let s = serde_json::to_string(&rep).unwrap();
        assert!(!s.contains("millis"));
        assert!(s.contains("\"inlier_count\":1"));
        let back: FitReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rep);
        assert!(matches!(
            serde_json::from_str::<AnyReport>(&s).unwrap(),
            AnyReport::Single { .. }
        ));
    }
}
