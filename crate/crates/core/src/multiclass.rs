//! Greedy peeling for several inlier classes: fit one ball, remove the rows
//! it covers, fit the next class on what remains.

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::geometry::Ball;
use crate::params::{ceil_count, DerivedParams, Params};
use crate::rgd::recognize_with;

const FRACTION_TOL: f64 = 1e-9;

/// Per-class inlier fractions, in peeling order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassSpec {
    pub fractions: Vec<f64>,
}

impl ClassSpec {
    pub fn new(fractions: Vec<f64>) -> Self {
        ClassSpec { fractions }
    }

    /// Fractions must be positive and sum with `gamma` to at most one.
    pub fn validate(&self, gamma: f64) -> Result<()> {
        if self.fractions.is_empty() {
            return Err(Error::SpecInfeasible("at least one class is required".into()));
        }
        if let Some(f) = self.fractions.iter().find(|f| !(f.is_finite() && **f > 0.0)) {
            return Err(Error::SpecInfeasible(format!("class fraction {f} must be positive")));
        }
        let total: f64 = self.fractions.iter().sum::<f64>() + gamma;
        if total > 1.0 + FRACTION_TOL {
            return Err(Error::SpecInfeasible(format!(
                "fractions plus gamma sum to {total}, above 1"
            )));
        }
        Ok(())
    }
}

/// One peeled class. `inliers` are row indices of the original dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassFit {
    pub ball: Ball,
    pub inliers: Vec<usize>,
    pub score: f64,
    pub candidates_evaluated: usize,
}

/// Seed for class `j`; class 0 keeps the run seed.
fn class_seed(seed: u64, j: usize) -> u64 {
    seed ^ (j as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Counts used for one peel over `remaining` rows: the class takes
/// `m = ceil(fraction * n)` rows and the far pool is sized for the effective
/// outlier ratio `1 - m / remaining`.
pub fn class_counts(p: &Params, fraction: f64, n: usize, remaining: usize) -> Result<DerivedParams> {
    if remaining == 0 {
        return Err(Error::SpecInfeasible("no rows left for the next class".into()));
    }
    let want = ceil_count(fraction * n as f64);
    if want as f64 > remaining as f64 + FRACTION_TOL * n as f64 + 1.0 {
        return Err(Error::SpecInfeasible(format!(
            "class needs {want} rows but only {remaining} remain"
        )));
    }
    let m = want.clamp(1, remaining);
    let gamma_eff = 1.0 - m as f64 / remaining as f64;
    Ok(DerivedParams {
        h: p.height(),
        k: p.pool_size(gamma_eff, remaining),
        s: p.sample_size(),
        m,
        meb_iters: p.meb_iterations(),
    })
}

pub fn peel(ds: &Dataset, spec: &ClassSpec, p: &Params) -> Result<Vec<ClassFit>> {
    p.validate_knobs()?;
    if !(p.gamma.is_finite() && (0.0..1.0).contains(&p.gamma)) {
        return Err(Error::InvalidParams(format!("gamma must lie in [0, 1), got {}", p.gamma)));
    }
    spec.validate(p.gamma)?;

    let n = ds.n();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(spec.fractions.len());
    for (j, &fraction) in spec.fractions.iter().enumerate() {
        let dp = class_counts(p, fraction, n, remaining.len())?;
        let sub = ds.subset(&remaining)?;
        let pj = Params {
            gamma: 1.0 - dp.m as f64 / remaining.len() as f64,
            forest_size: p.forest_size.min(remaining.len()),
            seed: class_seed(p.seed, j),
            ..p.clone()
        };
        let fit = recognize_with(&sub, &pj, &dp)?;
        let covered: Vec<usize> = fit.inliers.iter().map(|&i| remaining[i]).collect();
        let mut taken = vec![false; remaining.len()];
        for &i in &fit.inliers {
            taken[i] = true;
        }
        remaining = remaining
            .iter()
            .zip(&taken)
            .filter(|(_, &t)| !t)
            .map(|(&r, _)| r)
            .collect();
        out.push(ClassFit {
            ball: fit.ball,
            inliers: covered,
            score: fit.score,
            candidates_evaluated: fit.candidates_evaluated,
        });
    }
    Ok(out)
}
