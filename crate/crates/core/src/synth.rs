//! Labeled synthetic data: a dense normal inlier cluster with normal and
//! uniform outlier groups, and a multi-class variant.
//!
//! Labels are `0` for outliers and `j >= 1` for inlier class `j`. Rows are
//! shuffled so that row order carries no label information.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// Outlier group proportions: three normal groups, then the uniform one.
pub const TOY_GROUPS: [usize; 4] = [800, 1200, 800, 1200];
pub const TOY_INLIERS: usize = 6000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub inlier_std: f64,
    pub outlier_std: f64,
    /// Distance between the inlier mean and each normal outlier group's mean.
    pub separation: f64,
    /// Spacing between neighboring class means in multi-class data.
    pub class_separation: f64,
    /// Side of the axis-aligned box holding the uniform outliers, centered
    /// on the inlier mean.
    pub box_side: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            inlier_std: 1.0,
            outlier_std: 1.0,
            separation: 10.0,
            class_separation: 20.0,
            box_side: 40.0,
        }
    }
}

struct Builder {
    rng: ChaCha8Rng,
    d: usize,
    rows: Vec<f64>,
    labels: Vec<u32>,
}

impl Builder {
    fn new(seed: u64, d: usize, cap: usize) -> Self {
        Builder {
            rng: ChaCha8Rng::seed_from_u64(seed),
            d,
            rows: Vec::with_capacity(cap * d),
            labels: Vec::with_capacity(cap),
        }
    }

    fn normal(&mut self, count: usize, mean: &[f64], std: f64, label: u32) {
        for _ in 0..count {
            for &m in mean {
                let z: f64 = self.rng.sample(StandardNormal);
                self.rows.push(m + std * z);
            }
            self.labels.push(label);
        }
    }

    fn uniform(&mut self, count: usize, center: &[f64], side: f64) {
        let half = side / 2.0;
        for _ in 0..count {
            for &c in center {
                self.rows.push(self.rng.random_range(c - half..=c + half));
            }
            self.labels.push(0);
        }
    }

    fn finish(mut self) -> Result<(Dataset, Vec<u32>)> {
        let n = self.labels.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut self.rng);
        let mut data = Vec::with_capacity(self.rows.len());
        let mut labels = Vec::with_capacity(n);
        for &i in &order {
            data.extend_from_slice(&self.rows[i * self.d..(i + 1) * self.d]);
            labels.push(self.labels[i]);
        }
        Ok((Dataset::new(data, n, self.d)?, labels))
    }
}

/// Unit direction for normal outlier group `j` of three.
fn group_direction(j: usize, d: usize) -> Vec<f64> {
    let mut u = vec![0.0; d];
    if d == 1 {
        u[0] = [1.0, -1.0, 2.0][j];
    } else {
        let theta = std::f64::consts::TAU * j as f64 / 3.0;
        u[0] = theta.cos();
        u[1] = theta.sin();
    }
    u
}

fn single_class(
    inliers: usize,
    groups: [usize; 4],
    d: usize,
    cfg: &SynthConfig,
    seed: u64,
) -> Result<(Dataset, Vec<u32>)> {
    let total = inliers + groups.iter().sum::<usize>();
    let mut b = Builder::new(seed, d, total);
    let origin = vec![0.0; d];
    b.normal(inliers, &origin, cfg.inlier_std, 1);
    for (j, &count) in groups[..3].iter().enumerate() {
        let mean: Vec<f64> = group_direction(j, d)
            .into_iter()
            .map(|u| u * cfg.separation)
            .collect();
        b.normal(count, &mean, cfg.outlier_std, 0);
    }
    b.uniform(groups[3], &origin, cfg.box_side);
    b.finish()
}

/// Splits `outliers` into four groups in the 2:3:2:3 proportions of the toy
/// instance; rounding slack goes to the last group.
fn split_groups(outliers: usize) -> [usize; 4] {
    let a = outliers * 2 / 10;
    let b = outliers * 3 / 10;
    [a, b, a, outliers - 2 * a - b]
}

/// 10000 points in the plane: 6000 inliers and outlier groups of
/// 800, 1200, 800 (normal) and 1200 (uniform).
pub fn gen_toy_2d(seed: u64) -> (Dataset, Vec<u32>) {
    gen_toy_2d_with(seed, &SynthConfig::default()).expect("fixed sizes are valid")
}

pub fn gen_toy_2d_with(seed: u64, cfg: &SynthConfig) -> Result<(Dataset, Vec<u32>)> {
    single_class(TOY_INLIERS, TOY_GROUPS, 2, cfg, seed)
}

pub fn gen_highdim(n: usize, d: usize, gamma: f64, seed: u64) -> Result<(Dataset, Vec<u32>)> {
    gen_highdim_with(n, d, gamma, seed, &SynthConfig::default())
}

pub fn gen_highdim_with(
    n: usize,
    d: usize,
    gamma: f64,
    seed: u64,
    cfg: &SynthConfig,
) -> Result<(Dataset, Vec<u32>)> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidArgs("need n >= 1 and d >= 1".into()));
    }
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::InvalidArgs(format!("gamma must lie in (0, 1), got {gamma}")));
    }
    let outliers = (gamma * n as f64).round() as usize;
    single_class(n - outliers, split_groups(outliers), d, cfg, seed)
}

pub fn gen_multiclass(
    n: usize,
    d: usize,
    fractions: &[f64],
    gamma: f64,
    seed: u64,
) -> Result<(Dataset, Vec<u32>)> {
    gen_multiclass_with(n, d, fractions, gamma, seed, &SynthConfig::default())
}

/// One normal cluster per class, means spaced `class_separation` apart along the
/// first axis, plus uniform outliers in a box around their centroid.
pub fn gen_multiclass_with(
    n: usize,
    d: usize,
    fractions: &[f64],
    gamma: f64,
    seed: u64,
    cfg: &SynthConfig,
) -> Result<(Dataset, Vec<u32>)> {
    if n == 0 || d == 0 || fractions.is_empty() {
        return Err(Error::InvalidArgs("need n >= 1, d >= 1 and at least one class".into()));
    }
    if fractions.iter().any(|f| f.is_nan() || *f <= 0.0) || !(0.0..1.0).contains(&gamma) {
        return Err(Error::InvalidArgs("fractions must be positive and gamma in [0, 1)".into()));
    }
    let total: f64 = fractions.iter().sum::<f64>() + gamma;
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgs(format!("fractions plus gamma sum to {total}, not 1")));
    }
    let sizes: Vec<usize> = fractions.iter().map(|f| (f * n as f64).round() as usize).collect();
    let inliers: usize = sizes.iter().sum();
    if inliers > n {
        return Err(Error::InvalidArgs("class sizes exceed n after rounding".into()));
    }
    let mut b = Builder::new(seed, d, n);
    let spread = cfg.class_separation * (fractions.len() - 1) as f64;
    for (j, &count) in sizes.iter().enumerate() {
        let mut mean = vec![0.0; d];
        mean[0] = j as f64 * cfg.class_separation - spread / 2.0;
        b.normal(count, &mean, cfg.inlier_std, j as u32 + 1);
    }
    b.uniform(n - inliers, &vec![0.0; d], cfg.box_side + spread);
    b.finish()
}
