//! Algorithm knobs and the counts derived from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative slack under which a product like `1.1 * 0.4 * 10000` is treated
/// as the integer it was meant to be before taking the ceiling.
const CEIL_REL_TOL: f64 = 1e-9;

/// Ceiling that absorbs floating-point noise around integers.
pub fn ceil_count(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() <= CEIL_REL_TOL * r.abs().max(1.0) {
        r.max(0.0) as usize
    } else {
        x.ceil().max(0.0) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Params {
    /// Outlier fraction, known in advance.
    pub gamma: f64,
    /// Radius slack; sets the tree height.
    pub epsilon: f64,
    /// Coverage slack; sets how many far points form the sampling pool.
    pub delta: f64,
    /// Failure probability budget; sets the branching factor.
    pub mu: f64,
    /// Iterations of the approximate MEB routine. `None` uses `ceil(1/eps^2)`.
    pub meb_iters: Option<usize>,
    /// Number of independently rooted trees.
    pub forest_size: usize,
    /// Extra trees re-rooted at the best center found so far.
    pub sequential_rounds: usize,
    pub seed: u64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            gamma: 0.1,
            epsilon: 0.9,
            delta: 0.2,
            mu: 0.9,
            meb_iters: Some(64),
            forest_size: 1,
            sequential_rounds: 0,
            seed: 0,
        }
    }
}

/// Counts derived from [`Params`] for a dataset of `n` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedParams {
    /// Tree height.
    pub h: usize,
    /// Size of the far-point pool children are sampled from.
    pub k: usize,
    /// Children per internal node (before capping at `k`).
    pub s: usize,
    /// Inliers reported per candidate.
    pub m: usize,
    pub meb_iters: usize,
}

impl DerivedParams {
    /// Branching actually realized: the sample cannot exceed the pool.
    pub fn branching(&self) -> usize {
        self.s.min(self.k)
    }

    /// Number of nodes, hence candidates, in one fully grown tree.
    pub fn tree_size(&self) -> usize {
        let b = self.branching();
        let mut total = 0usize;
        let mut layer = 1usize;
        for _ in 0..self.h {
            total = total.saturating_add(layer);
            layer = layer.saturating_mul(b);
        }
        total
    }
}

fn open_unit(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{name} must lie in (0, 1), got {v}")))
    }
}

impl Params {
    /// Checks every knob except `gamma`.
    pub fn validate_knobs(&self) -> Result<()> {
        open_unit("epsilon", self.epsilon)?;
        open_unit("delta", self.delta)?;
        open_unit("mu", self.mu)?;
        if self.meb_iters == Some(0) {
            return Err(Error::InvalidParams("meb_iters must be positive".into()));
        }
        if self.forest_size == 0 {
            return Err(Error::InvalidParams("forest_size must be positive".into()));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_knobs()?;
        open_unit("gamma", self.gamma)?;
        if (1.0 + self.delta) * self.gamma >= 1.0 {
            return Err(Error::InvalidParams(format!(
                "(1 + delta) * gamma must be below 1, got {}",
                (1.0 + self.delta) * self.gamma
            )));
        }
        Ok(())
    }

    pub fn height(&self) -> usize {
        ceil_count(2.0 / self.epsilon) + 1
    }

    pub fn sample_size(&self) -> usize {
        let h = self.height() as f64;
        ceil_count((1.0 + 1.0 / self.delta) * (h / self.mu).ln()).max(1)
    }

    pub fn meb_iterations(&self) -> usize {
        self.meb_iters
            .unwrap_or_else(|| ceil_count(1.0 / (self.epsilon * self.epsilon)).max(1))
    }

    /// Pool size `ceil((1 + delta) * gamma * n)` for an arbitrary outlier ratio,
    /// clamped to `n`.
    pub(crate) fn pool_size(&self, gamma: f64, n: usize) -> usize {
        ceil_count((1.0 + self.delta) * gamma * n as f64).min(n)
    }
}

pub fn derive_params(p: &Params, n: usize) -> Result<DerivedParams> {
    p.validate()?;
    let k = p.pool_size(p.gamma, n);
    if k >= n {
        return Err(Error::DegenerateDataset { k, n });
    }
    Ok(DerivedParams {
        h: p.height(),
        k,
        s: p.sample_size(),
        m: n - k,
        meb_iters: p.meb_iterations(),
    })
}
