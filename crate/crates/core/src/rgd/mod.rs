//! Randomized core-set tree for the minimum enclosing ball with outliers.
//!
//! Each node carries the approximate MEB center of the rows on its root
//! path. Its children are a small random sample of the `k` rows farthest
//! from that center; with good probability at least one child is an inlier
//! lying outside the current ball, which forces the next path-MEB to grow.
//! After `h` levels some node's center covers `n - k` points within
//! `(1 + epsilon)` times the optimal radius.
//!
//! Every node is a candidate. Candidates are ranked by the total variance of
//! their `m` nearest rows and the lowest wins.

mod boost;
mod stream;
mod tree;

pub use boost::{boost_forest, boost_sequential, forest_roots};
pub use tree::{expand_node, grow_tree, score_candidate, Candidate, TreeNode};

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::Result;
use crate::geometry::Ball;
use crate::params::{derive_params, DerivedParams, Params};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecognitionResult {
    /// Winning center; the radius reaches exactly its `m`-th nearest row.
    pub ball: Ball,
    /// The `m` rows nearest to the center, sorted.
    pub inliers: Vec<usize>,
    pub candidates_evaluated: usize,
    pub score: f64,
}

/// Fits a ball covering `n - k` rows with the forest and sequential
/// boosting configured in `p`.
pub fn recognize(ds: &Dataset, p: &Params) -> Result<RecognitionResult> {
    let dp = derive_params(p, ds.n())?;
    recognize_with(ds, p, &dp)
}

/// As [`recognize`], with explicit pool and inlier counts.
pub fn recognize_with(ds: &Dataset, p: &Params, dp: &DerivedParams) -> Result<RecognitionResult> {
    let cands = boost::forest(ds, dp, p)?;
    let mut evaluated = cands.len();
    let mut best = cands[boost::best_index(&cands).expect("forest is nonempty")].clone();
    drop(cands);
    for round in 1..=p.sequential_rounds {
        let more = boost::reroot(ds, dp, p.seed, best.center.clone(), round as u64)?;
        evaluated += more.len();
        let i = boost::best_index(&more).expect("tree yields at least its root");
        if more[i].score < best.score {
            best = more[i].clone();
        }
    }
    let (score, inliers) = score_candidate(ds, &best.center, dp.m)?;
    Ok(RecognitionResult {
        ball: Ball::new(best.center, best.radius),
        inliers,
        candidates_evaluated: evaluated,
        score,
    })
}

/// Lower bound on a child's path-MEB radius once the parent's covering
/// radius exceeds `r_hat = (1 + epsilon) r_opt` and the child lies in the
/// optimal inlier set: `r_hat / 2 + r_parent^2 / (2 r_hat)`.
pub fn improvement_bound(r_hat: f64, parent_path_radius: f64) -> f64 {
    r_hat / 2.0 + parent_path_radius * parent_path_radius / (2.0 * r_hat)
}
