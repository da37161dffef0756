//! Forest and sequential boosting.

use rand::Rng;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::params::{derive_params, DerivedParams, Params};

use super::stream::roots_rng;
use super::tree::{grow, Candidate, TreeNode};

/// `count` distinct root rows drawn from the run seed. The roots for a
/// smaller count are a prefix of those for a larger one, so growing the
/// forest only adds trees.
pub fn forest_roots(seed: u64, n: usize, count: usize) -> Result<Vec<usize>> {
    if count == 0 || count > n {
        return Err(Error::InvalidParams(format!(
            "forest size {count} must lie in 1..={n}"
        )));
    }
    let mut rng = roots_rng(seed);
    let mut rows: Vec<usize> = (0..n).collect();
    for i in 0..count {
        let j = rng.random_range(i..n);
        rows.swap(i, j);
    }
    rows.truncate(count);
    Ok(rows)
}

/// Index of the lowest-score candidate; ties keep the earliest.
pub(crate) fn best_index(cands: &[Candidate]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, c) in cands.iter().enumerate() {
        match best {
            Some(b) if cands[b].score <= c.score => {}
            _ => best = Some(i),
        }
    }
    best
}

pub(crate) fn forest(ds: &Dataset, dp: &DerivedParams, p: &Params) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    for r in forest_roots(p.seed, ds.n(), p.forest_size)? {
        out.extend(grow(ds, dp, p.seed, TreeNode::root(ds, r, 0)?)?);
    }
    Ok(out)
}

/// Tree `round` re-rooted at `center`.
pub(crate) fn reroot(
    ds: &Dataset,
    dp: &DerivedParams,
    seed: u64,
    center: Vec<f64>,
    round: u64,
) -> Result<Vec<Candidate>> {
    grow(ds, dp, seed, TreeNode::anchored(center, round))
}

/// Candidates of `forest_size` trees grown from distinct random roots.
pub fn boost_forest(ds: &Dataset, p: &Params) -> Result<Vec<Candidate>> {
    let dp = derive_params(p, ds.n())?;
    forest(ds, &dp, p)
}

/// Candidates of `rounds` trees: the first from a random root, each later
/// one anchored at the previous best center.
pub fn boost_sequential(ds: &Dataset, p: &Params, rounds: usize) -> Result<Vec<Candidate>> {
    if rounds == 0 {
        return Err(Error::InvalidArgs("sequential rounds must be at least 1".into()));
    }
    let dp = derive_params(p, ds.n())?;
    let root = forest_roots(p.seed, ds.n(), 1)?[0];
    let mut all = grow(ds, &dp, p.seed, TreeNode::root(ds, root, 0)?)?;
    for round in 1..rounds {
        let best = best_index(&all).expect("tree yields at least its root");
        let center = all[best].center.clone();
        all.extend(reroot(ds, &dp, p.seed, center, round as u64)?);
    }
    Ok(all)
}
