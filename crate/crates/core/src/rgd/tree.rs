use std::sync::Arc;

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;

use crate::dataset::Dataset;
use crate::geometry::sq_dist;
use crate::error::{Error, Result};
use crate::meb::approx_meb_center;
use crate::params::{derive_params, DerivedParams, Params};
use crate::select::{distance_keys, split_farthest, Keyed};

use super::stream::node_rng;

/// A node of the core-set tree.
///
/// `path` lists the dataset rows from the root down to this node. A tree
/// re-rooted at a previous best center carries that center as `anchor`; it
/// is prepended to the path for every MEB computation and counts toward
/// `depth`.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeNode {
    pub path: Vec<usize>,
    pub anchor: Option<Arc<[f64]>>,
    pub depth: usize,
    pub center: Vec<f64>,
    /// Tree id mixed into the node's random stream.
    pub tree: u64,
}

impl TreeNode {
    pub fn root(ds: &Dataset, index: usize, tree: u64) -> Result<Self> {
        if index >= ds.n() {
            return Err(Error::IndexOutOfRange { index, n: ds.n() });
        }
        Ok(TreeNode {
            path: vec![index],
            anchor: None,
            depth: 1,
            center: ds.row(index).to_vec(),
            tree,
        })
    }

    /// Root whose attached point is an arbitrary center rather than a row.
    pub fn anchored(center: Vec<f64>, tree: u64) -> Self {
        TreeNode {
            path: Vec::new(),
            anchor: Some(Arc::from(center.as_slice())),
            depth: 1,
            center,
            tree,
        }
    }

    pub fn child(&self, ds: &Dataset, index: usize, meb_iters: usize) -> Result<Self> {
        let mut path = Vec::with_capacity(self.path.len() + 1);
        path.extend_from_slice(&self.path);
        path.push(index);
        let mut pts: Vec<&[f64]> = Vec::with_capacity(path.len() + 1);
        if let Some(a) = &self.anchor {
            pts.push(a);
        }
        pts.extend(path.iter().map(|&i| ds.row(i)));
        let center = approx_meb_center(&pts, meb_iters)?;
        Ok(TreeNode {
            path,
            anchor: self.anchor.clone(),
            depth: self.depth + 1,
            center,
            tree: self.tree,
        })
    }

    pub fn rng_stream(&self, seed: u64) -> rand_chacha::ChaCha8Rng {
        node_rng(seed, self.tree, &self.path)
    }
}

/// A candidate center produced by one tree node.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub center: Vec<f64>,
    pub path: Vec<usize>,
    /// True when the path starts from an anchored (re-rooted) center.
    pub anchored: bool,
    pub depth: usize,
    pub tree: u64,
    /// Total variance of the `m` nearest points.
    pub score: f64,
    /// Distance from `center` to its `m`-th nearest point.
    pub radius: f64,
}

impl Candidate {
    /// The `m` points nearest to this candidate's center, sorted by index.
    ///
    /// Candidates don't store their inlier sets; a tree can hold thousands
    /// of candidates over tens of thousands of points.
    pub fn inliers(&self, ds: &Dataset, m: usize) -> Result<Vec<usize>> {
        score_candidate(ds, &self.center, m).map(|(_, idx)| idx)
    }
}

/// Distances from one center, split into the far pool (front) after the
/// nearest-`m` statistics have been taken.
struct NodeScan {
    keys: Vec<Keyed>,
    score: f64,
    radius: f64,
}

impl NodeScan {
    fn new(ds: &Dataset, center: &[f64], m: usize, k: usize) -> Self {
        let mut keys = distance_keys(ds, center);
        let n = keys.len();
        split_farthest(&mut keys, n - m);
        let near = &keys[n - m..];
        let score = inlier_variance(ds, near);
        let radius = near.iter().map(|k| k.sq).fold(0.0f64, f64::max).sqrt();
        if k != n - m {
            split_farthest(&mut keys, k);
        }
        NodeScan { keys, score, radius }
    }

    fn children<R: Rng + ?Sized>(
        &self,
        ds: &Dataset,
        node: &TreeNode,
        dp: &DerivedParams,
        rng: &mut R,
    ) -> Result<Vec<TreeNode>> {
        let b = dp.branching();
        if b == 0 {
            return Ok(Vec::new());
        }
        let pool = &self.keys[..dp.k];
        index::sample(rng, pool.len(), b)
            .into_iter()
            .map(|j| node.child(ds, pool[j].idx as usize, dp.meb_iters))
            .collect()
    }
}

/// Total variance of the given points, two-pass about their mean. Rows are
/// visited in dataset order with 0/1 weights. The mean is accumulated as
/// offsets from the first point, so identical points score exactly zero.
fn inlier_variance(ds: &Dataset, near: &[Keyed]) -> f64 {
    let mut weight = vec![0.0; ds.n()];
    let mut first = usize::MAX;
    for k in near {
        weight[k.idx as usize] = 1.0;
        first = first.min(k.idx as usize);
    }
    let m = near.len() as f64;
    let pivot = ds.row(first);
    let mut mean = vec![0.0; pivot.len()];
    for (r, w) in ds.rows().zip(&weight) {
        for ((a, x), p) in mean.iter_mut().zip(r).zip(pivot) {
            *a += w * (x - p);
        }
    }
    for (a, p) in mean.iter_mut().zip(pivot) {
        *a = p + *a / m;
    }
    ds.rows()
        .zip(&weight)
        .map(|(r, w)| w * sq_dist(r, &mean))
        .sum::<f64>()
        / m
}

fn check_counts(ds: &Dataset, dp: &DerivedParams) -> Result<()> {
    if dp.m == 0 || dp.m > ds.n() {
        return Err(Error::MOutOfRange { m: dp.m, n: ds.n() });
    }
    if dp.k > ds.n() {
        return Err(Error::KOutOfRange { k: dp.k, n: ds.n() });
    }
    Ok(())
}

/// Children of `node`: `s` distinct rows drawn uniformly from the `k` rows
/// farthest from its center.
pub fn expand_node<R: Rng + ?Sized>(
    ds: &Dataset,
    node: &TreeNode,
    dp: &DerivedParams,
    rng: &mut R,
) -> Result<Vec<TreeNode>> {
    ds.check_dim(&node.center)?;
    check_counts(ds, dp)?;
    NodeScan::new(ds, &node.center, dp.m, dp.k).children(ds, node, dp, rng)
}

/// Score and inliers of a center: the `m` nearest rows (sorted by index)
/// and their total variance, i.e. the trace of their covariance. The set is
/// the complement of the `n - m` farthest, so distance ties at the cutoff
/// keep the higher indices.
pub fn score_candidate(ds: &Dataset, center: &[f64], m: usize) -> Result<(f64, Vec<usize>)> {
    ds.check_dim(center)?;
    if m == 0 || m > ds.n() {
        return Err(Error::MOutOfRange { m, n: ds.n() });
    }
    let mut keys = distance_keys(ds, center);
    let n = keys.len();
    split_farthest(&mut keys, n - m);
    let near = &keys[n - m..];
    let score = inlier_variance(ds, near);
    let mut idx: Vec<usize> = near.iter().map(|k| k.idx as usize).collect();
    idx.sort_unstable();
    Ok((score, idx))
}

/// Grows one tree breadth-first and returns a candidate per node, in BFS
/// order. Nodes of a layer are processed in parallel on the current rayon
/// pool; the result does not depend on the thread count.
pub(crate) fn grow(
    ds: &Dataset,
    dp: &DerivedParams,
    seed: u64,
    root: TreeNode,
) -> Result<Vec<Candidate>> {
    check_counts(ds, dp)?;
    ds.check_dim(&root.center)?;
    let mut out = Vec::with_capacity(dp.tree_size().min(1 << 16));
    let mut layer = vec![root];
    while !layer.is_empty() {
        let visited: Vec<(Candidate, Vec<TreeNode>)> = layer
            .par_iter()
            .map(|node| {
                let scan = NodeScan::new(ds, &node.center, dp.m, dp.k);
                let children = if node.depth < dp.h {
                    scan.children(ds, node, dp, &mut node.rng_stream(seed))?
                } else {
                    Vec::new()
                };
                let cand = Candidate {
                    center: node.center.clone(),
                    path: node.path.clone(),
                    anchored: node.anchor.is_some(),
                    depth: node.depth,
                    tree: node.tree,
                    score: scan.score,
                    radius: scan.radius,
                };
                Ok((cand, children))
            })
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for (cand, children) in visited {
            out.push(cand);
            next.extend(children);
        }
        layer = next;
    }
    Ok(out)
}

/// Grows the tree rooted at row `root_index`.
pub fn grow_tree(ds: &Dataset, p: &Params, root_index: usize) -> Result<Vec<Candidate>> {
    let dp = derive_params(p, ds.n())?;
    grow(ds, &dp, p.seed, TreeNode::root(ds, root_index, 0)?)
}
