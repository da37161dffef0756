//! Minimum enclosing balls.
//!
//! [`approx_meb_center`] is the farthest-point iteration: start at the first
//! point, then repeatedly step `1/(t+1)` of the way toward the current
//! farthest point. After `t` steps the center is within `r/sqrt(t)` of the
//! true MEB center, where `r` is the MEB radius.
//!
//! [`exact_meb_oracle`] solves tiny instances exactly by enumerating support
//! sets. It exists to check the iteration and the tree against ground truth.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::geometry::{dist, sq_dist, Ball};

/// Default point limit for [`exact_meb_oracle`].
pub const ORACLE_LIMIT: usize = 14;
const ORACLE_MAX_DIM: usize = 6;

/// One step of the farthest-point iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct MebIterate {
    pub center: Vec<f64>,
    /// 1-based iteration index `t`.
    pub step: usize,
}

/// Iterator over `c_1, c_2, ...` for a fixed point list.
///
/// Farthest-point ties go to the earliest point in the list.
#[derive(Debug, Clone)]
pub struct MebIterates<'a> {
    points: &'a [&'a [f64]],
    center: Vec<f64>,
    step: usize,
}

impl<'a> MebIterates<'a> {
    pub fn new(points: &'a [&'a [f64]]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptySubset)?;
        let d = first.len();
        if let Some(p) = points.iter().find(|p| p.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.len(),
            });
        }
        Ok(MebIterates {
            points,
            center: first.to_vec(),
            step: 0,
        })
    }

    fn farthest(&self) -> &'a [f64] {
        let mut best = self.points[0];
        let mut best_d = sq_dist(best, &self.center);
        for &p in &self.points[1..] {
            let dd = sq_dist(p, &self.center);
            if dd > best_d {
                best = p;
                best_d = dd;
            }
        }
        best
    }
}

impl Iterator for MebIterates<'_> {
    type Item = MebIterate;

    fn next(&mut self) -> Option<MebIterate> {
        if self.step > 0 {
            let q = self.farthest();
            let w = 1.0 / (self.step as f64 + 1.0);
            for (c, &qi) in self.center.iter_mut().zip(q) {
                *c += w * (qi - *c);
            }
        }
        self.step += 1;
        Some(MebIterate {
            center: self.center.clone(),
            step: self.step,
        })
    }
}

/// Returns `c_N` of the farthest-point iteration started at `points[0]`.
pub fn approx_meb_center(points: &[&[f64]], iters: usize) -> Result<Vec<f64>> {
    if iters == 0 {
        return Err(Error::InvalidParams("meb iterations must be positive".into()));
    }
    let mut it = MebIterates::new(points)?;
    // Stepping in place avoids cloning the center N times.
    for t in 1..iters {
        let q = it.farthest();
        let w = 1.0 / (t as f64 + 1.0);
        for (c, &qi) in it.center.iter_mut().zip(q) {
            *c += w * (qi - *c);
        }
    }
    Ok(it.center)
}

/// Max distance from `center` to any of `points`.
pub fn enclosing_radius(points: &[&[f64]], center: &[f64]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut best = 0.0f64;
    for p in points {
        if p.len() != center.len() {
            return Err(Error::DimensionMismatch {
                expected: center.len(),
                got: p.len(),
            });
        }
        best = best.max(sq_dist(p, center));
    }
    Ok(best.sqrt())
}

/// Borrow the listed rows of `ds`.
pub fn gather<'a>(ds: &'a Dataset, indices: &[usize]) -> Result<Vec<&'a [f64]>> {
    indices
        .iter()
        .map(|&i| {
            if i < ds.n() {
                Ok(ds.row(i))
            } else {
                Err(Error::IndexOutOfRange { index: i, n: ds.n() })
            }
        })
        .collect()
}

/// Exact minimum enclosing ball of at most `limit` points in dimension at
/// most 6.
///
/// Every support set of size `<= d + 1` is tried; its smallest circumscribing
/// ball has its center in the support's affine hull. Affinely dependent
/// supports are skipped. The smallest candidate that covers all points wins.
pub fn exact_meb_oracle(points: &[&[f64]], limit: usize) -> Result<Ball> {
    let first = points.first().ok_or(Error::EmptySubset)?;
    let d = first.len();
    if points.len() > limit || d > ORACLE_MAX_DIM {
        return Err(Error::InstanceTooLarge {
            points: points.len(),
            dim: d,
            limit,
        });
    }
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: p.len(),
        });
    }

    let scale = points
        .iter()
        .map(|p| dist(p, first))
        .fold(0.0f64, f64::max)
        .max(1.0);
    let cover_tol = 1e-10 * scale;

    let mut best: Option<Ball> = None;
    let mut support = Vec::with_capacity(d + 1);
    let max_size = (d + 1).min(points.len());
    for size in 1..=max_size {
        for_each_combination(points.len(), size, &mut support, &mut |sub| {
            let Some((center, radius)) = circumball(points, sub) else {
                return;
            };
            if let Some(b) = &best {
                if radius >= b.radius {
                    return;
                }
            }
            let covers = points
                .iter()
                .all(|p| dist(p, &center) <= radius + cover_tol);
            if covers {
                best = Some(Ball::new(center, radius));
            }
        });
    }
    // A single point is always a valid support, so the loop found something
    // unless every candidate failed the coverage test, which cannot happen
    // for the true support set.
    best.ok_or_else(|| Error::InvalidDataset("exact solver found no covering ball".into()))
}

fn for_each_combination(
    n: usize,
    size: usize,
    buf: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    fn rec(start: usize, n: usize, size: usize, buf: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if buf.len() == size {
            f(buf);
            return;
        }
        let need = size - buf.len();
        for i in start..=n - need {
            buf.push(i);
            rec(i + 1, n, size, buf, f);
            buf.pop();
        }
    }
    buf.clear();
    rec(0, n, size, buf, f);
}

/// Smallest ball through all points of `sub`, or `None` when they are
/// affinely dependent.
fn circumball(points: &[&[f64]], sub: &[usize]) -> Option<(Vec<f64>, f64)> {
    let p0 = points[sub[0]];
    let d = p0.len();
    let k = sub.len() - 1;
    if k == 0 {
        return Some((p0.to_vec(), 0.0));
    }
    // center = p0 + sum_j lambda_j v_j with v_j = p_j - p0;
    // equidistance gives G lambda = b, G_ij = v_i.v_j, b_i = |v_i|^2 / 2.
    let v: Vec<Vec<f64>> = sub[1..]
        .iter()
        .map(|&j| points[j].iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    let mut g = vec![vec![0.0; k + 1]; k];
    for i in 0..k {
        for j in 0..k {
            g[i][j] = v[i].iter().zip(&v[j]).map(|(a, b)| a * b).sum();
        }
        g[i][k] = 0.5 * g[i][i];
    }
    let scale = (0..k).map(|i| g[i][i]).fold(0.0f64, f64::max);
    let lambda = solve_augmented(g, 1e-12 * scale.max(f64::MIN_POSITIVE))?;
    let mut center = p0.to_vec();
    for (l, vj) in lambda.iter().zip(&v) {
        for t in 0..d {
            center[t] += l * vj[t];
        }
    }
    let radius = sub
        .iter()
        .map(|&j| dist(points[j], &center))
        .fold(0.0f64, f64::max);
    Some((center, radius))
}

/// Gaussian elimination with partial pivoting on an augmented `k x (k+1)`
/// system. Returns `None` if a pivot falls below `tol`.
fn solve_augmented(mut a: Vec<Vec<f64>>, tol: f64) -> Option<Vec<f64>> {
    let k = a.len();
    for col in 0..k {
        let piv = (col..k).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[piv][col].abs() <= tol {
            return None;
        }
        a.swap(col, piv);
        for row in col + 1..k {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                let (top, bottom) = a.split_at_mut(row);
                for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x -= f * y;
                }
            }
        }
    }
    let mut x = vec![0.0; k];
    for row in (0..k).rev() {
        let mut s = a[row][k];
        for c in row + 1..k {
            s -= a[row][c] * x[c];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}
