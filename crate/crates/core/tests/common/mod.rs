#![allow(dead_code)]

use ballout::meb::gather;
use ballout::rgd::Candidate;
use ballout::{exact_meb_oracle, Dataset, Params, ORACLE_LIMIT};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Ten inliers inside the unit disk and two far outliers (rows 10, 11).
pub const TINY: [[f64; 2]; 12] = [
    [0.12, 0.31],
    [-0.54, 0.22],
    [0.77, -0.18],
    [0.05, -0.83],
    [-0.35, -0.41],
    [0.48, 0.59],
    [-0.71, -0.06],
    [0.26, -0.37],
    [-0.12, 0.74],
    [0.63, 0.21],
    [9.0, 1.5],
    [-6.5, 8.0],
];

pub fn tiny() -> Dataset {
    Dataset::from_rows(&TINY).unwrap()
}

pub fn tiny_params(seed: u64) -> Params {
    Params {
        gamma: 1.0 / 6.0,
        epsilon: 0.3,
        delta: 0.5,
        mu: 0.1,
        meb_iters: None,
        forest_size: 1,
        sequential_rounds: 0,
        seed,
    }
}

/// Calls `f` on every `r`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, r: usize, mut f: impl FnMut(&[usize])) {
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        f(&idx);
        let Some(i) = (0..r).rev().find(|&i| idx[i] < i + n - r) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Smallest radius of a ball covering `cover` rows, by enumerating every
/// subset of that size with the exact solver.
pub fn r_opt(ds: &Dataset, cover: usize) -> (f64, Vec<usize>) {
    let mut best = (f64::INFINITY, Vec::new());
    for_each_subset(ds.n(), cover, |s| {
        let pts = gather(ds, s).unwrap();
        let b = exact_meb_oracle(&pts, ORACLE_LIMIT).unwrap();
        if b.radius < best.0 {
            best = (b.radius, s.to_vec());
        }
    });
    best
}

/// Whether some candidate covers its `m` nearest rows within `bound`.
pub fn any_within(cands: &[Candidate], bound: f64) -> bool {
    cands.iter().any(|c| c.radius <= bound * (1.0 + 1e-12))
}

pub fn std_err(p: f64, trials: usize) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

/// Random points with `2..=max_n` rows in dimension `1..=max_d`.
pub fn random_instance(rng: &mut ChaCha8Rng, max_n: usize, max_d: usize) -> Vec<Vec<f64>> {
    let n = rng.random_range(2..=max_n);
    let d = rng.random_range(1..=max_d);
    let scale = rng.random_range(0.5..20.0);
    (0..n)
        .map(|_| (0..d).map(|_| rng.random_range(-scale..scale)).collect())
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn refs(points: &[Vec<f64>]) -> Vec<&[f64]> {
    points.iter().map(Vec::as_slice).collect()
}
