//! Linear-time order statistics over point distances.
//!
//! [`select_nth_by`] is quickselect with a median-of-three pivot that falls
//! back to median-of-medians pivots once partitioning stops shrinking the
//! range fast enough, which bounds the worst case at O(n).

use std::cmp::Ordering;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::geometry::sq_dist;

const INSERTION_CUTOFF: usize = 16;

/// Reorders `v` so that `v[nth]` holds the element that would sit there
/// after a full sort by `cmp`, everything before it compares `<=`, and
/// everything after compares `>=`.
///
/// Panics if `nth >= v.len()`.
pub fn select_nth_by<T, F>(v: &mut [T], nth: usize, mut cmp: F)
where
    F: FnMut(&T, &T) -> Ordering,
{
    assert!(nth < v.len(), "select index {nth} out of range {}", v.len());
    let mut lo = 0;
    let mut hi = v.len();
    // Allow ~2 log2(n) cheap rounds before switching to guaranteed pivots.
    let mut budget = 2 * (usize::BITS - v.len().leading_zeros()) as usize;
    loop {
        let len = hi - lo;
        if len <= INSERTION_CUTOFF {
            insertion_sort(&mut v[lo..hi], &mut cmp);
            return;
        }
        let pivot = if budget > 0 {
            budget -= 1;
            median_of_three(&mut v[lo..hi], &mut cmp)
        } else {
            median_of_medians(&mut v[lo..hi], &mut cmp)
        };
        let p = lo + partition(&mut v[lo..hi], pivot, &mut cmp);
        match nth.cmp(&p) {
            Ordering::Equal => return,
            Ordering::Less => hi = p,
            Ordering::Greater => lo = p + 1,
        }
    }
}

fn insertion_sort<T, F: FnMut(&T, &T) -> Ordering>(v: &mut [T], cmp: &mut F) {
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && cmp(&v[j - 1], &v[j]) == Ordering::Greater {
            v.swap(j - 1, j);
            j -= 1;
        }
    }
}

fn median_of_three<T, F: FnMut(&T, &T) -> Ordering>(v: &mut [T], cmp: &mut F) -> usize {
    let (a, b, c) = (0, v.len() / 2, v.len() - 1);
    let ab = cmp(&v[a], &v[b]) == Ordering::Less;
    let bc = cmp(&v[b], &v[c]) == Ordering::Less;
    let ac = cmp(&v[a], &v[c]) == Ordering::Less;
    if ab == bc {
        b
    } else if ab == ac {
        c
    } else {
        a
    }
}

/// Pivot index whose rank is guaranteed to lie in the middle ~40% of `v`.
fn median_of_medians<T, F: FnMut(&T, &T) -> Ordering>(v: &mut [T], cmp: &mut F) -> usize {
    let groups = v.len() / 5;
    if groups == 0 {
        insertion_sort(v, cmp);
        return v.len() / 2;
    }
    for g in 0..groups {
        let chunk = &mut v[g * 5..g * 5 + 5];
        insertion_sort(chunk, cmp);
        v.swap(g, g * 5 + 2);
    }
    let mid = groups / 2;
    select_medians(&mut v[..groups], mid, cmp);
    mid
}

// Recursive selection on the medians prefix, always with guaranteed pivots.
fn select_medians<T, F: FnMut(&T, &T) -> Ordering>(v: &mut [T], nth: usize, cmp: &mut F) {
    let mut lo = 0;
    let mut hi = v.len();
    loop {
        if hi - lo <= INSERTION_CUTOFF {
            insertion_sort(&mut v[lo..hi], cmp);
            return;
        }
        let pivot = median_of_medians(&mut v[lo..hi], cmp);
        let p = lo + partition(&mut v[lo..hi], pivot, cmp);
        match nth.cmp(&p) {
            Ordering::Equal => return,
            Ordering::Less => hi = p,
            Ordering::Greater => lo = p + 1,
        }
    }
}

/// Lomuto partition around `v[pivot]`; returns the pivot's final position.
fn partition<T, F: FnMut(&T, &T) -> Ordering>(v: &mut [T], pivot: usize, cmp: &mut F) -> usize {
    let last = v.len() - 1;
    v.swap(pivot, last);
    let mut store = 0;
    for i in 0..last {
        let less = cmp(&v[i], &v[last]) == Ordering::Less;
        v.swap(i, store);
        store += less as usize;
    }
    v.swap(store, last);
    store
}

/// A point's squared distance to some center, tagged with its row index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Keyed {
    pub sq: f64,
    pub idx: u32,
}

/// Farther first; equal distances put the lower index first. Squared
/// distances are non-negative, so their bit patterns order like the values.
#[inline]
pub(crate) fn farther_first(a: &Keyed, b: &Keyed) -> Ordering {
    (b.sq.to_bits(), a.idx).cmp(&(a.sq.to_bits(), b.idx))
}

pub(crate) fn distance_keys(ds: &Dataset, center: &[f64]) -> Vec<Keyed> {
    ds.rows()
        .enumerate()
        .map(|(i, row)| Keyed {
            sq: sq_dist(row, center),
            idx: i as u32,
        })
        .collect()
}

/// Moves the `k` farthest keys to the front of `keys` (in no particular order).
pub(crate) fn split_farthest(keys: &mut [Keyed], k: usize) {
    if k > 0 && k < keys.len() {
        select_nth_by(keys, k - 1, farther_first);
    }
}

/// The `k` points farthest from `center` and the k-th largest distance.
///
/// Indices come back sorted ascending. Ties at the cutoff admit lower indices
/// first, so the result always has exactly `k` entries.
pub fn top_k_farthest(ds: &Dataset, center: &[f64], k: usize) -> Result<(Vec<usize>, f64)> {
    ds.check_dim(center)?;
    if k == 0 || k > ds.n() {
        return Err(Error::KOutOfRange { k, n: ds.n() });
    }
    let mut keys = distance_keys(ds, center);
    split_farthest(&mut keys, k);
    let pivot = keys[..k]
        .iter()
        .map(|k| k.sq)
        .fold(f64::INFINITY, f64::min)
        .sqrt();
    let mut idx: Vec<usize> = keys[..k].iter().map(|k| k.idx as usize).collect();
    idx.sort_unstable();
    Ok((idx, pivot))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn line(xs: &[f64]) -> Dataset {
        Dataset::from_rows(&xs.iter().map(|&x| [x]).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn line_top_two() {
        let ds = line(&[0.0, 1.0, 2.0, 3.0]);
        let (idx, pivot) = top_k_farthest(&ds, &[0.0], 2).unwrap();
        assert_eq!(idx, vec![2, 3]);
        assert_eq!(pivot, 2.0);
    }

    #[test]
    fn whole_set_pivot_is_min() {
        let ds = line(&[5.0, -1.0, 2.0, 0.5]);
        let (idx, pivot) = top_k_farthest(&ds, &[0.0], 4).unwrap();
        assert_eq!(idx, vec![0, 1, 2, 3]);
        assert_eq!(pivot, 0.5);
    }

    #[test]
    fn ties_admit_lower_index() {
        let ds = line(&[1.0, -1.0, 1.0, 0.0, -1.0]);
        let (idx, _) = top_k_farthest(&ds, &[0.0], 2).unwrap();
        assert_eq!(idx, vec![0, 1]);
        let (idx, _) = top_k_farthest(&ds, &[0.0], 3).unwrap();
        assert_eq!(idx, vec![0, 1, 2]);
    }

    #[test]
    fn k_out_of_range() {
        let ds = line(&[0.0, 1.0]);
        assert!(matches!(top_k_farthest(&ds, &[0.0], 0), Err(Error::KOutOfRange { .. })));
        assert!(matches!(top_k_farthest(&ds, &[0.0], 3), Err(Error::KOutOfRange { .. })));
        assert!(top_k_farthest(&ds, &[0.0, 1.0], 1).is_err());
    }

    #[test]
    fn median_of_medians_path_on_adversarial_input() {
        // Organ-pipe input defeats median-of-three repeatedly.
        let n = 10_000;
        let mut v: Vec<i64> = (0..n / 2).chain((0..n / 2).rev()).map(|x| x * 2).collect();
        let mut sorted = v.clone();
        sorted.sort();
        for nth in [0, 1, n as usize / 3, n as usize / 2, n as usize - 1] {
            select_nth_by(&mut v, nth, |a, b| a.cmp(b));
            assert_eq!(v[nth], sorted[nth]);
        }
        let mut w: Vec<i64> = (0..5000).collect();
        select_medians(&mut w, 1234, &mut |a: &i64, b: &i64| a.cmp(b));
        assert_eq!(w[1234], 1234);
    }

    proptest! {
        #[test]
        fn select_matches_sort(mut v in prop::collection::vec(-1000i32..1000, 1..400), frac in 0.0f64..1.0) {
            let nth = ((v.len() - 1) as f64 * frac) as usize;
            let mut sorted = v.clone();
            sorted.sort();
            select_nth_by(&mut v, nth, |a, b| a.cmp(b));
            prop_assert_eq!(v[nth], sorted[nth]);
            prop_assert!(v[..nth].iter().all(|x| *x <= v[nth]));
            prop_assert!(v[nth + 1..].iter().all(|x| *x >= v[nth]));
        }

        #[test]
        fn top_k_partition_property(
            pts in prop::collection::vec(prop::collection::vec(-10.0f64..10.0, 3), 1..200),
            kfrac in 0.0f64..1.0,
        ) {
            let ds = Dataset::from_rows(&pts).unwrap();
            let k = 1 + ((ds.n() - 1) as f64 * kfrac) as usize;
            let c = [0.5, -0.25, 1.0];
            let (idx, pivot) = top_k_farthest(&ds, &c, k).unwrap();
            prop_assert_eq!(idx.len(), k);
            let inside: std::collections::HashSet<_> = idx.iter().copied().collect();
            let min_in = idx.iter().map(|&i| sq_dist(ds.row(i), &c)).fold(f64::INFINITY, f64::min);
            let max_out = (0..ds.n()).filter(|i| !inside.contains(i)).map(|i| sq_dist(ds.row(i), &c)).fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(min_in >= max_out);
            prop_assert_eq!(pivot, min_in.sqrt());
        }
    }
}
