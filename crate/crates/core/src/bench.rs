//! Wall-clock timing of a fit over a grid of sizes and dimensions.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::rgd::recognize;
use crate::synth::gen_highdim;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub d: usize,
    pub repeats: usize,
    pub median_ms: f64,
    pub min_ms: f64,
    pub max_ms: f64,
}

fn median(sorted: &[f64]) -> f64 {
    let k = sorted.len();
    if k % 2 == 1 {
        sorted[k / 2]
    } else {
        (sorted[k / 2 - 1] + sorted[k / 2]) / 2.0
    }
}

/// Times `repeats` fits at every `(n, d)` pair; data comes from the
/// high-dimensional generator with the run's gamma and seed.
pub fn run_grid(sizes: &[usize], dims: &[usize], p: &Params, repeats: usize) -> Result<Vec<BenchRow>> {
    if repeats == 0 || sizes.is_empty() || dims.is_empty() {
        return Err(Error::InvalidArgs("bench needs sizes, dims and repeats >= 1".into()));
    }
    p.validate()?;
    let mut rows = Vec::with_capacity(sizes.len() * dims.len());
    for &n in sizes {
        for &d in dims {
            let (ds, _) = gen_highdim(n, d, p.gamma, p.seed)?;
            let mut times = Vec::with_capacity(repeats);
            for _ in 0..repeats {
                let start = Instant::now();
                let r = recognize(&ds, p)?;
                times.push(start.elapsed().as_secs_f64() * 1e3);
                std::hint::black_box(r);
            }
            times.sort_by(f64::total_cmp);
            rows.push(BenchRow {
                n,
                d,
                repeats,
                median_ms: median(&times),
                min_ms: times[0],
                max_ms: times[repeats - 1],
            });
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(w: W, rows: &[BenchRow]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for r in rows {
        wtr.serialize(r).map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            k => Error::InvalidArgs(format!("{k:?}")),
        })?;
    }
    wtr.flush()?;
    Ok(())
}

/// Ratios of successive medians.
pub fn successive_ratios(rows: &[BenchRow]) -> Vec<f64> {
    rows.windows(2).map(|w| w[1].median_ms / w[0].median_ms).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_row_per_pair() {
        let p = Params {
            epsilon: 0.9,
            mu: 0.9,
            meb_iters: Some(4),
            ..Params::default()
        };
        let rows = run_grid(&[200, 400], &[2, 3, 4], &p, 1).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!((rows[5].n, rows[5].d), (400, 4));
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,d,repeats,median_ms,min_ms,max_ms\n"));
        assert_eq!(text.lines().count(), 7);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[1.0, 2.0, 9.0]), 2.0);
        assert_eq!(median(&[1.0, 3.0]), 2.0);
    }
}
