//! Outlier recognition through approximate minimum enclosing balls with
//! outliers.
//!
//! [`recognize`] returns a ball around `n - k` points whose radius is within
//! `1 + epsilon` of the best ball covering `(1 - gamma) n` points, with
//! probability at least `(1 - mu)(1 - gamma)` per tree. Boosting with a
//! forest or re-rooted trees raises that probability; [`peel`] handles
//! several inlier classes.
//!
//! ```
//! use ballout::{recognize, Dataset, Params};
//!
//! let mut rows = vec![[0.0, 0.0]; 18];
//! rows.push([50.0, 50.0]);
//! rows.push([-40.0, 60.0]);
//! let ds = Dataset::from_rows(&rows).unwrap();
//! let p = Params { gamma: 0.1, ..Params::default() };
//! let fit = recognize(&ds, &p).unwrap();
//! assert!(fit.inliers.iter().all(|&i| i < 18));
//! ```

pub mod bench;
pub mod dataset;
pub mod error;
pub mod eval;
pub mod geometry;
pub mod io;
pub mod meb;
pub mod multiclass;
pub mod params;
pub mod report;
pub mod rgd;
pub mod select;
pub mod synth;

pub use dataset::Dataset;
pub use error::{Error, Result};
pub use eval::{f1, F1Score};
pub use geometry::Ball;
pub use meb::{approx_meb_center, exact_meb_oracle, ORACLE_LIMIT};
pub use multiclass::{peel, ClassFit, ClassSpec};
pub use params::{derive_params, DerivedParams, Params};
pub use rgd::{recognize, recognize_with, RecognitionResult};
pub use select::top_k_farthest;
