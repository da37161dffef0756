//! C interface to `ballout`.
//!
//! Datasets and results are opaque handles created and freed by this
//! library. Every fallible call returns a [`BalloutStatus`]; on failure the
//! message is available from [`ballout_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use ballout::{ClassFit, ClassSpec, Dataset, Error, Params, RecognitionResult};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BalloutStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParams = 2,
    Degenerate = 3,
    InvalidDataset = 4,
    OutOfRange = 5,
    SpecInfeasible = 6,
    InvalidArgs = 7,
    Io = 8,
    Panic = 9,
}

impl From<&Error> for BalloutStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidParams(_) => BalloutStatus::InvalidParams,
            Error::DegenerateDataset { .. } => BalloutStatus::Degenerate,
            Error::InvalidDataset(_)
            | Error::EmptySubset
            | Error::DimensionMismatch { .. }
            | Error::Parse { .. } => BalloutStatus::InvalidDataset,
            Error::InstanceTooLarge { .. }
            | Error::KOutOfRange { .. }
            | Error::MOutOfRange { .. }
            | Error::IndexOutOfRange { .. } => BalloutStatus::OutOfRange,
            Error::SpecInfeasible(_) => BalloutStatus::SpecInfeasible,
            Error::InvalidArgs(_) => BalloutStatus::InvalidArgs,
            Error::Io(_) | Error::File { .. } | Error::Json(_) => BalloutStatus::Io,
        }
    }
}

/// Algorithm knobs. `meb_iters == 0` selects `ceil(1 / epsilon^2)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalloutParams {
    pub gamma: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub mu: f64,
    pub meb_iters: usize,
    pub forest_size: usize,
    pub sequential_rounds: usize,
    pub seed: u64,
}

impl From<&BalloutParams> for Params {
    fn from(p: &BalloutParams) -> Self {
        Params {
            gamma: p.gamma,
            epsilon: p.epsilon,
            delta: p.delta,
            mu: p.mu,
            meb_iters: (p.meb_iters > 0).then_some(p.meb_iters),
            forest_size: p.forest_size,
            sequential_rounds: p.sequential_rounds,
            seed: p.seed,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalloutF1 {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Nonzero when the prediction was empty.
    pub empty_prediction: u8,
}

/// Opaque point set.
pub struct BalloutDataset(Dataset);

/// Opaque fitted ball with its inliers.
pub struct BalloutResult {
    center: Vec<f64>,
    radius: f64,
    inliers: Vec<usize>,
    score: f64,
    candidates: usize,
}

/// Opaque list of per-class results.
pub struct BalloutMultiResult(Vec<BalloutResult>);

impl From<RecognitionResult> for BalloutResult {
    fn from(r: RecognitionResult) -> Self {
        BalloutResult {
            center: r.ball.center,
            radius: r.ball.radius,
            inliers: r.inliers,
            score: r.score,
            candidates: r.candidates_evaluated,
        }
    }
}

impl From<ClassFit> for BalloutResult {
    fn from(c: ClassFit) -> Self {
        BalloutResult {
            center: c.ball.center,
            radius: c.ball.radius,
            inliers: c.inliers,
            score: c.score,
            candidates: c.candidates_evaluated,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

enum Failure {
    Null,
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, recording any error or panic for `ballout_last_error`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BalloutStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            BalloutStatus::Ok
        }
        Ok(Err(Failure::Null)) => {
            set_error("null pointer argument".into());
            BalloutStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            BalloutStatus::from(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            BalloutStatus::Panic
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null)
}

unsafe fn as_slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(Failure::Null)
    } else {
        Ok(slice::from_raw_parts(p, len))
    }
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null);
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

#[no_mangle]
pub extern "C" fn ballout_params_default() -> BalloutParams {
    let p = Params::default();
    BalloutParams {
        gamma: p.gamma,
        epsilon: p.epsilon,
        delta: p.delta,
        mu: p.mu,
        meb_iters: p.meb_iters.unwrap_or(0),
        forest_size: p.forest_size,
        sequential_rounds: p.sequential_rounds,
        seed: p.seed,
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ballout_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn ballout_status_str(status: BalloutStatus) -> *const c_char {
    let s: &'static CStr = match status {
        BalloutStatus::Ok => c"ok",
        BalloutStatus::NullPointer => c"null pointer",
        BalloutStatus::InvalidParams => c"invalid parameters",
        BalloutStatus::Degenerate => c"degenerate dataset",
        BalloutStatus::InvalidDataset => c"invalid dataset",
        BalloutStatus::OutOfRange => c"out of range",
        BalloutStatus::SpecInfeasible => c"class specification infeasible",
        BalloutStatus::InvalidArgs => c"invalid arguments",
        BalloutStatus::Io => c"i/o error",
        BalloutStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Copies `n * d` row-major values into a new dataset.
///
/// # Safety
/// `data` must point to `n * d` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballout_dataset_new(
    data: *const f64,
    n: usize,
    d: usize,
    out: *mut *mut BalloutDataset,
) -> BalloutStatus {
    guard(|| {
        let len = n
            .checked_mul(d)
            .ok_or_else(|| Error::InvalidDataset("n * d overflows".into()))?;
        let values = as_slice(data, len)?.to_vec();
        put(out, BalloutDataset(Dataset::new(values, n, d)?))
    })
}

/// Reads a headerless CSV file, one point per row.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballout_dataset_read_csv(
    path: *const c_char,
    out: *mut *mut BalloutDataset,
) -> BalloutStatus {
    guard(|| {
        if path.is_null() {
            return Err(Failure::Null);
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| Error::InvalidArgs("path is not UTF-8".into()))?;
        put(out, BalloutDataset(ballout::io::read_points(path)?))
    })
}

/// # Safety
/// `ds` must be null or a live dataset handle.
#[no_mangle]
pub unsafe extern "C" fn ballout_dataset_n(ds: *const BalloutDataset) -> usize {
    ds.as_ref().map_or(0, |d| d.0.n())
}

/// # Safety
/// `ds` must be null or a live dataset handle.
#[no_mangle]
pub unsafe extern "C" fn ballout_dataset_d(ds: *const BalloutDataset) -> usize {
    ds.as_ref().map_or(0, |d| d.0.d())
}

/// # Safety
/// `ds` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ballout_dataset_free(ds: *mut BalloutDataset) {
    free(ds)
}

/// Fits one ball covering `n - k` points.
///
/// # Safety
/// `ds` and `params` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballout_recognize(
    ds: *const BalloutDataset,
    params: *const BalloutParams,
    out: *mut *mut BalloutResult,
) -> BalloutStatus {
    guard(|| {
        let ds = as_ref(ds)?;
        let p = Params::from(as_ref(params)?);
        put(out, BalloutResult::from(ballout::recognize(&ds.0, &p)?))
    })
}

/// Peels `classes` inlier classes with the given fractions.
///
/// # Safety
/// `fractions` must point to `classes` doubles; other pointers as for
/// [`ballout_recognize`].
#[no_mangle]
pub unsafe extern "C" fn ballout_peel(
    ds: *const BalloutDataset,
    params: *const BalloutParams,
    fractions: *const f64,
    classes: usize,
    out: *mut *mut BalloutMultiResult,
) -> BalloutStatus {
    guard(|| {
        let ds = as_ref(ds)?;
        let p = Params::from(as_ref(params)?);
        let spec = ClassSpec::new(as_slice(fractions, classes)?.to_vec());
        let fits = ballout::peel(&ds.0, &spec, &p)?;
        put(out, BalloutMultiResult(fits.into_iter().map(Into::into).collect()))
    })
}

/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ballout_result_dim(r: *const BalloutResult) -> usize {
    r.as_ref().map_or(0, |r| r.center.len())
}

/// Center coordinates, `ballout_result_dim` values owned by the result.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ballout_result_center(r: *const BalloutResult) -> *const f64 {
    r.as_ref().map_or(ptr::null(), |r| r.center.as_ptr())
}

/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ballout_result_radius(r: *const BalloutResult) -> f64 {
    r.as_ref().map_or(f64::NAN, |r| r.radius)
}

/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ballout_result_score(r: *const BalloutResult) -> f64 {
    r.as_ref().map_or(f64::NAN, |r| r.score)
}

/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ballout_result_candidates(r: *const BalloutResult) -> usize {
    r.as_ref().map_or(0, |r| r.candidates)
}

/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ballout_result_inlier_count(r: *const BalloutResult) -> usize {
    r.as_ref().map_or(0, |r| r.inliers.len())
}

/// Sorted 0-based inlier row indices, owned by the result.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ballout_result_inliers(r: *const BalloutResult) -> *const usize {
    r.as_ref().map_or(ptr::null(), |r| r.inliers.as_ptr())
}

/// # Safety
/// `r` must be null or a handle from [`ballout_recognize`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ballout_result_free(r: *mut BalloutResult) {
    free(r)
}

/// # Safety
/// `m` must be null or a live multi-result handle.
#[no_mangle]
pub unsafe extern "C" fn ballout_multi_count(m: *const BalloutMultiResult) -> usize {
    m.as_ref().map_or(0, |m| m.0.len())
}

/// Class `j`, borrowed from `m`; null if out of range. Do not free it.
///
/// # Safety
/// `m` must be null or a live multi-result handle.
#[no_mangle]
pub unsafe extern "C" fn ballout_multi_class(
    m: *const BalloutMultiResult,
    j: usize,
) -> *const BalloutResult {
    m.as_ref()
        .and_then(|m| m.0.get(j))
        .map_or(ptr::null(), |r| r as *const BalloutResult)
}

/// # Safety
/// `m` must be null or a handle from [`ballout_peel`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ballout_multi_free(m: *mut BalloutMultiResult) {
    free(m)
}

/// Precision, recall and F1 of `predicted` against `truth`, both subsets
/// of `0..n`.
///
/// # Safety
/// Each array must hold its stated length; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballout_f1(
    predicted: *const usize,
    predicted_len: usize,
    truth: *const usize,
    truth_len: usize,
    n: usize,
    out: *mut BalloutF1,
) -> BalloutStatus {
    guard(|| {
        let s = ballout::f1(as_slice(predicted, predicted_len)?, as_slice(truth, truth_len)?, n)?;
        if out.is_null() {
            return Err(Failure::Null);
        }
        *out = BalloutF1 {
            precision: s.precision,
            recall: s.recall,
            f1: s.f1,
            empty_prediction: s.empty_prediction as u8,
        };
        Ok(())
    })
}
