//! C ABI over the `stabilab` library.
//!
//! Conventions:
//!
//! - Every fallible call returns a [`StabilabStatus`] and writes its result
//!   through an out-pointer. On failure the out-pointer is left untouched and
//!   [`stabilab_last_error_message`] describes the problem.
//! - Datasets and ridge models are opaque handles. Each `*_free` accepts NULL.
//! - Panics never cross the boundary; they surface as `STABILAB_STATUS_PANIC`.
//! - Indices are 0-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stabilab::bounds::{gamma_set, pac_bound_bounded, pac_bound_subgaussian, GammaSet};
use stabilab::datagen::{sample_dataset, DataSpec, Dataset};
use stabilab::learners::{loo_estimate, ridge_fit, ridge_loo_fast, CostKind, Learner, RidgeModel};
use stabilab::seed::SeedSpec;
use stabilab::stability::{check_corollary_domain, knn_gamma_1, ridge_gamma_q, RidgeStabilityInputs};
use stabilab::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    Singular = 4,
    /// Parameters outside the region where a bound holds.
    Domain = 5,
    Precondition = 6,
    Io = 7,
    Panic = 8,
}

/// Opaque labelled sample.
pub struct StabilabDataset(Dataset);

/// Opaque fitted ridge model.
pub struct StabilabRidgeModel(RidgeModel);

/// The three constants of the ridge moment bounds, with the inputs they were built from.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StabilabGammaSet {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub b_x: f64,
    pub lambda: f64,
    pub eta: f64,
    pub kappa: f64,
}

impl From<GammaSet> for StabilabGammaSet {
    fn from(g: GammaSet) -> Self {
        Self { gamma1: g.gamma1, gamma2: g.gamma2, gamma3: g.gamma3, b_x: g.b_x, lambda: g.lambda, eta: g.eta, kappa: g.kappa }
    }
}

impl From<StabilabGammaSet> for GammaSet {
    fn from(g: StabilabGammaSet) -> Self {
        Self { gamma1: g.gamma1, gamma2: g.gamma2, gamma3: g.gamma3, b_x: g.b_x, lambda: g.lambda, eta: g.eta, kappa: g.kappa }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(StabilabStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::DimensionMismatch { .. } => StabilabStatus::DimensionMismatch,
            Error::Singular => StabilabStatus::Singular,
            Error::Domain(_) => StabilabStatus::Domain,
            Error::Precondition(_) => StabilabStatus::Precondition,
            Error::Io(_) | Error::Csv(_) => StabilabStatus::Io,
            _ => StabilabStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(StabilabStatus::NullPointer, format!("{what} is NULL"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(StabilabStatus::InvalidArgument, msg.into())
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> StabilabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StabilabStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside stabilab".into());
            StabilabStatus::Panic
        }
    }
}

/// # Safety
/// `p` is NULL or valid for writes of `T`.
unsafe fn write_out<T>(p: *mut T, v: T) -> Result<(), Failure> {
    if p.is_null() {
        return Err(null("output pointer"));
    }
    p.write(v);
    Ok(())
}

/// # Safety
/// `p` is NULL or points to `len` readable values.
unsafe fn slice<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

/// # Safety
/// `p` is NULL or a handle from this library that has not been freed.
unsafe fn dataset<'a>(p: *const StabilabDataset) -> Result<&'a Dataset, Failure> {
    p.as_ref().map(|d| &d.0).ok_or_else(|| null("dataset"))
}

/// Message for the most recent failure on the calling thread, or NULL if none.
/// The string stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn stabilab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn stabilab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a dataset from `n` row-major feature rows of width `d` and `n` labels.
///
/// # Safety
/// `x` points to `n * d` doubles, `y` to `n` doubles, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stabilab_dataset_new(
    x: *const f64,
    y: *const f64,
    n: usize,
    d: usize,
    out: *mut *mut StabilabDataset,
) -> StabilabStatus {
    guard(|| {
        let len = n.checked_mul(d).ok_or_else(|| invalid("n * d overflows"))?;
        let xs = slice(x, len, "x")?.to_vec();
        let ys = slice(y, n, "y")?.to_vec();
        let data = Dataset::new(d, xs, ys)?;
        write_out(out, Box::into_raw(Box::new(StabilabDataset(data))))
    })
}

/// Draws `n` points from the distribution described by `spec_json` (the JSON
/// form of a data spec) on stream `(base_seed, stream_index)`.
///
/// # Safety
/// `spec_json` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stabilab_dataset_sample(
    spec_json: *const c_char,
    n: usize,
    base_seed: u64,
    stream_index: u64,
    out: *mut *mut StabilabDataset,
) -> StabilabStatus {
    guard(|| {
        if spec_json.is_null() {
            return Err(null("spec_json"));
        }
        let text = CStr::from_ptr(spec_json).to_str().map_err(|_| invalid("spec_json is not UTF-8"))?;
        let spec: DataSpec = serde_json::from_str(text).map_err(|e| invalid(format!("bad spec JSON: {e}")))?;
        let data = sample_dataset(&spec, n, SeedSpec::new(base_seed, stream_index))?;
        write_out(out, Box::into_raw(Box::new(StabilabDataset(data))))
    })
}

/// # Safety
/// `data` is NULL or an unfreed dataset handle.
#[no_mangle]
pub unsafe extern "C" fn stabilab_dataset_free(data: *mut StabilabDataset) {
    if !data.is_null() {
        drop(Box::from_raw(data));
    }
}

/// # Safety
/// `data` is a dataset handle; `n` and `d` are writable.
#[no_mangle]
pub unsafe extern "C" fn stabilab_dataset_shape(
    data: *const StabilabDataset,
    n: *mut usize,
    d: *mut usize,
) -> StabilabStatus {
    guard(|| {
        let data = dataset(data)?;
        write_out(n, data.n())?;
        write_out(d, data.dim())
    })
}

/// # Safety
/// `data` is a dataset handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stabilab_ridge_fit(
    data: *const StabilabDataset,
    lambda: f64,
    out: *mut *mut StabilabRidgeModel,
) -> StabilabStatus {
    guard(|| {
        let model = ridge_fit(dataset(data)?, lambda)?;
        write_out(out, Box::into_raw(Box::new(StabilabRidgeModel(model))))
    })
}

/// # Safety
/// `model` is NULL or an unfreed model handle.
#[no_mangle]
pub unsafe extern "C" fn stabilab_ridge_free(model: *mut StabilabRidgeModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Copies the coefficients into `beta`, which holds `len` doubles; `len` must
/// equal the feature dimension.
///
/// # Safety
/// `model` is a model handle and `beta` has room for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn stabilab_ridge_coefficients(
    model: *const StabilabRidgeModel,
    beta: *mut f64,
    len: usize,
) -> StabilabStatus {
    guard(|| {
        let model = &model.as_ref().ok_or_else(|| null("model"))?.0;
        if len != model.beta.len() {
            return Err(Error::DimensionMismatch { expected: model.beta.len(), got: len }.into());
        }
        if beta.is_null() {
            return Err(null("beta"));
        }
        ptr::copy_nonoverlapping(model.beta.as_ptr(), beta, len);
        Ok(())
    })
}

/// # Safety
/// `model` is a model handle, `x` holds `d` doubles, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stabilab_ridge_predict(
    model: *const StabilabRidgeModel,
    x: *const f64,
    d: usize,
    out: *mut f64,
) -> StabilabStatus {
    guard(|| {
        let model = &model.as_ref().ok_or_else(|| null("model"))?.0;
        write_out(out, model.predict(slice(x, d, "x")?)?)
    })
}

/// Leave-one-out squared-error risk of ridge regression via rank-one downdates.
///
/// # Safety
/// `data` is a dataset handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stabilab_ridge_loo(data: *const StabilabDataset, lambda: f64, out: *mut f64) -> StabilabStatus {
    guard(|| write_out(out, ridge_loo_fast(dataset(data)?, lambda)?))
}

/// Leave-one-out zero-one risk of the k-nearest-neighbours classifier.
///
/// # Safety
/// `data` is a dataset handle with 0/1 labels and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stabilab_knn_loo(data: *const StabilabDataset, k: usize, out: *mut f64) -> StabilabStatus {
    guard(|| write_out(out, loo_estimate(Learner::Knn { k }, dataset(data)?, CostKind::ZeroOne)?))
}

/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stabilab_gamma_set(
    b_x: f64,
    lambda: f64,
    eta: f64,
    out: *mut StabilabGammaSet,
) -> StabilabStatus {
    guard(|| write_out(out, gamma_set(b_x, lambda, eta)?.into()))
}

/// Returns `STABILAB_STATUS_OK` when `(b_x, lambda, eta, n)` lies in the
/// region where the moment and PAC bounds hold, `STABILAB_STATUS_DOMAIN` otherwise.
#[no_mangle]
pub extern "C" fn stabilab_check_bound_domain(b_x: f64, lambda: f64, eta: f64, n: usize) -> StabilabStatus {
    guard(|| Ok(check_corollary_domain(b_x, lambda, eta, n)?))
}

/// PAC deviation bound for bounded labels, holding with probability `1 − e·e^{−x}`.
///
/// # Safety
/// `gammas` is readable and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stabilab_pac_bound_bounded(
    gammas: *const StabilabGammaSet,
    b_y: f64,
    n: usize,
    x: f64,
    out: *mut f64,
) -> StabilabStatus {
    guard(|| {
        let g: GammaSet = (*gammas.as_ref().ok_or_else(|| null("gammas"))?).into();
        if !(b_y > 0.0 && x > 0.0 && n > 0) {
            return Err(invalid("b_y, x and n must be positive"));
        }
        write_out(out, pac_bound_bounded(&g, b_y, n, x))
    })
}

/// PAC deviation bound for sub-Gaussian labels with mean `mean_y` and proxy `v`.
///
/// # Safety
/// `gammas` is readable and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stabilab_pac_bound_subgaussian(
    gammas: *const StabilabGammaSet,
    mean_y: f64,
    v: f64,
    n: usize,
    x: f64,
    out: *mut f64,
) -> StabilabStatus {
    guard(|| {
        let g: GammaSet = (*gammas.as_ref().ok_or_else(|| null("gammas"))?).into();
        if !(v > 0.0 && x > 0.0 && n > 0 && mean_y.is_finite()) {
            return Err(invalid("v, x and n must be positive and mean_y finite"));
        }
        write_out(out, pac_bound_subgaussian(&g, mean_y, v, n, x))
    })
}

/// Ridge L^q stability constant; `y_norm_2q` may be `INFINITY`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stabilab_ridge_gamma_q(
    b_x: f64,
    lambda: f64,
    eta: f64,
    n: usize,
    y_norm_2q: f64,
    out: *mut f64,
) -> StabilabStatus {
    guard(|| write_out(out, ridge_gamma_q(RidgeStabilityInputs { b_x, lambda, eta, n, y_norm_2q })?))
}

/// kNN first-order stability constant `(4/√(2π))·√k/n`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stabilab_knn_gamma_1(k: usize, n: usize, out: *mut f64) -> StabilabStatus {
    guard(|| write_out(out, knn_gamma_1(k, n)?))
}
