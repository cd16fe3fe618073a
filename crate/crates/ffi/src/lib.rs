//! C ABI over `rellich`.
//!
//! Every fallible function returns a [`RellichStatus`]; on failure the message is
//! available from [`rellich_last_error_message`] on the same thread. Objects are
//! opaque handles released with their `_free` function. The exponent `p` is
//! passed as a `double`, with `INFINITY` meaning `p = ∞`.

use std::cell::RefCell;
use std::ffi::{c_char, c_void, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use rellich::params::{base_alpha, critical_alphas, discriminant, ExtendedIndex, OperatorParams, Tolerance};
use rellich::profile::{Profile1D, Smoothness};
use rellich::quadrature::QuadratureSpec;
use rellich::radial::{counterexample_ratio, default_counterexample_seed};
use rellich::spectral::{classify_a, classify_gamma, Interval, SpectralClassification, SpectralDomain};
use rellich::validity::{best_constant, decide, Branch, DomainKind, HarmonicSet, Verdict};
use rellich::verify::{verify_hardy, verify_rellich, VerificationReport, VerifyOptions};
use rellich::RellichError;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RellichStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    PreconditionViolated = 3,
    UnsupportedRegime = 4,
    OutOfRange = 5,
    NumericalFailure = 6,
    CorpusOutsideSubspace = 7,
    InvalidUtf8 = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RellichDomain {
    WholeSpace = 0,
    UnitBall = 1,
    BoundedSmooth = 2,
    ExteriorSmooth = 3,
    ExteriorBall = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RellichBranch {
    Minus = 0,
    Plus = 1,
    BoundaryObstruction = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RellichInterval {
    HalfLine = 0,
    UnitInterval = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RellichSpectralFlags {
    pub in_spectrum: bool,
    pub in_approx: bool,
    pub in_point_certified: bool,
    pub in_residual_not_approx: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RellichFailingMode {
    pub n: u32,
    pub branch: RellichBranch,
    pub critical_alpha: f64,
}

/// Operator coefficients `(N, c, b)`.
pub struct RellichParams(OperatorParams);
/// Set of spherical-harmonic degrees.
pub struct RellichHarmonicSet(HarmonicSet);
/// Outcome of a decision.
pub struct RellichVerdict(Verdict);
/// Compactly supported one-dimensional profile.
pub struct RellichProfile(Profile1D);
/// Numerical verification report.
pub struct RellichReport(VerificationReport);

/// `double f(double s, void *user_data)`; NULL is rejected.
pub type RellichScalarCallback = Option<extern "C" fn(f64, *mut c_void) -> f64>;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    let c = CString::new(text).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &RellichError) -> RellichStatus {
    match err {
        RellichError::InvalidParameter(_)
        | RellichError::InvalidGeometry(_)
        | RellichError::DegenerateWeight
        | RellichError::BetaZero => RellichStatus::InvalidParameter,
        RellichError::PreconditionViolated(_)
        | RellichError::NotCritical { .. }
        | RellichError::NonPositiveDiscriminant(_)
        | RellichError::NonzeroDiscriminant(_)
        | RellichError::VariantMismatch(_) => RellichStatus::PreconditionViolated,
        RellichError::UnsupportedRegime(_) => RellichStatus::UnsupportedRegime,
        RellichError::OutOfRange(_) => RellichStatus::OutOfRange,
        RellichError::NonFiniteIntegrand { .. } => RellichStatus::NumericalFailure,
        RellichError::CorpusOutsideSubspace { .. } => RellichStatus::CorpusOutsideSubspace,
    }
}

struct Failure(RellichStatus, String);

impl From<RellichError> for Failure {
    fn from(e: RellichError) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(RellichStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, records any error and converts panics into [`RellichStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RellichStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            RellichStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RellichStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn index(p: f64) -> Result<ExtendedIndex, Failure> {
    Ok(ExtendedIndex::new(p)?)
}

fn domain_kind(d: RellichDomain) -> DomainKind {
    match d {
        RellichDomain::WholeSpace => DomainKind::WholeSpace,
        RellichDomain::UnitBall => DomainKind::UnitBall,
        RellichDomain::BoundedSmooth => DomainKind::BoundedSmooth,
        RellichDomain::ExteriorSmooth => DomainKind::ExteriorSmooth,
        RellichDomain::ExteriorBall => DomainKind::ExteriorBall,
    }
}

fn branch_of(b: Branch) -> RellichBranch {
    match b {
        Branch::Minus => RellichBranch::Minus,
        Branch::Plus => RellichBranch::Plus,
        Branch::BoundaryObstruction => RellichBranch::BoundaryObstruction,
    }
}

fn flags(c: SpectralClassification) -> RellichSpectralFlags {
    RellichSpectralFlags {
        in_spectrum: c.in_spectrum,
        in_approx: c.in_approx,
        in_point_certified: c.in_point_certified,
        in_residual_not_approx: c.in_residual_not_approx,
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failed call on this thread, or NULL. Valid until the next
/// call into this library on the same thread.
#[no_mangle]
pub extern "C" fn rellich_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by a `_to_json` function.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rellich_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rellich_params_new(dim: u32, c: f64, b: f64, out: *mut *mut RellichParams) -> RellichStatus {
    guard(|| {
        let params = OperatorParams::new(dim, c, b)?;
        write_out(out, Box::into_raw(Box::new(RellichParams(params))), "out")
    })
}

/// # Safety
/// `params` must come from [`rellich_params_new`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn rellich_params_free(params: *mut RellichParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// `D = b + ((N − 2 + c)/2)²`; NaN when `params` is NULL.
///
/// # Safety
/// `params` must be a valid handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn rellich_discriminant(params: *const RellichParams) -> f64 {
    params.as_ref().map_or(f64::NAN, |p| discriminant(&p.0))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rellich_base_alpha(params: *const RellichParams, p: f64, out: *mut f64) -> RellichStatus {
    guard(|| {
        let prm = deref(params, "params")?;
        write_out(out, base_alpha(&prm.0, index(p)?), "out")
    })
}

/// Critical exponents `α_n^−` and `α_n^+`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rellich_critical_alphas(
    params: *const RellichParams,
    p: f64,
    n: u32,
    out_minus: *mut f64,
    out_plus: *mut f64,
) -> RellichStatus {
    guard(|| {
        let prm = deref(params, "params")?;
        let (lo, hi) = critical_alphas(&prm.0, index(p)?, n);
        write_out(out_minus, lo, "out_minus")?;
        write_out(out_plus, hi, "out_plus")
    })
}

/// Best constant `b + γ_p(α, c)`; `*out_available` is false outside its range.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rellich_best_constant(
    params: *const RellichParams,
    p: f64,
    alpha: f64,
    out: *mut f64,
    out_available: *mut bool,
) -> RellichStatus {
    guard(|| {
        let prm = deref(params, "params")?;
        let c = best_constant(&prm.0, index(p)?, alpha);
        write_out(out_available, c.is_some(), "out_available")?;
        write_out(out, c.unwrap_or(f64::NAN), "out")
    })
}

/// Parses `all`, `ge:N`, `set:a,b,...` or `ne:a,b,...`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rellich_harmonic_set_parse(
    text: *const c_char,
    out: *mut *mut RellichHarmonicSet,
) -> RellichStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Failure(RellichStatus::InvalidUtf8, "text is not UTF-8".into()))?;
        let set: HarmonicSet = s.parse()?;
        write_out(out, Box::into_raw(Box::new(RellichHarmonicSet(set))), "out")
    })
}

/// # Safety
/// `set` must come from [`rellich_harmonic_set_parse`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn rellich_harmonic_set_free(set: *mut RellichHarmonicSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Decides the inequality. `set` may be NULL for all degrees.
///
/// # Safety
/// Pointers must be valid; `set` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn rellich_decide(
    params: *const RellichParams,
    p: f64,
    alpha: f64,
    domain: RellichDomain,
    set: *const RellichHarmonicSet,
    tol: f64,
    out: *mut *mut RellichVerdict,
) -> RellichStatus {
    guard(|| {
        let prm = deref(params, "params")?;
        let all = HarmonicSet::All;
        let set = set.as_ref().map_or(&all, |s| &s.0);
        let v = decide(&prm.0, index(p)?, alpha, domain_kind(domain), set, Tolerance::new(tol)?)?;
        write_out(out, Box::into_raw(Box::new(RellichVerdict(v))), "out")
    })
}

/// # Safety
/// `verdict` must come from [`rellich_decide`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn rellich_verdict_free(verdict: *mut RellichVerdict) {
    if !verdict.is_null() {
        drop(Box::from_raw(verdict));
    }
}

/// # Safety
/// `verdict` must be a valid handle or NULL (returns false).
#[no_mangle]
pub unsafe extern "C" fn rellich_verdict_holds(verdict: *const RellichVerdict) -> bool {
    verdict.as_ref().is_some_and(|v| v.0.holds)
}

/// Writes the best constant and returns true when the verdict carries one.
///
/// # Safety
/// `verdict` must be a valid handle or NULL; `out` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn rellich_verdict_best_constant(verdict: *const RellichVerdict, out: *mut f64) -> bool {
    match verdict.as_ref().and_then(|v| v.0.best_constant) {
        Some(c) => {
            if !out.is_null() {
                out.write(c);
            }
            true
        }
        None => false,
    }
}

/// # Safety
/// `verdict` must be a valid handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn rellich_verdict_failing_mode_count(verdict: *const RellichVerdict) -> usize {
    verdict.as_ref().map_or(0, |v| v.0.failing_modes.len())
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rellich_verdict_failing_mode(
    verdict: *const RellichVerdict,
    i: usize,
    out: *mut RellichFailingMode,
) -> RellichStatus {
    guard(|| {
        let v = deref(verdict, "verdict")?;
        let m = v.0.failing_modes.get(i).ok_or_else(|| {
            Failure(RellichStatus::OutOfRange, format!("mode index {i} out of range"))
        })?;
        write_out(
            out,
            RellichFailingMode { n: m.n, branch: branch_of(m.branch), critical_alpha: m.critical_alpha },
            "out",
        )
    })
}

/// JSON form of the verdict, released with [`rellich_string_free`]; NULL on error.
///
/// # Safety
/// `verdict` must be a valid handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn rellich_verdict_to_json(verdict: *const RellichVerdict) -> *mut c_char {
    match verdict.as_ref() {
        Some(v) => into_c_string(serde_json::to_string(&v.0).unwrap_or_default()),
        None => {
            set_error("verdict is null");
            ptr::null_mut()
        }
    }
}

/// Spectral classification of `λ = re + i·im` for `A` on the whole space or unit ball.
///
/// # Safety
/// Pointers must be valid; `set` may be NULL for all degrees.
#[no_mangle]
pub unsafe extern "C" fn rellich_classify_a(
    params: *const RellichParams,
    p: f64,
    set: *const RellichHarmonicSet,
    domain: RellichDomain,
    re: f64,
    im: f64,
    out: *mut RellichSpectralFlags,
) -> RellichStatus {
    guard(|| {
        let prm = deref(params, "params")?;
        let all = HarmonicSet::All;
        let set = set.as_ref().map_or(&all, |s| &s.0);
        let dom = match domain {
            RellichDomain::WholeSpace => SpectralDomain::WholeSpace,
            RellichDomain::UnitBall => SpectralDomain::UnitBall,
            other => {
                return Err(Failure(
                    RellichStatus::InvalidParameter,
                    format!("spectral classification supports the whole space and unit ball, got {other:?}"),
                ))
            }
        };
        let c = classify_a(&prm.0, index(p)?, set, dom, complex(re, im));
        write_out(out, flags(c), "out")
    })
}

fn complex(re: f64, im: f64) -> rellich::ComplexRoot {
    rellich::ComplexRoot::new(re, im)
}

/// Spectral classification for the radial operator on an interval.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rellich_classify_gamma(
    params: *const RellichParams,
    p: f64,
    interval: RellichInterval,
    re: f64,
    im: f64,
    out: *mut RellichSpectralFlags,
) -> RellichStatus {
    guard(|| {
        let prm = deref(params, "params")?;
        let iv = match interval {
            RellichInterval::HalfLine => Interval::HalfLine,
            RellichInterval::UnitInterval => Interval::UnitInterval,
        };
        write_out(out, flags(classify_gamma(&prm.0, index(p)?, iv, complex(re, im))), "out")
    })
}

/// `(1 − t²)³` rescaled to `[a, b]`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rellich_profile_bump(a: f64, b: f64, out: *mut *mut RellichProfile) -> RellichStatus {
    guard(|| {
        let v = Profile1D::bump(a, b)?;
        write_out(out, Box::into_raw(Box::new(RellichProfile(v))), "out")
    })
}

#[derive(Clone, Copy)]
struct UserData(*mut c_void);

// The caller guarantees the callbacks and user data may be used from any thread.
unsafe impl Send for UserData {}
unsafe impl Sync for UserData {}

/// Profile given by `v`, `v′`, `v″` callbacks with support `[a, b]`. The
/// callbacks must be thread-safe and `user_data` must outlive the profile.
///
/// # Safety
/// Callbacks must be valid function pointers; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rellich_profile_from_callbacks(
    value: RellichScalarCallback,
    d1: RellichScalarCallback,
    d2: RellichScalarCallback,
    user_data: *mut c_void,
    a: f64,
    b: f64,
    out: *mut *mut RellichProfile,
) -> RellichStatus {
    guard(|| {
        let (Some(f0), Some(f1), Some(f2)) = (value, d1, d2) else {
            return Err(null("callback"));
        };
        let ud = UserData(user_data);
        let wrap = move |f: extern "C" fn(f64, *mut c_void) -> f64| -> Arc<dyn Fn(f64) -> f64 + Send + Sync> {
            Arc::new(move |s| {
                let ud = ud;
                f(s, ud.0)
            })
        };
        let v = Profile1D::new(wrap(f0), wrap(f1), wrap(f2), (a, b), Smoothness::C2, "callback profile")?;
        write_out(out, Box::into_raw(Box::new(RellichProfile(v))), "out")
    })
}

/// # Safety
/// `profile` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn rellich_profile_free(profile: *mut RellichProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// Ratio of the counterexample family at parameter `eps`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rellich_counterexample_ratio(
    params: *const RellichParams,
    p: f64,
    n: u32,
    branch: RellichBranch,
    eps: f64,
    out: *mut f64,
) -> RellichStatus {
    guard(|| {
        let prm = deref(params, "params")?;
        let br = match branch {
            RellichBranch::Minus => Branch::Minus,
            RellichBranch::Plus => Branch::Plus,
            RellichBranch::BoundaryObstruction => {
                return Err(Failure(RellichStatus::InvalidParameter, "branch must be minus or plus".into()))
            }
        };
        let r = counterexample_ratio(&prm.0, index(p)?, n, br, eps, &default_counterexample_seed(), &QuadratureSpec::default())?;
        write_out(out, r.ratio, "out")
    })
}

/// Verifies the inequality on `len` separable functions `(degrees[i], profiles[i])`.
///
/// # Safety
/// Arrays must hold `len` valid entries; `set` may be NULL for all degrees.
#[no_mangle]
pub unsafe extern "C" fn rellich_verify_rellich(
    params: *const RellichParams,
    p: f64,
    alpha: f64,
    domain: RellichDomain,
    set: *const RellichHarmonicSet,
    degrees: *const u32,
    profiles: *const *const RellichProfile,
    len: usize,
    out: *mut *mut RellichReport,
) -> RellichStatus {
    guard(|| {
        let prm = deref(params, "params")?;
        let all = HarmonicSet::All;
        let set = set.as_ref().map_or(&all, |s| &s.0);
        if len > 0 && (degrees.is_null() || profiles.is_null()) {
            return Err(null("corpus"));
        }
        let mut corpus = Vec::with_capacity(len);
        for i in 0..len {
            let prof = deref(*profiles.add(i), "profile")?;
            corpus.push((*degrees.add(i), prof.0.clone()));
        }
        let report = verify_rellich(&prm.0, index(p)?, alpha, domain_kind(domain), set, &corpus, &VerifyOptions::default())?;
        write_out(out, Box::into_raw(Box::new(RellichReport(report))), "out")
    })
}

/// Weighted Hardy inequality for a radial profile in `r`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rellich_verify_hardy(
    dim: u32,
    p: f64,
    beta: f64,
    profile: *const RellichProfile,
    out: *mut *mut RellichReport,
) -> RellichStatus {
    guard(|| {
        let prof = deref(profile, "profile")?;
        let report = verify_hardy(dim, index(p)?, beta, &prof.0, &VerifyOptions::default())?;
        write_out(out, Box::into_raw(Box::new(RellichReport(report))), "out")
    })
}

/// # Safety
/// `report` must be a valid handle or NULL (returns false).
#[no_mangle]
pub unsafe extern "C" fn rellich_report_passed(report: *const RellichReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.passed)
}

/// # Safety
/// `report` must be a valid handle or NULL (returns NaN).
#[no_mangle]
pub unsafe extern "C" fn rellich_report_min_margin(report: *const RellichReport) -> f64 {
    report.as_ref().map_or(f64::NAN, |r| r.0.min_margin)
}

/// JSON form of the report, released with [`rellich_string_free`]; NULL on error.
///
/// # Safety
/// `report` must be a valid handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn rellich_report_to_json(report: *const RellichReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => into_c_string(serde_json::to_string(&r.0).unwrap_or_default()),
        None => {
            set_error("report is null");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `report` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn rellich_report_free(report: *mut RellichReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
