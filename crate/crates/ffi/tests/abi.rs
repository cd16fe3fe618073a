use std::ffi::{c_void, CStr};
use std::ptr;

use rellich_ffi::*;

fn params(dim: u32, c: f64, b: f64) -> *mut RellichParams {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { rellich_params_new(dim, c, b, &mut out) }, RellichStatus::Ok);
    out
}

fn last_error() -> String {
    let p = rellich_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn params_and_closed_forms() {
    let prm = params(5, 0.0, 0.0);
    unsafe {
        assert_eq!(rellich_discriminant(prm), 2.25);
        let (mut lo, mut hi) = (0.0, 0.0);
        assert_eq!(rellich_critical_alphas(prm, 2.0, 0, &mut lo, &mut hi), RellichStatus::Ok);
        assert_eq!((lo, hi), (-0.5, 2.5));
        let mut base = 0.0;
        assert_eq!(rellich_base_alpha(prm, f64::INFINITY, &mut base), RellichStatus::Ok);
        assert_eq!(base, 3.5);
        let (mut c, mut ok) = (0.0, false);
        assert_eq!(rellich_best_constant(prm, 2.0, 0.0, &mut c, &mut ok), RellichStatus::Ok);
        assert!(ok && (c - 1.25).abs() < 1e-12);
        rellich_params_free(prm);
    }
    assert!(unsafe { rellich_discriminant(ptr::null()) }.is_nan());
}

#[test]
fn invalid_input_sets_status_and_message() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { rellich_params_new(1, 0.0, 0.0, &mut out) }, RellichStatus::InvalidParameter);
    assert!(out.is_null());
    assert!(!last_error().is_empty());
    let prm = params(5, 0.0, 0.0);
    let mut base = 0.0;
    assert_eq!(unsafe { rellich_base_alpha(prm, 0.5, &mut base) }, RellichStatus::InvalidParameter);
    assert_eq!(unsafe { rellich_base_alpha(prm, 2.0, ptr::null_mut()) }, RellichStatus::NullPointer);
    assert_eq!(unsafe { rellich_base_alpha(prm, 2.0, &mut base) }, RellichStatus::Ok);
    assert!(rellich_last_error_message().is_null());
    unsafe { rellich_params_free(prm) };
}

#[test]
fn decision_round_trip() {
    let prm = params(5, 0.0, 0.0);
    let mut set = ptr::null_mut();
    assert_eq!(unsafe { rellich_harmonic_set_parse(c"all".as_ptr(), &mut set) }, RellichStatus::Ok);
    let mut v = ptr::null_mut();
    unsafe {
        assert_eq!(rellich_decide(prm, 2.0, 3.0, RellichDomain::UnitBall, set, 1e-9, &mut v), RellichStatus::Ok);
        assert!(!rellich_verdict_holds(v));
        assert_eq!(rellich_verdict_failing_mode_count(v), 1);
        let mut m = RellichFailingMode { n: 99, branch: RellichBranch::Minus, critical_alpha: 0.0 };
        assert_eq!(rellich_verdict_failing_mode(v, 0, &mut m), RellichStatus::Ok);
        assert_eq!(m.branch, RellichBranch::BoundaryObstruction);
        assert_eq!(rellich_verdict_failing_mode(v, 1, &mut m), RellichStatus::OutOfRange);
        let json = rellich_verdict_to_json(v);
        assert!(CStr::from_ptr(json).to_str().unwrap().contains("BoundaryObstruction"));
        rellich_string_free(json);
        rellich_verdict_free(v);

        assert_eq!(rellich_decide(prm, 2.0, 0.0, RellichDomain::WholeSpace, ptr::null(), 1e-9, &mut v), RellichStatus::Ok);
        let mut c = 0.0;
        assert!(rellich_verdict_holds(v) && rellich_verdict_best_constant(v, &mut c));
        assert!((c - 1.25).abs() < 1e-12);
        rellich_verdict_free(v);

        assert_eq!(
            rellich_decide(prm, 1.0, 0.0, RellichDomain::BoundedSmooth, set, 1e-9, &mut v),
            RellichStatus::PreconditionViolated
        );
        let mut bad = ptr::null_mut();
        assert_eq!(rellich_harmonic_set_parse(c"ge:x".as_ptr(), &mut bad), RellichStatus::InvalidParameter);
        rellich_harmonic_set_free(set);
        rellich_params_free(prm);
    }
}

#[test]
fn spectral_flags() {
    let prm = params(5, 0.0, 0.0);
    let mut f = RellichSpectralFlags::default();
    unsafe {
        assert_eq!(rellich_classify_gamma(prm, 2.0, RellichInterval::HalfLine, -1.25, 0.0, &mut f), RellichStatus::Ok);
        assert!(f.in_spectrum && f.in_approx);
        assert_eq!(rellich_classify_a(prm, 2.0, ptr::null(), RellichDomain::WholeSpace, 5.0, 0.0, &mut f), RellichStatus::Ok);
        assert!(!f.in_spectrum);
        assert_eq!(
            rellich_classify_a(prm, 2.0, ptr::null(), RellichDomain::BoundedSmooth, 0.0, 0.0, &mut f),
            RellichStatus::InvalidParameter
        );
        rellich_params_free(prm);
    }
}

extern "C" fn bump(s: f64, ud: *mut c_void) -> f64 {
    let scale = unsafe { *(ud as *const f64) };
    if (1.0..=2.0).contains(&s) { scale * ((s - 1.0) * (2.0 - s)).powi(3) } else { 0.0 }
}

extern "C" fn bump_d1(s: f64, ud: *mut c_void) -> f64 {
    let scale = unsafe { *(ud as *const f64) };
    if !(1.0..=2.0).contains(&s) {
        return 0.0;
    }
    let q = (s - 1.0) * (2.0 - s);
    scale * 3.0 * q * q * (3.0 - 2.0 * s)
}

extern "C" fn bump_d2(s: f64, ud: *mut c_void) -> f64 {
    let scale = unsafe { *(ud as *const f64) };
    if !(1.0..=2.0).contains(&s) {
        return 0.0;
    }
    let q = (s - 1.0) * (2.0 - s);
    let dq = 3.0 - 2.0 * s;
    scale * (6.0 * q * dq * dq - 6.0 * q * q)
}

#[test]
fn callback_profile_verifies_hardy_and_rellich() {
    let mut scale = 2.0f64;
    let ud = &mut scale as *mut f64 as *mut c_void;
    let mut prof = ptr::null_mut();
    unsafe {
        assert_eq!(
            rellich_profile_from_callbacks(Some(bump), Some(bump_d1), Some(bump_d2), ud, 1.0, 2.0, &mut prof),
            RellichStatus::Ok
        );
        let mut rep = ptr::null_mut();
        assert_eq!(rellich_verify_hardy(5, 2.0, 2.0, prof, &mut rep), RellichStatus::Ok);
        assert!(rellich_report_passed(rep) && rellich_report_min_margin(rep) > 0.0);
        rellich_report_free(rep);

        let mut builtin = ptr::null_mut();
        assert_eq!(rellich_profile_bump(-3.0, 4.0, &mut builtin), RellichStatus::Ok);
        let prm = params(5, 0.0, 0.0);
        let profiles = [prof as *const RellichProfile, builtin as *const RellichProfile];
        let degrees = [0u32, 1];
        assert_eq!(
            rellich_verify_rellich(prm, 2.0, 0.0, RellichDomain::WholeSpace, ptr::null(), degrees.as_ptr(), profiles.as_ptr(), 2, &mut rep),
            RellichStatus::Ok
        );
        assert!(rellich_report_passed(rep));
        let json = rellich_report_to_json(rep);
        assert!(CStr::from_ptr(json).to_str().unwrap().contains("\"passed\":true"));
        rellich_string_free(json);
        rellich_report_free(rep);

        let mut set = ptr::null_mut();
        assert_eq!(rellich_harmonic_set_parse(c"ge:1".as_ptr(), &mut set), RellichStatus::Ok);
        assert_eq!(
            rellich_verify_rellich(prm, 2.0, 0.0, RellichDomain::WholeSpace, set, degrees.as_ptr(), profiles.as_ptr(), 2, &mut rep),
            RellichStatus::CorpusOutsideSubspace
        );
        assert_eq!(
            rellich_profile_from_callbacks(None, Some(bump_d1), Some(bump_d2), ud, 1.0, 2.0, &mut prof),
            RellichStatus::NullPointer
        );
        rellich_harmonic_set_free(set);
        rellich_params_free(prm);
        rellich_profile_free(builtin);
        rellich_profile_free(profiles[0] as *mut RellichProfile);
    }
}

#[test]
fn counterexample_ratio_decays_and_refuses_complex_roots() {
    let prm = params(5, 0.0, 0.0);
    let (mut a, mut b) = (0.0, 0.0);
    unsafe {
        assert_eq!(rellich_counterexample_ratio(prm, 2.0, 0, RellichBranch::Minus, 0.1, &mut a), RellichStatus::Ok);
        assert_eq!(rellich_counterexample_ratio(prm, 2.0, 0, RellichBranch::Minus, 0.05, &mut b), RellichStatus::Ok);
        assert!(b < a);
        rellich_params_free(prm);
        let neg = params(5, 0.0, -3.0);
        assert_eq!(
            rellich_counterexample_ratio(neg, 2.0, 0, RellichBranch::Minus, 0.1, &mut a),
            RellichStatus::UnsupportedRegime
        );
        rellich_params_free(neg);
    }
}
