//! Compactly supported `C²` profiles with analytic derivatives.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{RellichError, Result};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Smoothness {
    C2,
    CInfinity,
}

/// A profile `v` on `[a, b]` together with `v′` and `v″`.
#[derive(Clone)]
pub struct Profile1D {
    value: ScalarFn,
    d1: ScalarFn,
    d2: ScalarFn,
    support: (f64, f64),
    smoothness: Smoothness,
    label: String,
}

impl fmt::Debug for Profile1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Profile1D")
            .field("label", &self.label)
            .field("support", &self.support)
            .field("smoothness", &self.smoothness)
            .finish()
    }
}

/// `(1 − t²)^m` and its first two derivatives.
fn poly_bump_parts(m: i32, t: f64) -> (f64, f64, f64) {
    if t.abs() >= 1.0 {
        return (0.0, 0.0, 0.0);
    }
    let mf = f64::from(m);
    let q = 1.0 - t * t;
    let v = q.powi(m);
    let d1 = -2.0 * mf * t * q.powi(m - 1);
    let d2 = -2.0 * mf * q.powi(m - 1) + 4.0 * mf * (mf - 1.0) * t * t * q.powi(m - 2);
    (v, d1, d2)
}

/// `exp(−1/(1 − t²))` and its first two derivatives.
fn smooth_bump_parts(t: f64) -> (f64, f64, f64) {
    if t.abs() >= 1.0 {
        return (0.0, 0.0, 0.0);
    }
    let q = 1.0 - t * t;
    let v = (-1.0 / q).exp();
    // g = −1/q, g′ = −2t/q², g″ = −2/q² − 8t²/q³.
    let g1 = -2.0 * t / (q * q);
    let g2 = -2.0 / (q * q) - 8.0 * t * t / (q * q * q);
    (v, v * g1, v * (g1 * g1 + g2))
}

impl Profile1D {
    pub fn new(
        value: ScalarFn,
        d1: ScalarFn,
        d2: ScalarFn,
        support: (f64, f64),
        smoothness: Smoothness,
        label: impl Into<String>,
    ) -> Result<Self> {
        let (a, b) = support;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(RellichError::InvalidParameter(format!(
                "support [{a}, {b}] must be a finite nonempty interval"
            )));
        }
        Ok(Self { value, d1, d2, support, smoothness, label: label.into() })
    }

    /// `(1 − t²)^m` rescaled to `[a, b]`; `C²` needs `m ≥ 3`.
    pub fn poly_bump(m: u32, a: f64, b: f64) -> Result<Self> {
        if m < 3 {
            return Err(RellichError::InvalidParameter(format!(
                "bump exponent must be at least 3 for C2 regularity, got {m}"
            )));
        }
        let m = i32::try_from(m)
            .map_err(|_| RellichError::InvalidParameter("bump exponent too large".into()))?;
        let mid = (a + b) / 2.0;
        let scale = 2.0 / (b - a);
        let t = move |s: f64| (s - mid) * scale;
        Self::new(
            Arc::new(move |s| poly_bump_parts(m, t(s)).0),
            Arc::new(move |s| poly_bump_parts(m, t(s)).1 * scale),
            Arc::new(move |s| poly_bump_parts(m, t(s)).2 * scale * scale),
            (a, b),
            Smoothness::C2,
            format!("poly_bump(m={m}, [{a}, {b}])"),
        )
    }

    /// Default test profile `(1 − t²)³` on `[a, b]`.
    pub fn bump(a: f64, b: f64) -> Result<Self> {
        Self::poly_bump(3, a, b)
    }

    /// `exp(−1/(1 − t²))` rescaled to `[a, b]`.
    pub fn smooth_bump(a: f64, b: f64) -> Result<Self> {
        let mid = (a + b) / 2.0;
        let scale = 2.0 / (b - a);
        let t = move |s: f64| (s - mid) * scale;
        Self::new(
            Arc::new(move |s| smooth_bump_parts(t(s)).0),
            Arc::new(move |s| smooth_bump_parts(t(s)).1 * scale),
            Arc::new(move |s| smooth_bump_parts(t(s)).2 * scale * scale),
            (a, b),
            Smoothness::CInfinity,
            format!("smooth_bump([{a}, {b}])"),
        )
    }

    /// `v(s) · cos(κ s)`.
    pub fn modulated(&self, kappa: f64) -> Self {
        let (v, d1, d2) = (self.value.clone(), self.d1.clone(), self.d2.clone());
        let (v1, d11) = (v.clone(), d1.clone());
        let v2 = v.clone();
        Self {
            value: Arc::new(move |s| v(s) * (kappa * s).cos()),
            d1: Arc::new(move |s| d11(s) * (kappa * s).cos() - kappa * v1(s) * (kappa * s).sin()),
            d2: Arc::new(move |s| {
                let (c, sn) = ((kappa * s).cos(), (kappa * s).sin());
                d2(s) * c - 2.0 * kappa * d1(s) * sn - kappa * kappa * v2(s) * c
            }),
            support: self.support,
            smoothness: self.smoothness,
            label: format!("{}*cos({kappa}s)", self.label),
        }
    }

    /// `k · v`.
    pub fn scaled(&self, k: f64) -> Self {
        let (v, d1, d2) = (self.value.clone(), self.d1.clone(), self.d2.clone());
        Self {
            value: Arc::new(move |s| k * v(s)),
            d1: Arc::new(move |s| k * d1(s)),
            d2: Arc::new(move |s| k * d2(s)),
            support: self.support,
            smoothness: self.smoothness,
            label: format!("{k}*{}", self.label),
        }
    }

    /// `s ↦ v(s/λ)`, support scaled by `λ > 0`.
    pub fn dilated(&self, lambda: f64) -> Self {
        let (v, d1, d2) = (self.value.clone(), self.d1.clone(), self.d2.clone());
        Self {
            value: Arc::new(move |s| v(s / lambda)),
            d1: Arc::new(move |s| d1(s / lambda) / lambda),
            d2: Arc::new(move |s| d2(s / lambda) / (lambda * lambda)),
            support: (self.support.0 * lambda, self.support.1 * lambda),
            smoothness: self.smoothness,
            label: format!("{}(s/{lambda})", self.label),
        }
    }

    /// `s ↦ v(s − m)`.
    pub fn translated(&self, m: f64) -> Self {
        let (v, d1, d2) = (self.value.clone(), self.d1.clone(), self.d2.clone());
        Self {
            value: Arc::new(move |s| v(s - m)),
            d1: Arc::new(move |s| d1(s - m)),
            d2: Arc::new(move |s| d2(s - m)),
            support: (self.support.0 + m, self.support.1 + m),
            smoothness: self.smoothness,
            label: format!("{}(s-{m})", self.label),
        }
    }

    pub fn value(&self, s: f64) -> f64 {
        (self.value)(s)
    }

    pub fn d1(&self, s: f64) -> f64 {
        (self.d1)(s)
    }

    pub fn d2(&self, s: f64) -> f64 {
        (self.d2)(s)
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Largest relative mismatch between the analytic derivatives and central
    /// differences at `points` interior nodes.
    pub fn derivative_mismatch(&self, points: usize) -> f64 {
        let (a, b) = self.support;
        let h = (b - a) * 1e-5;
        let scale1 = (0..=points)
            .map(|i| self.d1(a + (b - a) * i as f64 / points as f64).abs())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        let scale2 = (0..=points)
            .map(|i| self.d2(a + (b - a) * i as f64 / points as f64).abs())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        (1..points)
            .map(|i| a + (b - a) * i as f64 / points as f64)
            .map(|s| {
                let fd1 = (self.value(s + h) - self.value(s - h)) / (2.0 * h);
                let fd2 = (self.d1(s + h) - self.d1(s - h)) / (2.0 * h);
                ((fd1 - self.d1(s)).abs() / scale1).max((fd2 - self.d2(s)).abs() / scale2)
            })
            .fold(0.0, f64::max)
    }
}

/// Near-extremizer `v_T(s) = ψ(s/T)` with `ψ = (1 − t²)³` on `[−1, 1]`.
pub fn plateau_profile(t: f64) -> Result<Profile1D> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(RellichError::InvalidParameter(format!("plateau width must be positive, got {t}")));
    }
    Profile1D::bump(-t, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bump_vanishes_at_endpoints_with_derivatives() {
        for p in [
            Profile1D::bump(1.0, 2.0).unwrap(),
            Profile1D::poly_bump(5, -3.0, 4.0).unwrap(),
            Profile1D::smooth_bump(0.5, 1.5).unwrap(),
        ] {
            let (a, b) = p.support();
            for s in [a, b] {
                assert_eq!((p.value(s), p.d1(s), p.d2(s)), (0.0, 0.0, 0.0));
            }
        }
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let base = Profile1D::bump(1.0, 3.0).unwrap();
        for p in [
            base.clone(),
            Profile1D::poly_bump(4, 0.0, 1.0).unwrap(),
            Profile1D::smooth_bump(-1.0, 2.0).unwrap(),
            base.modulated(3.0),
            base.dilated(2.5).translated(-1.0),
            base.scaled(-4.0),
        ] {
            assert!(p.derivative_mismatch(100) < 1e-6, "{}", p.label());
        }
    }

    #[test]
    fn plateau_examples() {
        let v = plateau_profile(10.0).unwrap();
        assert_eq!(v.value(0.0), 1.0);
        assert_eq!(v.support(), (-10.0, 10.0));
        let sup2 = |t: f64| {
            let v = plateau_profile(t).unwrap();
            (0..1000).map(|i| v.d2(-t + 2.0 * t * i as f64 / 1000.0).abs()).fold(0.0, f64::max)
        };
        assert_relative_eq!(sup2(10.0) / sup2(20.0), 4.0, max_relative = 1e-3);
        assert!(plateau_profile(0.0).is_err());
    }

    #[test]
    fn low_order_bump_is_rejected() {
        assert!(Profile1D::poly_bump(2, 0.0, 1.0).is_err());
        assert!(Profile1D::bump(1.0, 1.0).is_err());
    }
}
