//! Composite Gauss–Legendre integration and dense-grid suprema.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{RellichError, Result};
use crate::params::ExtendedIndex;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Gauss–Legendre nodes per panel.
    pub nodes: usize,
    pub initial_panels: usize,
    pub max_panels: usize,
    /// Stop doubling once successive estimates differ by less than this, relatively.
    pub rel_tol: f64,
    /// Grid size for suprema.
    pub sup_grid: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            nodes: 64,
            initial_panels: 4,
            max_panels: 1 << 12,
            rel_tol: 1e-10,
            sup_grid: 100_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Integral {
    pub value: f64,
    /// Difference between the last two panel refinements.
    pub error_estimate: f64,
}

type Rule = Arc<(Vec<f64>, Vec<f64>)>;

/// Nodes and weights on `[−1, 1]`, computed once per order.
pub fn gauss_legendre(n: usize) -> Rule {
    static CACHE: OnceLock<Mutex<HashMap<usize, Rule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(compute_rule(n)))
        .clone()
}

fn compute_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn panels_sum(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize, rule: &Rule) -> Result<f64> {
    let (x, w) = (&rule.0, &rule.1);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let lo = a + k as f64 * h;
        let mid = lo + h / 2.0;
        let mut s = 0.0;
        for (xi, wi) in x.iter().zip(w) {
            let t = mid + h / 2.0 * xi;
            let v = f(t);
            if !v.is_finite() {
                return Err(RellichError::NonFiniteIntegrand { at: t });
            }
            s += wi * v;
        }
        total += s * h / 2.0;
    }
    Ok(total)
}

/// `∫_a^b f` by panel doubling until the relative change drops below `rel_tol`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(RellichError::InvalidParameter("integration limits must be finite".into()));
    }
    if a == b {
        return Ok(Integral { value: 0.0, error_estimate: 0.0 });
    }
    let rule = gauss_legendre(spec.nodes.max(1));
    let mut panels = spec.initial_panels.max(1);
    let mut prev = panels_sum(f, a, b, panels, &rule)?;
    loop {
        panels *= 2;
        let cur = panels_sum(f, a, b, panels, &rule)?;
        let err = (cur - prev).abs();
        if err <= spec.rel_tol * cur.abs() || err == 0.0 || panels >= spec.max_panels {
            return Ok(Integral { value: cur, error_estimate: err });
        }
        prev = cur;
    }
}

/// `sup_{[a,b]} |f|` on a uniform grid, refined by golden-section search around the best node.
pub fn sup_abs(f: &dyn Fn(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    let m = spec.sup_grid.max(2);
    let h = (b - a) / (m - 1) as f64;
    let g = |t: f64| -> Result<f64> {
        let v = f(t);
        if v.is_finite() {
            Ok(v.abs())
        } else {
            Err(RellichError::NonFiniteIntegrand { at: t })
        }
    };
    let mut best = (a, g(a)?);
    for i in 1..m {
        let t = a + i as f64 * h;
        let v = g(t)?;
        if v > best.1 {
            best = (t, v);
        }
    }
    let (mut lo, mut hi) = ((best.0 - h).max(a), (best.0 + h).min(b));
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (g(x1)?, g(x2)?);
    for _ in 0..80 {
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = g(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = g(x2)?;
        }
    }
    Ok(best.1.max(f1).max(f2))
}

/// `‖f‖_{L^p(a,b)}` with the error estimate of the underlying integral.
pub fn lp_norm(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    p: ExtendedIndex,
    spec: &QuadratureSpec,
) -> Result<Integral> {
    match p {
        ExtendedIndex::Infinity => Ok(Integral { value: sup_abs(f, a, b, spec)?, error_estimate: 0.0 }),
        ExtendedIndex::Finite(q) => {
            let i = integrate(&|t| f(t).abs().powf(q), a, b, spec)?;
            let value = i.value.max(0.0).powf(1.0 / q);
            let error_estimate = if i.value > 0.0 {
                value * i.error_estimate / (q * i.value)
            } else {
                0.0
            };
            Ok(Integral { value, error_estimate })
        }
    }
}

/// `∫_a^b |f|^p`, finite `p` only.
pub fn lp_power(f: &dyn Fn(f64) -> f64, a: f64, b: f64, p: f64, spec: &QuadratureSpec) -> Result<Integral> {
    integrate(&|t| f(t).abs().powf(p), a, b, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = gauss_legendre(64);
        let s: f64 = rule.1.iter().sum();
        assert_relative_eq!(s, 2.0, epsilon = 1e-14);
        let m: f64 = rule.0.iter().zip(&rule.1).map(|(x, w)| w * x.powi(10)).sum();
        assert_relative_eq!(m, 2.0 / 11.0, epsilon = 1e-14);
        let small = gauss_legendre(3);
        assert_relative_eq!(small.0[2], (0.6f64).sqrt(), epsilon = 1e-15);
        assert_relative_eq!(small.1[1], 8.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn closed_form_integrals() {
        let spec = QuadratureSpec::default();
        let e = std::f64::consts::E;
        type Case = (Box<dyn Fn(f64) -> f64>, f64, f64, f64);
        let cases: Vec<Case> = vec![
            (Box::new(|_| 1.0), 0.0, 1.0, 1.0),
            (Box::new(|t| t * t), 0.0, 3.0, 9.0),
            (Box::new(|t| t.powi(7)), -1.0, 2.0, (256.0 - 1.0) / 8.0),
            (Box::new(|t| t.exp()), 0.0, 1.0, e - 1.0),
            (Box::new(|t| t * t.exp()), 0.0, 1.0, 1.0),
            (Box::new(|t| t * t * (-t).exp()), 0.0, 40.0, 2.0 - 1682.0 * (-40f64).exp()),
            (Box::new(|t| (1.0 - t * t).powi(3)), -1.0, 1.0, 32.0 / 35.0),
            (Box::new(|t| t.sqrt()), 0.0, 4.0, 16.0 / 3.0),
            (Box::new(|t| 1.0 / t), 1.0, 10.0, 10f64.ln()),
            (Box::new(|t| t.powf(2.5) * (-2.0 * t).exp()), 0.0, 60.0, 3.323_350_970_447_843 / 2f64.powf(3.5)),
        ];
        for (f, a, b, exact) in cases {
            let v = integrate(&*f, a, b, &spec).unwrap().value;
            assert_relative_eq!(v, exact, max_relative = 1e-9);
        }
    }

    #[test]
    fn norm_examples() {
        let spec = QuadratureSpec::default();
        let p2 = ExtendedIndex::Finite(2.0);
        assert_relative_eq!(lp_norm(&|_| 1.0, 0.0, 1.0, p2, &spec).unwrap().value, 1.0, epsilon = 1e-14);
        assert_relative_eq!(
            lp_norm(&|s| s, 0.0, 1.0, p2, &spec).unwrap().value,
            1.0 / 3f64.sqrt(),
            epsilon = 1e-12
        );
        let sup = lp_norm(&|s| (1.0 - s * s).powi(3), -1.0, 1.0, ExtendedIndex::Infinity, &spec).unwrap();
        assert_relative_eq!(sup.value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn sup_refinement_finds_off_grid_maximum() {
        let spec = QuadratureSpec { sup_grid: 11, ..Default::default() };
        let v = sup_abs(&|t| 1.0 - (t - 0.123_456).powi(2), 0.0, 1.0, &spec).unwrap();
        assert_relative_eq!(v, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let r = integrate(&|t| if t > 0.5 { f64::NAN } else { t }, 0.0, 1.0, &QuadratureSpec::default());
        assert!(matches!(r, Err(RellichError::NonFiniteIntegrand { .. })));
    }
}
