//! Parabolic spectral regions and spectrum classification for the half-line
//! operator `D² + βD`, the radial operator `Γ_p` and `A = |x|²Δ + c x·∇`.

pub mod discrete;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{RellichError, Result};
use crate::params::{
    base_alpha, eigen_lambda, omega_p, sqrt_nonneg_re, ExtendedIndex, OperatorParams,
};
use crate::validity::HarmonicSet;

/// Below this magnitude the parabola coefficient is treated as zero.
pub const DEGENERATE_K: f64 = 1e-12;

const BOUNDARY_TOL: f64 = 1e-9;

/// Parabola `P = {−ξ² + iξk − ω}` and the region `Q` it bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolicRegion {
    pub k: f64,
    pub omega: f64,
}

impl ParabolicRegion {
    pub fn new(k: f64, omega: f64) -> Self {
        Self { k, omega }
    }

    pub fn is_degenerate(&self) -> bool {
        self.k.abs() <= DEGENERATE_K
    }

    fn slack(lambda: Complex64) -> f64 {
        BOUNDARY_TOL * (1.0 + lambda.norm())
    }

    /// Signed residual `Re λ + (Im λ)²/k² + ω`; nonpositive inside `Q`.
    fn residual(&self, lambda: Complex64) -> f64 {
        lambda.re + lambda.im * lambda.im / (self.k * self.k) + self.omega
    }

    /// Membership in the closed region `Q`.
    pub fn in_region(&self, lambda: Complex64) -> bool {
        let tol = Self::slack(lambda);
        if self.is_degenerate() {
            return lambda.im.abs() <= tol && lambda.re <= -self.omega + tol;
        }
        self.residual(lambda) <= tol
    }

    pub fn on_parabola(&self, lambda: Complex64) -> bool {
        if self.is_degenerate() {
            return self.in_region(lambda);
        }
        self.residual(lambda).abs() <= Self::slack(lambda)
    }

    /// Interior of `Q`; empty when `k = 0`.
    pub fn in_interior(&self, lambda: Complex64) -> bool {
        !self.is_degenerate() && self.in_region(lambda) && !self.on_parabola(lambda)
    }

    /// Point of `P` at parameter `ξ`.
    pub fn point(&self, xi: f64) -> Complex64 {
        Complex64::new(-xi * xi - self.omega, xi * self.k)
    }

    pub fn shifted(&self, by: f64) -> Self {
        Self { k: self.k, omega: self.omega + by }
    }
}

/// Membership flags for one point of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SpectralClassification {
    pub in_spectrum: bool,
    pub in_approx: bool,
    /// One-sided certificate: false means "not certified", not "not an eigenvalue".
    pub in_point_certified: bool,
    pub in_residual_not_approx: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HalfLineSide {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Interval {
    /// `(0, ∞)`.
    HalfLine,
    /// `(0, 1)`.
    UnitInterval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectralDomain {
    WholeSpace,
    UnitBall,
}

/// Region of `Γ_p`: `k = N(1 − 2/p) − 2 + c`, `ω = ω_p`.
pub fn region_unweighted(params: &OperatorParams, p: ExtendedIndex) -> ParabolicRegion {
    let n = params.n();
    ParabolicRegion::new(
        n * (1.0 - 2.0 * p.inv()) - 2.0 + params.c,
        omega_p(params.dim, p, params.c),
    )
}

/// Region of the shifted operator with drift `c + 4 − 2α`: `k = 2(base − α)`.
pub fn region_weighted(params: &OperatorParams, p: ExtendedIndex, alpha: f64) -> ParabolicRegion {
    ParabolicRegion::new(
        2.0 * (base_alpha(params, p) - alpha),
        omega_p(params.dim, p, params.c + 4.0 - 2.0 * alpha),
    )
}

/// Distance from a real `λ` to the parabola `{−ξ² + iβξ}`.
pub fn dist_to_parabola(beta: f64, lambda: f64) -> f64 {
    let b2 = beta * beta;
    if lambda >= -b2 / 2.0 {
        lambda.abs()
    } else {
        (b2 * (-lambda - b2 / 4.0)).sqrt()
    }
}

/// Characteristic roots `μ₁,₂ = (−β ∓ √(β² + 4λ))/2` of `u″ + βu′ = λu`.
pub fn ode_roots(beta: f64, lambda: Complex64) -> (Complex64, Complex64) {
    let s = sqrt_nonneg_re(Complex64::new(beta * beta, 0.0) + 4.0 * lambda);
    ((-beta - s) / 2.0, (-beta + s) / 2.0)
}

/// Classification for `B = D² + βD` with a Dirichlet condition at 0 on a half line.
pub fn classify_halfline_ode(
    beta: f64,
    lambda: Complex64,
    side: HalfLineSide,
) -> SpectralClassification {
    let region = ParabolicRegion::new(beta, 0.0);
    let inward = match side {
        HalfLineSide::Positive => beta,
        HalfLineSide::Negative => -beta,
    };
    classify_by_sign(&region, inward, lambda)
}

/// Shared case split: `drift > 0` gives `Aσ = Q` with point spectrum on the
/// interior, `drift < 0` gives `Aσ = P` with residual interior, and zero drift
/// collapses to the half line.
fn classify_by_sign(
    region: &ParabolicRegion,
    drift: f64,
    lambda: Complex64,
) -> SpectralClassification {
    let in_q = region.in_region(lambda);
    if region.is_degenerate() {
        return SpectralClassification {
            in_spectrum: in_q,
            in_approx: in_q,
            ..Default::default()
        };
    }
    let interior = region.in_interior(lambda);
    if drift > 0.0 {
        SpectralClassification {
            in_spectrum: in_q,
            in_approx: in_q,
            in_point_certified: interior,
            in_residual_not_approx: false,
        }
    } else {
        SpectralClassification {
            in_spectrum: in_q,
            in_approx: region.on_parabola(lambda),
            in_point_certified: false,
            in_residual_not_approx: interior,
        }
    }
}

/// Classification for `Γ_p = r²D² + (N − 1 + c)rD` on `(0, ∞)` or `(0, 1)`.
pub fn classify_gamma(
    params: &OperatorParams,
    p: ExtendedIndex,
    interval: Interval,
    lambda: Complex64,
) -> SpectralClassification {
    let region = region_unweighted(params, p);
    match interval {
        Interval::HalfLine => {
            let on = region.on_parabola(lambda);
            SpectralClassification {
                in_spectrum: on,
                in_approx: on,
                ..Default::default()
            }
        }
        Interval::UnitInterval => classify_halfline_ode(
            region.k,
            lambda + region.omega,
            HalfLineSide::Negative,
        ),
    }
}

/// Harmonic degrees `j ∈ J` whose shifted copy `Q − λ_j` can still reach `Re λ`.
fn reachable_degrees(
    dim: u32,
    set: &HarmonicSet,
    omega: f64,
    re_lambda: f64,
) -> impl Iterator<Item = u32> + '_ {
    let bound = -omega - re_lambda + BOUNDARY_TOL * (1.0 + re_lambda.abs());
    (0u32..)
        .take_while(move |&j| eigen_lambda(dim, j) <= bound)
        .filter(move |&j| set.contains(j))
}

/// Classification for `A_{p,J}` on `ℝ^N` or the unit ball.
pub fn classify_a(
    params: &OperatorParams,
    p: ExtendedIndex,
    set: &HarmonicSet,
    domain: SpectralDomain,
    lambda: Complex64,
) -> SpectralClassification {
    let region = region_unweighted(params, p);
    let on_some_parabola = |lambda: Complex64| {
        reachable_degrees(params.dim, set, region.omega, lambda.re)
            .any(|j| region.on_parabola(lambda + eigen_lambda(params.dim, j)))
    };
    match domain {
        SpectralDomain::WholeSpace => {
            let hit = on_some_parabola(lambda);
            SpectralClassification {
                in_spectrum: hit,
                in_approx: hit,
                ..Default::default()
            }
        }
        SpectralDomain::UnitBall => {
            let shifted = lambda + eigen_lambda(params.dim, set.min());
            let in_q = region.in_region(shifted);
            if region.is_degenerate() {
                return SpectralClassification {
                    in_spectrum: in_q,
                    in_approx: in_q,
                    ..Default::default()
                };
            }
            let interior = region.in_interior(shifted);
            if region.k < 0.0 {
                SpectralClassification {
                    in_spectrum: in_q,
                    in_approx: in_q,
                    in_point_certified: interior,
                    in_residual_not_approx: false,
                }
            } else {
                let approx = on_some_parabola(lambda);
                SpectralClassification {
                    in_spectrum: in_q,
                    in_approx: approx,
                    in_point_certified: false,
                    in_residual_not_approx: interior && !approx,
                }
            }
        }
    }
}

/// Best resolvent constant `1/(λ + ω_p)` for real `λ > −ω_p`.
pub fn resolvent_bound(params: &OperatorParams, p: ExtendedIndex, lambda: f64) -> Result<f64> {
    let shift = lambda + omega_p(params.dim, p, params.c);
    if shift <= 0.0 {
        return Err(RellichError::OutOfRange(format!(
            "lambda + omega_p = {shift} must be positive"
        )));
    }
    Ok(1.0 / shift)
}
