//! Upper-bound shapes for the Green function and heat kernel of `−L`.
//!
//! Multiplicative constants are normalized to 1.

use serde::{Deserialize, Serialize};

use crate::error::{RellichError, Result};
use crate::params::{base_alpha, discriminant, ExtendedIndex, OperatorParams, Tolerance};
use crate::quadrature::{integrate, QuadratureSpec};

/// `r1 = |x|`, `r2 = |y|`, `d = |x − y|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenBoundInput {
    pub r1: f64,
    pub r2: f64,
    pub d: f64,
}

impl GreenBoundInput {
    pub fn new(r1: f64, r2: f64, d: f64) -> Result<Self> {
        let ok = r1 > 0.0 && r2 > 0.0 && d >= 0.0 && r1.is_finite() && r2.is_finite() && d.is_finite();
        if !ok {
            return Err(RellichError::InvalidGeometry(format!(
                "need r1, r2 > 0 and d >= 0, got ({r1}, {r2}, {d})"
            )));
        }
        let slack = 1e-12 * (r1 + r2);
        if d < (r1 - r2).abs() - slack || d > r1 + r2 + slack {
            return Err(RellichError::InvalidGeometry(format!(
                "|r1 - r2| <= d <= r1 + r2 violated by ({r1}, {r2}, {d})"
            )));
        }
        Ok(Self { r1, r2, d })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HeatKernelVariant {
    PositiveD,
    ZeroD,
}

fn s1(params: &OperatorParams) -> f64 {
    params.half_shift()
}

/// Bound for `D > 0`. Infinite on the diagonal `d = 0`.
pub fn g0_positive_d(params: &OperatorParams, input: &GreenBoundInput) -> Result<f64> {
    let d0 = discriminant(params);
    if d0 <= 0.0 {
        return Err(RellichError::NonPositiveDiscriminant(d0));
    }
    let GreenBoundInput { r1, r2, d } = *input;
    let prefactor = r1.powf(-params.c / 2.0) * r2.powf(params.c / 2.0);
    let sd = d0.sqrt();
    if params.dim == 2 {
        let q = d * d / (r1 * r2);
        let shape = if q >= 1.0 { q.powf(-sd) } else { 1.0 - q.ln() };
        return Ok(prefactor * shape);
    }
    let nd = params.n();
    let m = (r1 * r2 / (d * d)).min(1.0);
    Ok(prefactor * d.powf(2.0 - nd) * m.powf(sd - (nd - 2.0) / 2.0))
}

/// Bound for `D = 0` with decay rate `decay_k`. Infinite on the diagonal.
pub fn g0_zero_d(
    params: &OperatorParams,
    input: &GreenBoundInput,
    decay_k: f64,
    tol: Tolerance,
) -> Result<f64> {
    let d0 = discriminant(params);
    if d0.abs() > tol.get() {
        return Err(RellichError::NonzeroDiscriminant(d0));
    }
    if !(decay_k > 0.0) {
        return Err(RellichError::InvalidParameter("decay rate must be positive".into()));
    }
    let GreenBoundInput { r1, r2, d } = *input;
    let s = s1(params);
    let prefactor = r1.powf(-s) * r2.powf(params.c - s);
    if params.dim == 2 {
        let shape = if d >= 1.0 { (-decay_k * d).exp() } else { 1.0 - d.ln() };
        return Ok(prefactor * shape);
    }
    Ok(prefactor * (-decay_k * d).exp() * d.min(1.0).powf(2.0 - params.n()))
}

/// Heat-kernel upper bound at time `t`.
pub fn heat_kernel_bound(
    params: &OperatorParams,
    variant: HeatKernelVariant,
    eps: f64,
    t: f64,
    input: &GreenBoundInput,
    lambda1: f64,
    tol: Tolerance,
) -> Result<f64> {
    if !(eps > 0.0 && t > 0.0) {
        return Err(RellichError::InvalidParameter("eps and t must be positive".into()));
    }
    let d0 = discriminant(params);
    let GreenBoundInput { r1, r2, d } = *input;
    let nd = params.n();
    let gauss = (-d * d / ((4.0 + eps) * t)).exp();
    match variant {
        HeatKernelVariant::PositiveD => {
            if d0 <= tol.get() {
                return Err(RellichError::VariantMismatch(d0));
            }
            let st = t.sqrt();
            let cut = (r1 / st).min(1.0) * (r2 / st).min(1.0);
            Ok(t.powf(-nd / 2.0)
                * r1.powf(-params.c / 2.0)
                * r2.powf(params.c / 2.0)
                * cut.powf(-nd / 2.0 + 1.0 + d0.sqrt())
                * gauss)
        }
        HeatKernelVariant::ZeroD => {
            if d0.abs() > tol.get() {
                return Err(RellichError::VariantMismatch(d0));
            }
            if !(lambda1 > 0.0) {
                return Err(RellichError::InvalidParameter("lambda1 must be positive".into()));
            }
            let s = s1(params);
            Ok(t.powf(-nd / 2.0)
                * (-lambda1 * t / 3.0).exp()
                * r1.powf(-s)
                * r2.powf(params.c - s)
                * gauss)
        }
    }
}

/// Exponent `(√D − (N−2)/2 + c/2 − α)·p′` of the tail `|y|^{…}` near the origin.
/// `None` when `p = 1` (`p′ = ∞`).
pub fn green_tail_exponent(params: &OperatorParams, p: ExtendedIndex, alpha: f64) -> Option<f64> {
    let e = discriminant(params).max(0.0).sqrt() - (params.n() - 2.0) / 2.0 + params.c / 2.0 - alpha;
    match p.conjugate() {
        ExtendedIndex::Finite(q) => Some(e * q),
        ExtendedIndex::Infinity => None,
    }
}

/// Whether the tail `|y|^{exponent}` is integrable on the unit ball: `α < base + √D`.
pub fn green_tail_integrable(params: &OperatorParams, p: ExtendedIndex, alpha: f64) -> bool {
    alpha < base_alpha(params, p) + discriminant(params).max(0.0).sqrt()
}

/// `∫_{δ<|y|<1} |y|^{exponent} dy` up to the sphere area, by quadrature in `log |y|`.
pub fn green_tail_partial_integral(
    params: &OperatorParams,
    p: ExtendedIndex,
    alpha: f64,
    delta: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let Some(e) = green_tail_exponent(params, p, alpha) else {
        return Err(RellichError::UnsupportedRegime("p = 1 has no finite conjugate exponent".into()));
    };
    if !(delta > 0.0 && delta < 1.0) {
        return Err(RellichError::InvalidParameter("delta must lie in (0, 1)".into()));
    }
    let k = e + params.n();
    Ok(integrate(&|t| (k * t).exp(), delta.ln(), 0.0, spec)?.value)
}
