//! One-dimensional reduction of `‖|x|^α Lu‖_p / ‖|x|^{α−2}u‖_p` for separable
//! `u(ρω) = ρ^{2−α−N/p} v(−log ρ) P_n(ω)`, plus the counterexample families.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{RellichError, Result};
use crate::params::{
    base_alpha, critical_alphas, discriminant, eigen_lambda, gamma_p, indicial_roots,
    ExtendedIndex, OperatorParams,
};
use crate::profile::Profile1D;
use crate::quadrature::{lp_norm, lp_power, Integral, QuadratureSpec};
use crate::validity::Branch;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedCoefficients {
    /// Drift `2α − 2 − N + 2N/p − c`.
    pub beta: f64,
    /// Potential `γ_p(α, c) + b + λ_n`.
    pub lambda_red: f64,
    pub n: u32,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioReport {
    pub numerator: f64,
    pub denominator: f64,
    pub ratio: f64,
    pub quad_error_estimate: f64,
}

impl RatioReport {
    fn from_norms(num: Integral, den: Integral) -> Result<Self> {
        if !(den.value > 0.0) {
            return Err(RellichError::InvalidParameter(
                "profile has zero norm".into(),
            ));
        }
        let ratio = num.value / den.value;
        let rel = |i: Integral| if i.value > 0.0 { i.error_estimate / i.value } else { 0.0 };
        Ok(Self {
            numerator: num.value,
            denominator: den.value,
            ratio,
            quad_error_estimate: ratio * (rel(num) + rel(den)),
        })
    }
}

pub fn reduced_coefficients(
    params: &OperatorParams,
    p: ExtendedIndex,
    alpha: f64,
    n: u32,
) -> ReducedCoefficients {
    let nd = params.n();
    ReducedCoefficients {
        beta: 2.0 * alpha - 2.0 - nd + 2.0 * nd * p.inv() - params.c,
        lambda_red: gamma_p(params.dim, p, alpha, params.c) + params.b + eigen_lambda(params.dim, n),
        n,
        alpha,
    }
}

/// `‖f‖_{L^p}` over the support of a profile.
pub fn lp_norm_1d(
    f: &dyn Fn(f64) -> f64,
    support: (f64, f64),
    p: ExtendedIndex,
    spec: &QuadratureSpec,
) -> Result<f64> {
    Ok(lp_norm(f, support.0, support.1, p, spec)?.value)
}

/// `‖v″ + βv′ − λv‖_p / ‖v‖_p`.
pub fn reduced_ratio(
    beta: f64,
    lambda: f64,
    p: ExtendedIndex,
    v: &Profile1D,
    spec: &QuadratureSpec,
) -> Result<RatioReport> {
    let (a, b) = v.support();
    let g = |s: f64| v.d2(s) + beta * v.d1(s) - lambda * v.value(s);
    let num = lp_norm(&g, a, b, p, spec)?;
    let den = lp_norm(&|s| v.value(s), a, b, p, spec)?;
    RatioReport::from_norms(num, den)
}

/// Rellich ratio of a separable function with radial profile `v` in `s = −log ρ`
/// and a harmonic of degree `n`; the spherical factor cancels.
pub fn rellich_ratio_separable(
    params: &OperatorParams,
    p: ExtendedIndex,
    alpha: f64,
    n: u32,
    v: &Profile1D,
    spec: &QuadratureSpec,
) -> Result<RatioReport> {
    let rc = reduced_coefficients(params, p, alpha, n);
    reduced_ratio(rc.beta, rc.lambda_red, p, v, spec)
}

fn critical_gamma(params: &OperatorParams, n: u32, branch: Branch) -> Result<f64> {
    let (s1, s2) = indicial_roots(params, n);
    match branch {
        Branch::Minus => Ok(-s1.re),
        Branch::Plus => Ok(-s2.re),
        Branch::BoundaryObstruction => Err(RellichError::InvalidParameter(
            "counterexample family needs the Minus or Plus branch".into(),
        )),
    }
}

fn real_roots_required(params: &OperatorParams, n: u32) -> Result<()> {
    let dl = discriminant(params) + eigen_lambda(params.dim, n);
    if dl < 0.0 {
        return Err(RellichError::UnsupportedRegime(format!(
            "D + lambda_{n} = {dl} < 0: indicial roots are complex and no explicit family is available"
        )));
    }
    Ok(())
}

/// The critical exponent `α_n^∓` selected by a branch.
pub fn branch_alpha(params: &OperatorParams, p: ExtendedIndex, n: u32, branch: Branch) -> Result<f64> {
    let (lo, hi) = critical_alphas(params, p, n);
    match branch {
        Branch::Minus => Ok(lo),
        Branch::Plus => Ok(hi),
        Branch::BoundaryObstruction => Err(RellichError::InvalidParameter(
            "boundary obstruction has no critical exponent family".into(),
        )),
    }
}

/// Ratio for `u_ε = r^γ φ(r^ε) P_n` at the critical exponent of `branch`.
pub fn counterexample_ratio(
    params: &OperatorParams,
    p: ExtendedIndex,
    n: u32,
    branch: Branch,
    epsilon: f64,
    phi: &Profile1D,
    spec: &QuadratureSpec,
) -> Result<RatioReport> {
    real_roots_required(params, n)?;
    let gamma = critical_gamma(params, n, branch)?;
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(RellichError::InvalidParameter(format!("epsilon must lie in (0, 1], got {epsilon}")));
    }
    let (a, b) = phi.support();
    if !(a > 0.0 && b <= 1.0) {
        return Err(RellichError::InvalidParameter(format!(
            "profile support [{a}, {b}] must lie in (0, 1]"
        )));
    }
    let k = 2.0 * gamma + params.n() - 2.0 + params.c + epsilon;
    match p {
        ExtendedIndex::Finite(q) => {
            let i1 = lp_power(
                &|s| s.powf((q - 1.0) / q) * (epsilon * s * phi.d2(s) + k * phi.d1(s)),
                a,
                b,
                q,
                spec,
            )?;
            let i0 = lp_power(&|s| phi.value(s) / s.powf(1.0 / q), a, b, q, spec)?;
            let num = Integral {
                value: epsilon * i1.value.powf(1.0 / q),
                error_estimate: epsilon * i1.value.powf(1.0 / q) * i1.error_estimate / (q * i1.value.max(f64::MIN_POSITIVE)),
            };
            let den = Integral {
                value: i0.value.powf(1.0 / q),
                error_estimate: i0.value.powf(1.0 / q) * i0.error_estimate / (q * i0.value.max(f64::MIN_POSITIVE)),
            };
            RatioReport::from_norms(num, den)
        }
        ExtendedIndex::Infinity => {
            let num = lp_norm(
                &|s| epsilon * (epsilon * s * s * phi.d2(s) + k * s * phi.d1(s)),
                a,
                b,
                p,
                spec,
            )?;
            let den = lp_norm(&|s| phi.value(s), a, b, p, spec)?;
            RatioReport::from_norms(num, den)
        }
    }
}

/// The same family in reduced coordinates: `v(s) = φ(e^{−εs})`.
pub fn counterexample_profile(epsilon: f64, phi: &Profile1D) -> Result<Profile1D> {
    let (a, b) = phi.support();
    if !(a > 0.0 && epsilon > 0.0) {
        return Err(RellichError::InvalidParameter(
            "need epsilon > 0 and a profile supported in (0, 1]".into(),
        ));
    }
    let (f0, f1, f2) = (phi.clone(), phi.clone(), phi.clone());
    Profile1D::new(
        std::sync::Arc::new(move |s| f0.value((-epsilon * s).exp())),
        std::sync::Arc::new(move |s| {
            let x = (-epsilon * s).exp();
            -epsilon * x * f1.d1(x)
        }),
        std::sync::Arc::new(move |s| {
            let x = (-epsilon * s).exp();
            epsilon * epsilon * (x * f2.d1(x) + x * x * f2.d2(x))
        }),
        (-b.ln() / epsilon, -a.ln() / epsilon),
        phi.smoothness(),
        format!("{}(exp(-{epsilon}s))", phi.label()),
    )
}

/// Default counterexample seed profile on `[1/4, 1/2]`.
pub fn default_counterexample_seed() -> Profile1D {
    Profile1D::bump(0.25, 0.5).expect("fixed valid support")
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryReport {
    /// Largest relative residual of `r²Lu` on the grid.
    pub residual_sup: f64,
    /// Whether `|x|^{α−2}u ∈ L^p(B)`.
    pub norm_finite: bool,
    /// `α > base + √D`: the family is a genuine counterexample.
    pub active: bool,
    pub threshold: f64,
}

/// Checks `u = r^{−s₂} − r^{−s₁}` (or `r^{−s} log r` when `D = 0`) on the unit ball.
pub fn boundary_counterexample(
    params: &OperatorParams,
    p: ExtendedIndex,
    alpha: f64,
    grid: usize,
) -> Result<BoundaryReport> {
    boundary_counterexample_mode(params, p, alpha, 0, grid)
}

/// Degree-`n` version of [`boundary_counterexample`], with `u` multiplied by `P_n`.
pub fn boundary_counterexample_mode(
    params: &OperatorParams,
    p: ExtendedIndex,
    alpha: f64,
    n: u32,
    grid: usize,
) -> Result<BoundaryReport> {
    let d = discriminant(params) + eigen_lambda(params.dim, n);
    if d < 0.0 {
        return Err(RellichError::UnsupportedRegime(format!(
            "D + lambda_n = {d} < 0: indicial roots are complex"
        )));
    }
    if grid < 2 {
        return Err(RellichError::InvalidParameter("grid needs at least two points".into()));
    }
    let (s1, s2) = indicial_roots(params, n);
    let (s1, s2) = (s1.re, s2.re);
    let drift = params.n() - 1.0 + params.c;
    let b = params.b + eigen_lambda(params.dim, n);
    // Each term returns (u, r u′, r² u″) so the residual is scale-free.
    let terms = |r: f64| -> (f64, f64, f64) {
        let pw = |s: f64| r.powf(-s);
        if s1 == s2 {
            let (l, s) = (r.ln(), s1);
            let u = pw(s) * l;
            (u, pw(s) * (1.0 - s * l), pw(s) * (-2.0 * s - 1.0 + s * (s + 1.0) * l))
        } else {
            let e = |s: f64| (pw(s), -s * pw(s), s * (s + 1.0) * pw(s));
            let (a, b2) = (e(s2), e(s1));
            (a.0 - b2.0, a.1 - b2.1, a.2 - b2.2)
        }
    };
    let (lo, hi) = (1e-6f64.ln(), 0.0f64);
    let mut residual_sup: f64 = 0.0;
    for i in 0..grid {
        let r = (lo + (hi - lo) * i as f64 / (grid - 1) as f64).exp();
        let (u, ru1, r2u2) = terms(r);
        let res = r2u2 + drift * ru1 - b * u;
        let scale = r2u2.abs() + (drift * ru1).abs() + (b * u).abs();
        if scale > 0.0 {
            residual_sup = residual_sup.max(res.abs() / scale);
        }
    }
    let np = params.n() * p.inv();
    let threshold = base_alpha(params, p) + d.sqrt();
    Ok(BoundaryReport {
        residual_sup,
        norm_finite: alpha - 2.0 - s1 > -np && alpha - 2.0 - s2 > -np,
        active: alpha > threshold,
        threshold,
    })
}

/// Characteristic roots of the reduced equation, exposed for diagnostics.
pub fn reduced_roots(rc: &ReducedCoefficients) -> (Complex64, Complex64) {
    crate::spectral::ode_roots(rc.beta, Complex64::new(rc.lambda_red, 0.0))
}

/// Profiles used to probe lower bounds: bumps of several widths, orders and
/// offsets, some modulated.
pub fn probe_corpus(count: usize) -> Vec<Profile1D> {
    (0..count)
        .map(|i| {
            let width = 2.0 + 3.0 * i as f64;
            let centre = (i as f64 * 1.7).sin() * 5.0;
            let m = 3 + (i % 3) as u32;
            let base = Profile1D::poly_bump(m, centre - width, centre + width)
                .expect("positive width");
            if i % 4 == 3 {
                base.modulated(0.7 / width)
            } else {
                base
            }
        })
        .collect()
}
