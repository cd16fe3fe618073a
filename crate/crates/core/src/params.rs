//! Closed-form parameter arithmetic: discriminant, harmonic eigenvalues,
//! indicial roots, critical exponents, `γ_p`, `ω_p`, the shift `μ` and the
//! Kelvin transform.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{RellichError, Result};

/// Complex number produced by [`sqrt_nonneg_re`]; its real part is never negative.
pub type ComplexRoot = Complex64;

/// Coefficients `(N, c, b)` of `L = Δ + c x/|x|²·∇ − b/|x|²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorParams {
    /// Space dimension `N ≥ 2`.
    pub dim: u32,
    pub c: f64,
    pub b: f64,
}

impl OperatorParams {
    pub fn new(dim: u32, c: f64, b: f64) -> Result<Self> {
        if dim < 2 {
            return Err(RellichError::InvalidParameter(format!(
                "dimension must be at least 2, got {dim}"
            )));
        }
        if !c.is_finite() || !b.is_finite() {
            return Err(RellichError::InvalidParameter(
                "c and b must be finite".into(),
            ));
        }
        Ok(Self { dim, c, b })
    }

    pub fn n(&self) -> f64 {
        f64::from(self.dim)
    }

    /// `(N − 2 + c)/2`, the midpoint of the indicial roots.
    pub fn half_shift(&self) -> f64 {
        (self.n() - 2.0 + self.c) / 2.0
    }

    pub fn discriminant(&self) -> f64 {
        discriminant(self)
    }
}

/// Lebesgue exponent `p ∈ [1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtendedIndex {
    Finite(f64),
    Infinity,
}

impl ExtendedIndex {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(RellichError::InvalidParameter(format!(
                "exponent p must satisfy p >= 1, got {p}"
            )));
        }
        if p.is_infinite() {
            Ok(Self::Infinity)
        } else {
            Ok(Self::Finite(p))
        }
    }

    /// `1/p`, zero at infinity.
    pub fn inv(&self) -> f64 {
        match *self {
            Self::Finite(p) => 1.0 / p,
            Self::Infinity => 0.0,
        }
    }

    /// `1/p′ = 1 − 1/p`.
    pub fn conj_inv(&self) -> f64 {
        match *self {
            Self::Finite(p) => (p - 1.0) / p,
            Self::Infinity => 1.0,
        }
    }

    pub fn conjugate(&self) -> Self {
        match *self {
            Self::Finite(1.0) => Self::Infinity,
            Self::Finite(p) => Self::Finite(p / (p - 1.0)),
            Self::Infinity => Self::Finite(1.0),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Finite(_))
    }

    /// Exponent as a float, `f64::INFINITY` for `∞`.
    pub fn value(&self) -> f64 {
        match *self {
            Self::Finite(p) => p,
            Self::Infinity => f64::INFINITY,
        }
    }

    /// True when `1 < p < ∞`.
    pub fn is_reflexive(&self) -> bool {
        matches!(*self, Self::Finite(p) if p > 1.0)
    }
}

impl FromStr for ExtendedIndex {
    type Err = RellichError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if matches!(t.as_str(), "inf" | "infinity" | "∞") {
            return Ok(Self::Infinity);
        }
        let p: f64 = t
            .parse()
            .map_err(|_| RellichError::InvalidParameter(format!("cannot parse exponent '{s}'")))?;
        Self::new(p)
    }
}

impl fmt::Display for ExtendedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(p) => write!(f, "{p}"),
            Self::Infinity => write!(f, "inf"),
        }
    }
}

/// Absolute tolerance for equality tests in decision logic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance(pub f64);

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(1e-9)
    }
}

impl Tolerance {
    pub fn new(tol: f64) -> Result<Self> {
        if tol.is_finite() && tol >= 0.0 {
            Ok(Tolerance(tol))
        } else {
            Err(RellichError::InvalidParameter(format!(
                "tolerance must be a nonnegative finite number, got {tol}"
            )))
        }
    }

    pub fn get(&self) -> f64 {
        self.0
    }
}

pub fn discriminant(params: &OperatorParams) -> f64 {
    let h = params.half_shift();
    params.b + h * h
}

/// `λ_n = n(N + n − 2)`.
pub fn eigen_lambda(dim: u32, n: u32) -> f64 {
    let n = f64::from(n);
    n * (f64::from(dim) + n - 2.0)
}

/// Square root with nonnegative real part; negative reals map to `+i√|z|`.
pub fn sqrt_nonneg_re(z: Complex64) -> ComplexRoot {
    if z.im == 0.0 {
        if z.re >= 0.0 {
            return Complex64::new(z.re.sqrt(), 0.0);
        }
        return Complex64::new(0.0, (-z.re).sqrt());
    }
    let w = z.sqrt();
    if w.re < 0.0 {
        -w
    } else {
        w
    }
}

/// `Re √x` for real `x`.
pub fn re_sqrt(x: f64) -> f64 {
    if x > 0.0 {
        x.sqrt()
    } else {
        0.0
    }
}

/// `(s₁ⁿ, s₂ⁿ) = (N−2+c)/2 ∓ √(D + λ_n)`.
pub fn indicial_roots(params: &OperatorParams, n: u32) -> (ComplexRoot, ComplexRoot) {
    let q = sqrt_nonneg_re(Complex64::new(
        discriminant(params) + eigen_lambda(params.dim, n),
        0.0,
    ));
    let h = Complex64::new(params.half_shift(), 0.0);
    (h - q, h + q)
}

/// `N(1/2 − 1/p) + 1 + c/2`.
pub fn base_alpha(params: &OperatorParams, p: ExtendedIndex) -> f64 {
    params.n() * (0.5 - p.inv()) + 1.0 + params.c / 2.0
}

/// `(α_n^−, α_n^+) = base ∓ Re√(D + λ_n)`.
pub fn critical_alphas(params: &OperatorParams, p: ExtendedIndex, n: u32) -> (f64, f64) {
    let base = base_alpha(params, p);
    let r = re_sqrt(discriminant(params) + eigen_lambda(params.dim, n));
    (base - r, base + r)
}

/// `γ_p(α, c) = (N/p − 2 + α)(N/p′ − α + c)`.
pub fn gamma_p(dim: u32, p: ExtendedIndex, alpha: f64, c: f64) -> f64 {
    let n = f64::from(dim);
    (n * p.inv() - 2.0 + alpha) * (n * p.conj_inv() - alpha + c)
}

/// `ω_p = (N/p²)[p(N − 2 + c) − N]`, written so that `p = ∞` gives 0.
pub fn omega_p(dim: u32, p: ExtendedIndex, c: f64) -> f64 {
    let n = f64::from(dim);
    let q = p.inv();
    n * q * (n - 2.0 + c) - n * n * q * q
}

/// `μ = b − (2 − α)(N − α + c)`.
pub fn mu_shift(params: &OperatorParams, alpha: f64) -> f64 {
    params.b - (2.0 - alpha) * (params.n() - alpha + params.c)
}

/// Kelvin transform `(N, c, b, α) ↦ (N, −c, b + (N−2)c, −α + N + 2 − 2N/p)`.
pub fn kelvin_transform(
    params: &OperatorParams,
    p: ExtendedIndex,
    alpha: f64,
) -> (OperatorParams, f64) {
    let n = params.n();
    let tp = OperatorParams {
        dim: params.dim,
        c: -params.c,
        b: params.b + (n - 2.0) * params.c,
    };
    (tp, -alpha + n + 2.0 - 2.0 * n * p.inv())
}
