//! Decision procedures for the weighted Rellich inequality on each domain type
//! and harmonic subspace.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{RellichError, Result};
use crate::params::{
    base_alpha, discriminant, eigen_lambda, gamma_p, mu_shift, re_sqrt, ExtendedIndex,
    OperatorParams, Tolerance,
};
use crate::spectral::region_weighted;

/// Set `J` of spherical-harmonic degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum HarmonicSet {
    All,
    AtLeast(u32),
    /// Sorted, distinct, nonempty.
    FiniteSet(Vec<u32>),
    /// Complement of a finite sorted list.
    Excluding(Vec<u32>),
}

impl HarmonicSet {
    pub fn finite(mut degrees: Vec<u32>) -> Result<Self> {
        degrees.sort_unstable();
        degrees.dedup();
        if degrees.is_empty() {
            return Err(RellichError::InvalidParameter(
                "harmonic set must be nonempty".into(),
            ));
        }
        Ok(Self::FiniteSet(degrees))
    }

    pub fn excluding(mut degrees: Vec<u32>) -> Self {
        degrees.sort_unstable();
        degrees.dedup();
        Self::Excluding(degrees)
    }

    pub fn contains(&self, j: u32) -> bool {
        match self {
            Self::All => true,
            Self::AtLeast(n0) => j >= *n0,
            Self::FiniteSet(v) => v.binary_search(&j).is_ok(),
            Self::Excluding(v) => v.binary_search(&j).is_err(),
        }
    }

    /// Smallest degree `j₀`.
    pub fn min(&self) -> u32 {
        match self {
            Self::All => 0,
            Self::AtLeast(n0) => *n0,
            Self::FiniteSet(v) => v[0],
            Self::Excluding(v) => {
                let mut j = 0;
                for &x in v {
                    if x != j {
                        break;
                    }
                    j += 1;
                }
                j
            }
        }
    }

    /// Largest member, if the set is finite.
    pub fn max(&self) -> Option<u32> {
        match self {
            Self::FiniteSet(v) => v.last().copied(),
            _ => None,
        }
    }

    pub fn is_all(&self) -> bool {
        match self {
            Self::All => true,
            Self::AtLeast(n0) => *n0 == 0,
            Self::Excluding(v) => v.is_empty(),
            Self::FiniteSet(_) => false,
        }
    }
}

impl FromStr for HarmonicSet {
    type Err = RellichError;

    /// Accepts `all`, `ge:N`, `set:a,b,...` and `ne:a,b,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || RellichError::InvalidParameter(format!("cannot parse harmonic set '{s}'"));
        let list = |t: &str| -> Result<Vec<u32>> {
            t.split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| bad()))
                .collect()
        };
        if s.eq_ignore_ascii_case("all") {
            return Ok(Self::All);
        }
        let (head, tail) = s.split_once(':').ok_or_else(bad)?;
        match head {
            "ge" => Ok(Self::AtLeast(tail.trim().parse().map_err(|_| bad())?)),
            "set" => Self::finite(list(tail)?),
            "ne" => Ok(Self::excluding(list(tail)?)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for HarmonicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self {
            Self::All => write!(f, "all"),
            Self::AtLeast(n) => write!(f, "ge:{n}"),
            Self::FiniteSet(v) => write!(f, "set:{}", join(v)),
            Self::Excluding(v) => write!(f, "ne:{}", join(v)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainKind {
    WholeSpace,
    UnitBall,
    BoundedSmooth,
    ExteriorSmooth,
    ExteriorBall,
}

impl FromStr for DomainKind {
    type Err = RellichError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rn" | "whole" | "whole-space" => Ok(Self::WholeSpace),
            "ball" | "unit-ball" => Ok(Self::UnitBall),
            "bounded" => Ok(Self::BoundedSmooth),
            "exterior" => Ok(Self::ExteriorSmooth),
            "exterior-ball" => Ok(Self::ExteriorBall),
            _ => Err(RellichError::InvalidParameter(format!("unknown domain '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Minus,
    Plus,
    BoundaryObstruction,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FailingMode {
    pub n: u32,
    pub branch: Branch,
    /// The critical exponent matched by `α`, or the threshold it exceeded.
    pub critical_alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub failing_modes: Vec<FailingMode>,
    pub best_constant: Option<f64>,
    pub notes: String,
}

impl Verdict {
    fn from_modes(failing_modes: Vec<FailingMode>) -> Self {
        Self {
            holds: failing_modes.is_empty(),
            failing_modes,
            best_constant: None,
            notes: String::new(),
        }
    }

    fn with_constant(mut self, params: &OperatorParams, p: ExtendedIndex, alpha: f64) -> Self {
        if self.holds {
            self.best_constant = best_constant(params, p, alpha);
            if self.best_constant.is_none() {
                self.notes = "inequality holds; best constant unknown outside |base - alpha| < sqrt(D)".into();
            }
        }
        self
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() {
        Ok(())
    } else {
        Err(RellichError::InvalidParameter(format!("alpha must be finite, got {alpha}")))
    }
}

fn root(params: &OperatorParams, j: u32) -> f64 {
    re_sqrt(discriminant(params) + eigen_lambda(params.dim, j))
}

/// Validity on `ℝ^N` restricted to `J`: fails exactly at `α = α_j^±`, `j ∈ J`.
pub fn decide_whole_space(
    params: &OperatorParams,
    p: ExtendedIndex,
    alpha: f64,
    set: &HarmonicSet,
    tol: Tolerance,
) -> Result<Verdict> {
    check_alpha(alpha)?;
    let base = base_alpha(params, p);
    let horizon = (alpha - base).abs() + 1.0;
    let mut modes = Vec::new();
    for j in 0u32.. {
        let r = root(params, j);
        if r > horizon || set.max().is_some_and(|m| j > m) {
            break;
        }
        if !set.contains(j) {
            continue;
        }
        for (branch, crit) in [(Branch::Minus, base - r), (Branch::Plus, base + r)] {
            if (alpha - crit).abs() <= tol.get() {
                modes.push(FailingMode { n: j, branch, critical_alpha: crit });
            }
        }
    }
    let v = Verdict::from_modes(modes);
    Ok(if set.is_all() { v.with_constant(params, p, alpha) } else { v })
}

fn unit_ball_modes(
    params: &OperatorParams,
    p: ExtendedIndex,
    alpha: f64,
    set: &HarmonicSet,
    tol: Tolerance,
) -> Vec<FailingMode> {
    let base = base_alpha(params, p);
    let j0 = set.min();
    let mut modes = Vec::new();
    let threshold = base + root(params, j0);
    if alpha >= threshold - tol.get() {
        modes.push(FailingMode {
            n: j0,
            branch: Branch::BoundaryObstruction,
            critical_alpha: threshold,
        });
    }
    for j in 0u32.. {
        let crit = base - root(params, j);
        if crit < alpha - tol.get() || set.max().is_some_and(|m| j > m) {
            break;
        }
        if set.contains(j) && (alpha - crit).abs() <= tol.get() {
            modes.push(FailingMode { n: j, branch: Branch::Minus, critical_alpha: crit });
        }
    }
    modes
}

/// Validity on the unit ball restricted to `J`.
pub fn decide_unit_ball(
    params: &OperatorParams,
    p: ExtendedIndex,
    alpha: f64,
    set: &HarmonicSet,
    tol: Tolerance,
) -> Result<Verdict> {
    check_alpha(alpha)?;
    let v = Verdict::from_modes(unit_ball_modes(params, p, alpha, set, tol));
    Ok(if set.is_all() { v.with_constant(params, p, alpha) } else { v })
}

fn smooth_domain_preconditions(params: &OperatorParams, p: ExtendedIndex) -> Result<()> {
    if !p.is_reflexive() {
        return Err(RellichError::PreconditionViolated(format!(
            "requires 1 < p < inf, got p = {p}"
        )));
    }
    let d = discriminant(params);
    if d < 0.0 {
        return Err(RellichError::PreconditionViolated(format!(
            "requires D >= 0, got D = {d}"
        )));
    }
    Ok(())
}

/// Validity on a bounded smooth domain containing the origin.
pub fn decide_bounded_domain(
    params: &OperatorParams,
    p: ExtendedIndex,
    alpha: f64,
    tol: Tolerance,
) -> Result<Verdict> {
    smooth_domain_preconditions(params, p)?;
    decide_unit_ball(params, p, alpha, &HarmonicSet::All, tol)
}

/// Validity on an exterior domain: `α > base − Re√D` and `α ≠ α_n^+` for all `n`.
pub fn decide_exterior(
    params: &OperatorParams,
    p: ExtendedIndex,
    alpha: f64,
    kind: DomainKind,
    tol: Tolerance,
) -> Result<Verdict> {
    match kind {
        DomainKind::ExteriorSmooth => smooth_domain_preconditions(params, p)?,
        DomainKind::ExteriorBall => {}
        other => {
            return Err(RellichError::InvalidParameter(format!(
                "{other:?} is not an exterior domain"
            )))
        }
    }
    check_alpha(alpha)?;
    let base = base_alpha(params, p);
    let mut modes = Vec::new();
    let threshold = base - root(params, 0);
    if alpha <= threshold + tol.get() {
        modes.push(FailingMode {
            n: 0,
            branch: Branch::BoundaryObstruction,
            critical_alpha: threshold,
        });
    }
    for n in 0u32.. {
        let crit = base + root(params, n);
        if crit > alpha + tol.get() {
            break;
        }
        if (alpha - crit).abs() <= tol.get() {
            modes.push(FailingMode { n, branch: Branch::Plus, critical_alpha: crit });
        }
    }
    Ok(Verdict::from_modes(modes))
}

/// Single entry point over all domain kinds. Bounded and exterior domains accept
/// only the full harmonic set.
pub fn decide(
    params: &OperatorParams,
    p: ExtendedIndex,
    alpha: f64,
    domain: DomainKind,
    set: &HarmonicSet,
    tol: Tolerance,
) -> Result<Verdict> {
    let require_all = || {
        if set.is_all() {
            Ok(())
        } else {
            Err(RellichError::InvalidParameter(format!(
                "{domain:?} supports only the full harmonic set"
            )))
        }
    };
    match domain {
        DomainKind::WholeSpace => decide_whole_space(params, p, alpha, set, tol),
        DomainKind::UnitBall => decide_unit_ball(params, p, alpha, set, tol),
        DomainKind::BoundedSmooth => {
            require_all()?;
            decide_bounded_domain(params, p, alpha, tol)
        }
        DomainKind::ExteriorSmooth | DomainKind::ExteriorBall => {
            require_all()?;
            decide_exterior(params, p, alpha, domain, tol)
        }
    }
}

/// `b + γ_p(α, c)` when `D > 0` and `|base − α| < √D`.
pub fn best_constant(params: &OperatorParams, p: ExtendedIndex, alpha: f64) -> Option<f64> {
    let d = discriminant(params);
    if d > 0.0 && (base_alpha(params, p) - alpha).abs() < d.sqrt() {
        Some(params.b + gamma_p(params.dim, p, alpha, params.c))
    } else {
        None
    }
}

/// The four equivalent conditions on `(α, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterFlags {
    /// `μ ∉ Q_p − λ_j` for the region built with drift `c + 4 − 2α`.
    pub mu_outside_region: bool,
    /// `b + γ_p + λ_j > 0`.
    pub positive_constant: bool,
    /// `|base − α| < √(D + λ_j)` with `D + λ_j > 0`.
    pub inside_real_range: bool,
    /// `|base − α| < Re√(D + λ_j)`.
    pub inside_re_range: bool,
}

impl ParameterFlags {
    pub fn agree(&self) -> bool {
        let v = self.mu_outside_region;
        v == self.positive_constant && v == self.inside_real_range && v == self.inside_re_range
    }
}

pub fn parameter_equivalence_flags(
    params: &OperatorParams,
    p: ExtendedIndex,
    alpha: f64,
    j: u32,
) -> ParameterFlags {
    let lj = eigen_lambda(params.dim, j);
    let region = region_weighted(params, p, alpha);
    let mu = mu_shift(params, alpha);
    let gap = (base_alpha(params, p) - alpha).abs();
    let dl = discriminant(params) + lj;
    ParameterFlags {
        mu_outside_region: !region.in_region(Complex64::new(mu + lj, 0.0)),
        positive_constant: params.b + gamma_p(params.dim, p, alpha, params.c) + lj > 0.0,
        inside_real_range: dl > 0.0 && gap < dl.sqrt(),
        inside_re_range: gap < re_sqrt(dl),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{critical_alphas, kelvin_transform};
    use crate::spectral::{classify_a, SpectralDomain};
    use proptest::prelude::*;

    const P2: ExtendedIndex = ExtendedIndex::Finite(2.0);
    const TOL: Tolerance = Tolerance(1e-9);

    fn op(dim: u32, c: f64, b: f64) -> OperatorParams {
        OperatorParams::new(dim, c, b).unwrap()
    }

    fn lap5() -> OperatorParams {
        op(5, 0.0, 0.0)
    }

    #[test]
    fn harmonic_set_basics() {
        assert_eq!(HarmonicSet::excluding(vec![0, 1, 3]).min(), 2);
        assert_eq!(HarmonicSet::finite(vec![4, 2, 2]).unwrap(), HarmonicSet::FiniteSet(vec![2, 4]));
        assert!(HarmonicSet::finite(vec![]).is_err());
        assert_eq!("ge:1".parse::<HarmonicSet>().unwrap(), HarmonicSet::AtLeast(1));
        assert_eq!("set:0,2".parse::<HarmonicSet>().unwrap(), HarmonicSet::FiniteSet(vec![0, 2]));
        assert_eq!("ne:0".parse::<HarmonicSet>().unwrap(), HarmonicSet::Excluding(vec![0]));
        assert!("xx:1".parse::<HarmonicSet>().is_err());
        assert!("set:-1".parse::<HarmonicSet>().is_err());
        for s in ["all", "ge:3", "set:1,5", "ne:0,2"] {
            assert_eq!(s.parse::<HarmonicSet>().unwrap().to_string(), s);
        }
        assert!(HarmonicSet::AtLeast(0).is_all());
    }

    #[test]
    fn whole_space_examples() {
        let v = decide_whole_space(&lap5(), P2, -0.5, &HarmonicSet::All, TOL).unwrap();
        assert!(!v.holds);
        assert_eq!((v.failing_modes[0].n, v.failing_modes[0].branch), (0, Branch::Minus));
        let v = decide_whole_space(&lap5(), P2, 0.0, &HarmonicSet::All, TOL).unwrap();
        assert!(v.holds);
        assert!(decide_whole_space(&lap5(), P2, -0.5, &HarmonicSet::AtLeast(1), TOL).unwrap().holds);
        let v = decide_whole_space(&lap5(), P2, 3.5, &HarmonicSet::FiniteSet(vec![1]), TOL).unwrap();
        assert_eq!(v.failing_modes[0].branch, Branch::Plus);
        assert!(decide_whole_space(&lap5(), P2, f64::NAN, &HarmonicSet::All, TOL).is_err());
    }

    #[test]
    fn complex_roots_fail_at_base_with_both_branches() {
        let prm = op(5, 0.0, -3.0);
        let v = decide_whole_space(&prm, P2, 1.0, &HarmonicSet::All, TOL).unwrap();
        assert!(!v.holds);
        assert_eq!(v.failing_modes.len(), 2);
        assert!(decide_whole_space(&prm, P2, 1.3, &HarmonicSet::All, TOL).unwrap().holds);
    }

    #[test]
    fn unit_ball_examples() {
        let v = decide_unit_ball(&lap5(), P2, 3.0, &HarmonicSet::All, TOL).unwrap();
        assert_eq!(v.failing_modes[0].branch, Branch::BoundaryObstruction);
        assert!(decide_unit_ball(&lap5(), P2, 2.0, &HarmonicSet::All, TOL).unwrap().holds);
        let v = decide_unit_ball(&lap5(), P2, -1.5, &HarmonicSet::All, TOL).unwrap();
        assert_eq!((v.failing_modes[0].n, v.failing_modes[0].branch), (1, Branch::Minus));
        // With j0 = 1 the threshold moves to base + 2.5.
        assert!(decide_unit_ball(&lap5(), P2, 3.0, &HarmonicSet::AtLeast(1), TOL).unwrap().holds);
    }

    #[test]
    fn bounded_examples() {
        let v = decide_bounded_domain(&lap5(), P2, 0.0, TOL).unwrap();
        assert!(v.holds);
        assert!((v.best_constant.unwrap() - 1.25).abs() < 1e-12);
        assert!(matches!(
            decide_bounded_domain(&op(5, 0.0, -3.0), P2, 0.0, TOL),
            Err(RellichError::PreconditionViolated(_))
        ));
        assert!(matches!(
            decide_bounded_domain(&lap5(), ExtendedIndex::Finite(1.0), 0.0, TOL),
            Err(RellichError::PreconditionViolated(_))
        ));
        assert!(matches!(
            decide_bounded_domain(&lap5(), ExtendedIndex::Infinity, 0.0, TOL),
            Err(RellichError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn exterior_examples() {
        let v = decide_exterior(&lap5(), P2, 2.0, DomainKind::ExteriorBall, TOL).unwrap();
        assert!(v.holds && v.best_constant.is_none());
        let v = decide_exterior(&lap5(), P2, 2.5, DomainKind::ExteriorBall, TOL).unwrap();
        assert_eq!((v.failing_modes[0].n, v.failing_modes[0].branch), (0, Branch::Plus));
        let v = decide_exterior(&lap5(), P2, -0.5, DomainKind::ExteriorBall, TOL).unwrap();
        assert_eq!(v.failing_modes[0].branch, Branch::BoundaryObstruction);
        assert!(decide_exterior(&op(5, 0.0, -3.0), ExtendedIndex::Finite(1.0), 0.0,
                                DomainKind::ExteriorBall, TOL).is_ok());
        assert!(decide_exterior(&op(5, 0.0, -3.0), P2, 0.0, DomainKind::ExteriorSmooth, TOL).is_err());
        assert!(decide_exterior(&lap5(), P2, 0.0, DomainKind::UnitBall, TOL).is_err());
    }

    #[test]
    fn dispatcher_restricts_subspaces_for_general_domains() {
        let set = HarmonicSet::AtLeast(1);
        assert!(decide(&lap5(), P2, 0.0, DomainKind::BoundedSmooth, &set, TOL).is_err());
        assert!(decide(&lap5(), P2, 0.0, DomainKind::UnitBall, &set, TOL).is_ok());
    }

    #[test]
    fn best_constant_examples() {
        assert!((best_constant(&lap5(), P2, 0.0).unwrap() - 1.25).abs() < 1e-12);
        assert!((best_constant(&op(10, 0.0, 0.0), P2, 0.0).unwrap() - 15.0).abs() < 1e-12);
        assert!(best_constant(&lap5(), P2, 2.6).is_none());
        assert!(best_constant(&lap5(), P2, 2.5).is_none());
    }

    #[test]
    fn best_constant_only_for_full_set() {
        let v = decide_unit_ball(&lap5(), P2, 0.0, &HarmonicSet::AtLeast(1), TOL).unwrap();
        assert!(v.holds && v.best_constant.is_none());
    }

    #[test]
    fn parameter_flag_examples() {
        let f = parameter_equivalence_flags(&lap5(), P2, 0.0, 0);
        assert!(f.agree() && f.mu_outside_region);
        let f = parameter_equivalence_flags(&lap5(), P2, 3.0, 0);
        assert!(f.agree() && !f.mu_outside_region);
        let f = parameter_equivalence_flags(&op(5, 0.0, -3.0), P2, 1.0, 0);
        assert!(f.agree() && !f.mu_outside_region);
    }

    fn any_p() -> impl Strategy<Value = ExtendedIndex> {
        prop_oneof![
            1 => Just(ExtendedIndex::Infinity),
            1 => Just(ExtendedIndex::Finite(1.0)),
            6 => (1.0f64..10.0).prop_map(ExtendedIndex::Finite),
        ]
    }

    fn far_from_critical(prm: &OperatorParams, p: ExtendedIndex, alpha: f64) -> bool {
        (0..60).all(|j| {
            let (lo, hi) = critical_alphas(prm, p, j);
            (alpha - lo).abs() > 1e-6 && (alpha - hi).abs() > 1e-6
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn flags_agree(dim in 2u32..10, p in any_p(), alpha in -6.0f64..6.0,
                       c in -4.0f64..4.0, b in -6.0f64..6.0, j in 0u32..5) {
            let prm = op(dim, c, b);
            let dl = discriminant(&prm) + eigen_lambda(dim, j);
            let gap = (base_alpha(&prm, p) - alpha).abs();
            prop_assume!(dl.abs() > 1e-6 && (gap - re_sqrt(dl)).abs() > 1e-6);
            prop_assert!(parameter_equivalence_flags(&prm, p, alpha, j).agree());
        }

        #[test]
        fn ball_cross_form(dim in 2u32..10, p in any_p(), alpha in -6.0f64..6.0,
                           c in -4.0f64..4.0, b in -6.0f64..6.0, n0 in 0u32..3) {
            let prm = op(dim, c, b);
            prop_assume!(far_from_critical(&prm, p, alpha));
            let set = HarmonicSet::AtLeast(n0);
            let holds = decide_unit_ball(&prm, p, alpha, &set, TOL).unwrap().holds;
            let k = |j: u32| b + gamma_p(dim, p, alpha, c) + eigen_lambda(dim, j);
            if alpha >= base_alpha(&prm, p) {
                prop_assert_eq!(holds, k(n0) > 0.0);
            } else {
                prop_assert_eq!(holds, (n0..n0 + 60).all(|j| k(j) != 0.0));
            }
        }

        #[test]
        fn ball_agrees_with_spectrum_at_mu(dim in 2u32..10, p in any_p(), alpha in -6.0f64..6.0,
                                           c in -4.0f64..4.0, b in -6.0f64..6.0, n0 in 0u32..3) {
            let prm = op(dim, c, b);
            prop_assume!(far_from_critical(&prm, p, alpha));
            prop_assume!((alpha - base_alpha(&prm, p)).abs() > 1e-6);
            let set = HarmonicSet::AtLeast(n0);
            let holds = decide_unit_ball(&prm, p, alpha, &set, TOL).unwrap().holds;
            let shifted = op(dim, c + 4.0 - 2.0 * alpha, b);
            let mu = Complex64::new(mu_shift(&prm, alpha), 0.0);
            let cls = classify_a(&shifted, p, &set, SpectralDomain::UnitBall, mu);
            prop_assert_eq!(holds, !cls.in_approx);
        }

        #[test]
        fn exterior_is_kelvin_ball(dim in 2u32..10, p in any_p(), alpha in -6.0f64..8.0,
                                   c in -4.0f64..4.0, b in -6.0f64..6.0) {
            let prm = op(dim, c, b);
            let direct = decide_exterior(&prm, p, alpha, DomainKind::ExteriorBall, TOL).unwrap();
            let (q, a) = kelvin_transform(&prm, p, alpha);
            let via = decide_unit_ball(&q, p, a, &HarmonicSet::All, TOL).unwrap();
            prop_assert_eq!(direct.holds, via.holds);
        }

        #[test]
        fn laplacian_ball_rule(dim in 3u32..9, p in any_p(), alpha in -10.0f64..10.0) {
            let prm = op(dim, 0.0, 0.0);
            let n = f64::from(dim);
            let excluded = alpha >= n * p.conj_inv() - 1e-9
                || (0..=40).any(|k| (alpha - (2.0 - n * p.inv() - f64::from(k))).abs() <= 1e-9);
            let holds = decide_unit_ball(&prm, p, alpha, &HarmonicSet::All, TOL).unwrap().holds;
            prop_assert_eq!(holds, !excluded);
        }

        #[test]
        fn whole_space_subset_monotone(dim in 2u32..8, p in any_p(), alpha in -6.0f64..6.0,
                                       c in -3.0f64..3.0, b in -3.0f64..3.0, n0 in 0u32..3) {
            let prm = op(dim, c, b);
            let all = decide_whole_space(&prm, p, alpha, &HarmonicSet::All, TOL).unwrap();
            let sub = decide_whole_space(&prm, p, alpha, &HarmonicSet::AtLeast(n0), TOL).unwrap();
            prop_assert!(!all.holds || sub.holds);
        }
    }
}
