//! Weighted Rellich inequalities for `L = Δ + c x/|x|²·∇ − b/|x|²`.
//!
//! The crate decides when `‖|x|^α Lu‖_p ≥ C ‖|x|^{α−2} u‖_p` holds on the whole
//! space, the unit ball, bounded and exterior domains, computes the best constant
//! where it is known, classifies the spectrum of the associated degenerate operator
//! `A = |x|²Δ + c x·∇`, and checks the claims numerically on separable test
//! functions reduced to one dimension.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod green;
pub mod params;
pub mod profile;
pub mod quadrature;
pub mod radial;
pub mod spectral;
pub mod validity;
pub mod verify;

pub use error::{RellichError, Result};
pub use params::{ComplexRoot, ExtendedIndex, OperatorParams, Tolerance};
pub use profile::Profile1D;
pub use spectral::{ParabolicRegion, SpectralClassification};
pub use validity::{Branch, DomainKind, FailingMode, HarmonicSet, Verdict};
pub use verify::VerificationReport;
