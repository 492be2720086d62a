//! Named numeric tolerances used across the crate.
//!
//! Two error budgets are kept apart: closed-form algebra (sums, bilinear
//! forms, certificate re-evaluation) is held to [`ALGEBRAIC_TOL`], while
//! anything that goes through an iterative eigensolver answers to
//! [`SPECTRAL_TOL`]. Inequality checks inherit the looser spectral budget
//! because one side is always a spectral quantity.

/// Budget for exact closed-form arithmetic: symmetry gates, weight sums,
/// certificate re-evaluation, scaling identities.
pub const ALGEBRAIC_TOL: f64 = 1e-12;

/// Budget for iterative/spectral values and the inequality slack checks.
pub const SPECTRAL_TOL: f64 = 1e-9;

/// Asymmetry gate in kernel construction. Inputs further from symmetric than
/// this are rejected rather than silently averaged.
pub const SYMMETRY_TOL: f64 = ALGEBRAIC_TOL;

/// Allowed deviation of a weight vector's sum from 1.
pub const WEIGHT_SUM_TOL: f64 = ALGEBRAIC_TOL;

/// Slack below which an inequality entry counts as failed (`slack >= -SLACK_TOL` passes).
pub const SLACK_TOL: f64 = SPECTRAL_TOL;
