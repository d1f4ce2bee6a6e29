//! Numerical tolerances used across the crate.
//!
//! Construction-time validation is held to near machine precision; checks
//! that sit behind an eigendecomposition or a long accumulation get an
//! extra couple of digits of slack.

/// Entrywise Hermiticity and trace validation at construction time.
pub const CONSTRUCTION: f64 = 1e-12;

/// Pure-state normalization at construction time.
pub const NORM: f64 = 1e-12;

/// Allowed negative slack on eigenvalues of a valid density matrix,
/// tolerating channel-output and partial-trace rounding.
pub const POSITIVITY_SLACK: f64 = -1e-10;

/// Default verification tolerance for MUB overlap and trace identities.
pub const MUB_DEFAULT: f64 = 1e-10;

/// Round-trip checks that pass through an eigendecomposition
/// (purification, spectral reconstruction).
pub const EIGEN_ROUNDTRIP: f64 = 1e-10;

/// Identities accumulated over sums of many terms (definition
/// equivalence, complementarity residuals).
pub const IDENTITY: f64 = 1e-9;

/// Cross-checks between two algebraic routes to the same quantity
/// (elementwise channel vs. operator sum, simulation vs. closed form).
pub const CROSS_CHECK: f64 = 1e-10;
