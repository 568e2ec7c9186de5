//! Numeric tolerances used across the crate.
//!
//! Every constant here is relative; each gets multiplied by a problem-sized
//! scale at the point of use. None of them is an absolute epsilon.

/// Boundary-line detection: a parameter point counts as sitting on one of the
/// three invertibility boundary lines when the line expression is within
/// `BOUNDARY_REL * (1 + |theta1| + |theta2|)` of zero.
pub const BOUNDARY_REL: f64 = 1e-9;

/// Radicands in `[-RADICAND_CLAMP_REL * gamma0^2, 0)` are treated as exact
/// zeros. Square roots of analytically nonnegative quantities then survive
/// rounding noise without masking genuinely infeasible inputs, which produce
/// radicands far below the band.
pub const RADICAND_CLAMP_REL: f64 = 1e-12;

/// Relative-zero screen applied during identification to the discriminant
/// factors gamma0 -+ 2*gamma1 + 2*gamma2 and to the outer radicand. On
/// exact-boundary autocovariances those quantities are pure rounding noise,
/// many orders of magnitude below this threshold times their term scale;
/// on interior points they sit many orders above it.
pub const BOUNDARY_SCREEN_REL: f64 = 1e-11;

/// Ceiling on the identification reconstruction residual, measured relative
/// to gamma0.
pub const MAX_RESIDUAL: f64 = 1e-9;

/// Two versions closer than this in (theta1, theta2, relative sigma2) are
/// collapsed into one.
pub const VERSION_DEDUP: f64 = 1e-9;

/// Acceptance ceiling for the verification fallback in `correct_sigma2`,
/// relative to gamma0. The fallback serves parameter points where the small
/// candidate pair is an analytic double root; rounding splits such a pair by
/// O(sqrt(machine epsilon)), so the matching candidate can miss the generating
/// variance by ~1e-7 relative while every wrong candidate misses by at least
/// the root-separation scale, orders of magnitude more.
pub const GAP_MATCH_REL: f64 = 1e-6;
