//! Error type shared across the crate.

use thiserror::Error;

use crate::ident::CandidateLabel;
use crate::model::BoundaryTag;

/// Everything that can go wrong while constructing, identifying, enumerating,
/// classifying, or simulating an MA(2) process.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Ma2Error {
    /// A parameter or autocovariance was NaN or infinite.
    #[error("inputs must be finite")]
    NonFiniteInput,

    /// White-noise variance must be strictly positive.
    #[error("sigma2 must be strictly positive, got {sigma2}")]
    NonPositiveSigma2 { sigma2: f64 },

    /// theta2 = 0 would make the process MA(1) or white noise.
    #[error("theta2 must be nonzero for an MA(2) process")]
    ZeroTheta2,

    /// gamma0 is a variance and must be strictly positive.
    #[error("gamma0 must be strictly positive, got {gamma0}")]
    NonPositiveGamma0 { gamma0: f64 },

    /// gamma2 = 0 corresponds to theta2 = 0, which is excluded.
    #[error("gamma2 must be nonzero for an MA(2) autocovariance triple")]
    ZeroGamma2,

    /// Lag-1 and lag-2 autocovariances must stay strictly below the variance.
    #[error("|gamma{lag}| = {value} must be strictly less than gamma0 = {gamma0}")]
    AutocovarianceBound { lag: usize, value: f64, gamma0: f64 },

    /// sigma2 + gamma2 = 0 makes the theta1 recovery formula divide by zero.
    #[error(
        "sigma2 + gamma2 = 0 at sigma2 = {sigma2}; theta1 is not recoverable \
         for this candidate variance"
    )]
    DegenerateSigmaCandidate { sigma2: f64 },

    /// The autocovariance generating function has poles at z = 0.
    #[error("autocovariance generating function is undefined at z = 0")]
    ZeroEvaluationPoint,

    /// No MA(2) process has the requested autocovariances.
    #[error("no MA(2) process has these autocovariances: {reason}")]
    InfeasibleAcf { reason: String },

    /// The requested sigma2 candidate cannot produce a parameter pair.
    #[error("candidate {label} is inadmissible: {reason}")]
    CandidateInadmissible {
        label: CandidateLabel,
        reason: &'static str,
    },

    /// The autocovariances are realizable, but only by processes with a root
    /// of M(z) on the unit circle, so no invertible version exists.
    #[error("no invertible version exists; the autocovariances sit on an invertibility boundary")]
    NoInvertibleVersion,

    /// Version enumeration is undefined when M(z) has a unit-modulus root.
    #[error("a root of M(z) lies on the unit circle; versions cannot be enumerated")]
    UnitModulusRoot,

    /// Region classification needs theta2 != 0.
    #[error("theta2 = 0: the parameter point is not an MA(2) process")]
    DegenerateTheta2,

    /// The point sits on an invertibility boundary line, where no candidate
    /// variance is singled out.
    #[error("({theta1}, {theta2}) lies on an invertibility boundary ({tag})")]
    OnBoundary {
        theta1: f64,
        theta2: f64,
        tag: BoundaryTag,
    },

    /// |theta2| = 1 points off the reciprocal-root line are not covered by
    /// the candidate selection table.
    #[error("({theta1}, {theta2}) is not covered by the candidate selection table")]
    Unclassifiable { theta1: f64, theta2: f64 },

    /// Sample autocovariances through lag 2 need at least three observations.
    #[error("path too short: {len} observations, need at least {min}")]
    PathTooShort { len: usize, min: usize },
}
