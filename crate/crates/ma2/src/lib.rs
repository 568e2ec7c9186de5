//! Exact identification for MA(2) processes.
//!
//! An MA(2) process X(t) = e(t) - theta1*e(t-1) - theta2*e(t-2) is observed
//! only through its autocovariances (gamma0, gamma1, gamma2), and up to four
//! parameter triples share any given autocovariance function. This crate
//! works with that ambiguity directly:
//!
//! - [`model`] holds validated parameter and autocovariance types plus the
//!   forward map between them;
//! - [`ident`] computes all variance candidates of a triple in closed form
//!   and recovers the unique invertible process when one exists;
//! - [`versions`] enumerates every process sharing an autocovariance
//!   function by reflecting roots of the MA polynomial;
//! - [`classify`] maps the parameter plane into the regions that determine
//!   which candidate is the generating variance;
//! - [`sim`] generates seeded sample paths and moment estimates, showing
//!   that fitting from data recovers the invertible version no matter which
//!   version generated the data.
//!
//! ```
//! use ma2::{identify_invertible, AcfTriple};
//!
//! // (5.25, 0.5, -2) is the autocovariance triple of the non-invertible
//! // process (0.5, 2, 1); identification returns its invertible twin.
//! let acf = AcfTriple::new(5.25, 0.5, -2.0)?;
//! let fitted = identify_invertible(&acf)?.invertible;
//! assert!((fitted.theta1() + 0.25).abs() < 1e-12);
//! assert!((fitted.theta2() - 0.5).abs() < 1e-12);
//! assert!((fitted.sigma2() - 4.0).abs() < 1e-12);
//! # Ok::<(), ma2::Ma2Error>(())
//! ```

pub mod classify;
pub mod error;
pub mod ident;
pub mod model;
pub mod sim;
pub mod tol;
pub mod versions;

pub use classify::{
    classify_region, correct_sigma2, simplified_rule, CaseId, RegionCase, SigmaChoice, Ternary,
};
pub use error::Ma2Error;
pub use ident::{
    identify_invertible, sigma_candidates, theta_from_candidate, CandidateLabel, IdentResult,
    QuarticCoeffs, SigmaCandidates,
};
pub use model::{AcfTriple, BoundaryTag, Invertibility, Ma2Params, RootPair};
pub use sim::{sample_acf, simulate_path, SampleAcf, SimConfig};
pub use versions::{enumerate_versions, versions_from_acf, FlipPattern, Version, VersionSet};
