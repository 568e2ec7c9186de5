//! Enumeration of every MA(2) process sharing an autocovariance triple.
//!
//! Replacing a characteristic root z of M(z) = z^2 - theta1*z - theta2 by
//! its reciprocal 1/z preserves the autocovariances once the noise variance
//! is rescaled by z^2. Running over the admissible root selections therefore
//! produces the complete set of parameterizations with a given triple: four
//! when the roots are real, distinct and off the unit circle, two when they
//! are complex conjugate (only all-or-none flips keep the coefficients real)
//! or real equal. Selections whose chosen pair multiplies to one are not
//! versions and are dropped.
//!
//! This module is deliberately independent of the closed-form machinery in
//! [`crate::ident`]: it manipulates roots directly, which makes it the
//! brute-force cross-check for those formulas.

use std::fmt;

use crate::error::Ma2Error;
use crate::ident::identify_invertible;
use crate::model::{AcfTriple, Invertibility, Ma2Params};
use crate::tol;

/// Which characteristic roots a version flips relative to the input
/// parameterization. For complex conjugate roots only `Identity` and `Both`
/// keep the coefficients real, and `Both` is the modulus flip a -> 1/a.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlipPattern {
    Identity,
    FlipZ1,
    FlipZ2,
    Both,
}

impl fmt::Display for FlipPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FlipPattern::Identity => "identity",
            FlipPattern::FlipZ1 => "flip_z1",
            FlipPattern::FlipZ2 => "flip_z2",
            FlipPattern::Both => "flip_both",
        };
        f.write_str(s)
    }
}

/// One parameterization sharing the triple, tagged with how it was built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Version {
    pub params: Ma2Params,
    pub flip_pattern: FlipPattern,
    pub invertible: bool,
}

/// All parameterizations sharing a triple, in the fixed pattern order
/// identity, flip z1, flip z2, both (minus exclusions and duplicates).
#[derive(Debug, Clone, PartialEq)]
pub struct VersionSet {
    pub versions: Vec<Version>,
    /// Position of the unique invertible version. Absent only when a root
    /// sits on the unit circle while another root is larger in modulus, so
    /// that the modulus screen does not fire yet every version stays on the
    /// boundary.
    pub invertible_index: Option<usize>,
}

impl VersionSet {
    pub fn invertible(&self) -> Option<&Version> {
        self.invertible_index.map(|i| &self.versions[i])
    }
}

/// Enumerates every MA(2) process with the same autocovariances as `p`.
///
/// Fails with [`Ma2Error::UnitModulusRoot`] when the largest root modulus is
/// one within tolerance: flipping a unit root is a no-op, and no version of
/// such a process is invertible.
pub fn enumerate_versions(p: &Ma2Params) -> Result<VersionSet, Ma2Error> {
    let scale = 1.0 + p.theta1().abs() + p.theta2().abs();
    let roots = p.roots();
    if (roots.max_modulus() - 1.0).abs() <= tol::BOUNDARY_REL * scale {
        return Err(Ma2Error::UnitModulusRoot);
    }

    // sigma2 scaling under flips: replacing a root z by 1/z multiplies the
    // variance by z^2, so the pattern that flips both roots scales it by
    // (z1*z2)^2 = theta2^2. Working with these products keeps every version
    // accurate even when the process sits close to a triangle edge, where
    // the sum of the autocovariances (the textbook route to sigma2) loses
    // most of its relative precision to cancellation.
    let mut raw: Vec<(FlipPattern, f64, f64, f64)> = Vec::with_capacity(4);
    raw.push((FlipPattern::Identity, p.theta1(), p.theta2(), p.sigma2()));
    if roots.is_real() {
        let (z1, z2) = (roots.z1.re, roots.z2.re);
        raw.push((
            FlipPattern::FlipZ1,
            1.0 / z1 + z2,
            -z2 / z1,
            p.sigma2() * z1 * z1,
        ));
        raw.push((
            FlipPattern::FlipZ2,
            z1 + 1.0 / z2,
            -z1 / z2,
            p.sigma2() * z2 * z2,
        ));
    }
    raw.push((
        FlipPattern::Both,
        -p.theta1() / p.theta2(),
        1.0 / p.theta2(),
        p.sigma2() * p.theta2() * p.theta2(),
    ));

    let mut versions: Vec<Version> = Vec::with_capacity(4);
    for (flip_pattern, t1, t2, s2) in raw {
        // A selection whose chosen pair (v1, v2) has v1*v2 = 1 pairs a value
        // with its own reciprocal; it is not counted as a version. The
        // product equals -theta2 of the candidate.
        let prod = -t2;
        if (prod - 1.0).abs() <= tol::VERSION_DEDUP * (1.0 + prod.abs()) {
            continue;
        }
        let params = Ma2Params::new(t1, t2, s2)?;
        if versions.iter().any(|v| {
            let vs = 1.0 + v.params.theta1().abs() + v.params.theta2().abs();
            (v.params.theta1() - t1).abs() + (v.params.theta2() - t2).abs()
                <= tol::VERSION_DEDUP * vs
        }) {
            continue;
        }
        let invertible = matches!(params.invertibility(), Invertibility::Invertible);
        versions.push(Version {
            params,
            flip_pattern,
            invertible,
        });
    }

    let invertible_index = versions.iter().position(|v| v.invertible);
    Ok(VersionSet {
        versions,
        invertible_index,
    })
}

/// Identifies the invertible parameterization of a triple and enumerates all
/// versions from it. Errors from identification pass through unchanged.
pub fn versions_from_acf(acf: &AcfTriple) -> Result<VersionSet, Ma2Error> {
    let identified = identify_invertible(acf)?;
    enumerate_versions(&identified.invertible)
}
