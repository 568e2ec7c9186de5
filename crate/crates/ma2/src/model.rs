//! Core MA(2) types: parameters, autocovariances, roots, and invertibility.
//!
//! The process is X(t) = e(t) - theta1*e(t-1) - theta2*e(t-2) with white
//! noise variance sigma2 and theta2 != 0. Its characteristic polynomial is
//! M(z) = z^2 - theta1*z - theta2, and the process is invertible exactly when
//! both roots of M lie strictly inside the unit circle, equivalently when
//! (theta1, theta2) lies strictly inside the triangle
//!
//! ```text
//! theta2 - theta1 < 1,   theta2 + theta1 < 1,   theta2^2 < 1.
//! ```

use std::fmt;

use num_complex::Complex64;

use crate::error::Ma2Error;
use crate::tol;

/// Parameters of an MA(2) process X(t) = e(t) - theta1*e(t-1) - theta2*e(t-2).
///
/// `theta2` must be nonzero (otherwise the process degenerates to MA(1) or
/// white noise) and `sigma2` strictly positive. Values are immutable after
/// construction, so a validated instance stays valid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ma2Params {
    theta1: f64,
    theta2: f64,
    sigma2: f64,
}

impl Ma2Params {
    pub fn new(theta1: f64, theta2: f64, sigma2: f64) -> Result<Self, Ma2Error> {
        if !(theta1.is_finite() && theta2.is_finite() && sigma2.is_finite()) {
            return Err(Ma2Error::NonFiniteInput);
        }
        if sigma2 <= 0.0 {
            return Err(Ma2Error::NonPositiveSigma2 { sigma2 });
        }
        if theta2 == 0.0 {
            return Err(Ma2Error::ZeroTheta2);
        }
        Ok(Self {
            theta1,
            theta2,
            sigma2,
        })
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    /// Autocovariances of the process:
    ///
    /// gamma0 = sigma2 * (1 + theta1^2 + theta2^2)
    /// gamma1 = sigma2 * theta1 * (theta2 - 1)
    /// gamma2 = -sigma2 * theta2
    ///
    /// All autocovariances beyond lag 2 vanish.
    pub fn acf(&self) -> AcfTriple {
        let Self {
            theta1,
            theta2,
            sigma2,
        } = *self;
        // The constructor invariants guarantee the result satisfies the
        // AcfTriple invariants: gamma0 > 0, gamma2 != 0, and both
        // |gamma1| < gamma0 and |gamma2| < gamma0 hold strictly for every
        // real (theta1, theta2).
        AcfTriple {
            gamma0: sigma2 * (1.0 + theta1 * theta1 + theta2 * theta2),
            gamma1: sigma2 * theta1 * (theta2 - 1.0),
            gamma2: -sigma2 * theta2,
        }
    }

    /// Roots of M(z) = z^2 - theta1*z - theta2.
    ///
    /// Real roots are returned with zero imaginary part and z1 >= z2;
    /// complex roots come as a conjugate pair with z1 in the upper half
    /// plane.
    pub fn roots(&self) -> RootPair {
        let disc = self.theta1 * self.theta1 + 4.0 * self.theta2;
        if disc >= 0.0 {
            let s = disc.sqrt();
            RootPair {
                z1: Complex64::new(0.5 * (self.theta1 + s), 0.0),
                z2: Complex64::new(0.5 * (self.theta1 - s), 0.0),
            }
        } else {
            let re = 0.5 * self.theta1;
            let im = 0.5 * (-disc).sqrt();
            RootPair {
                z1: Complex64::new(re, im),
                z2: Complex64::new(re, -im),
            }
        }
    }

    /// Detects whether the parameter point sits on one of the three boundary
    /// lines where M(z) has a unit-modulus root:
    ///
    /// (a) 1 - theta1 - theta2 = 0, a root at z = +1;
    /// (b) 1 + theta1 - theta2 = 0, a root at z = -1;
    /// (c) theta2 = -1 with |theta1| < 2, a conjugate pair e^(+-i*lambda).
    ///
    /// Each test uses the relative tolerance
    /// `tol::BOUNDARY_REL * (1 + |theta1| + |theta2|)`.
    pub fn boundary(&self) -> Option<BoundaryTag> {
        boundary_tag(self.theta1, self.theta2)
    }

    /// Where the point sits relative to the invertibility triangle. Boundary
    /// detection runs first, so points within tolerance of a boundary line
    /// are reported as `Boundary` rather than silently falling on one side.
    pub fn invertibility(&self) -> Invertibility {
        if let Some(tag) = self.boundary() {
            return Invertibility::Boundary(tag);
        }
        let inside = self.theta2 - self.theta1 < 1.0
            && self.theta2 + self.theta1 < 1.0
            && self.theta2 * self.theta2 < 1.0;
        if inside {
            Invertibility::Invertible
        } else {
            Invertibility::NonInvertible
        }
    }
}

/// Boundary-line detection on a raw (theta1, theta2) pair; see
/// [`Ma2Params::boundary`]. Exposed separately so classification can test
/// points without constructing a full parameter set.
pub fn boundary_tag(theta1: f64, theta2: f64) -> Option<BoundaryTag> {
    let scale = 1.0 + theta1.abs() + theta2.abs();
    let eps = tol::BOUNDARY_REL * scale;
    if (1.0 - theta1 - theta2).abs() <= eps {
        Some(BoundaryTag::RootAtPlusOne)
    } else if (1.0 + theta1 - theta2).abs() <= eps {
        Some(BoundaryTag::RootAtMinusOne)
    } else if (theta2 + 1.0).abs() <= eps && theta1.abs() < 2.0 {
        // Conjugate roots e^(+-i*lambda) with 2*cos(lambda) = theta1. The
        // endpoints theta1 = +-2 belong to lines (a) and (b) and are caught
        // above.
        Some(BoundaryTag::ComplexUnitRoot {
            lambda: (0.5 * theta1).acos(),
        })
    } else {
        None
    }
}

/// Which boundary line carries the unit-modulus root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryTag {
    /// M(1) = 0, i.e. 1 - theta1 - theta2 = 0.
    RootAtPlusOne,
    /// M(-1) = 0, i.e. 1 + theta1 - theta2 = 0.
    RootAtMinusOne,
    /// theta2 = -1 with |theta1| < 2; the roots are e^(+-i*lambda) with
    /// lambda = acos(theta1 / 2) in (0, pi).
    ComplexUnitRoot { lambda: f64 },
}

impl fmt::Display for BoundaryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryTag::RootAtPlusOne => f.write_str("root at +1"),
            BoundaryTag::RootAtMinusOne => f.write_str("root at -1"),
            BoundaryTag::ComplexUnitRoot { lambda } => {
                write!(f, "complex unit pair, lambda = {lambda}")
            }
        }
    }
}

/// Position of a parameter point relative to the invertibility triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Invertibility {
    Invertible,
    NonInvertible,
    Boundary(BoundaryTag),
}

/// The roots of M(z) = z^2 - theta1*z - theta2, with the conventions of
/// [`Ma2Params::roots`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootPair {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl RootPair {
    /// True when both roots are real (stored with exactly zero imaginary
    /// part).
    pub fn is_real(&self) -> bool {
        self.z1.im == 0.0
    }

    pub fn max_modulus(&self) -> f64 {
        self.z1.norm().max(self.z2.norm())
    }
}

/// Autocovariances (gamma0, gamma1, gamma2) of an MA(2) process.
///
/// Construction enforces what any MA(2) autocovariance sequence must satisfy
/// coordinate-wise: gamma0 > 0, gamma2 != 0 (the MA(2) premise), and
/// |gamma1| < gamma0, |gamma2| < gamma0. Whether the triple is realizable by
/// some MA(2) process is a deeper question answered during identification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcfTriple {
    gamma0: f64,
    gamma1: f64,
    gamma2: f64,
}

impl AcfTriple {
    pub fn new(gamma0: f64, gamma1: f64, gamma2: f64) -> Result<Self, Ma2Error> {
        if !(gamma0.is_finite() && gamma1.is_finite() && gamma2.is_finite()) {
            return Err(Ma2Error::NonFiniteInput);
        }
        if gamma0 <= 0.0 {
            return Err(Ma2Error::NonPositiveGamma0 { gamma0 });
        }
        if gamma2 == 0.0 {
            return Err(Ma2Error::ZeroGamma2);
        }
        if gamma1.abs() >= gamma0 {
            return Err(Ma2Error::AutocovarianceBound {
                lag: 1,
                value: gamma1,
                gamma0,
            });
        }
        if gamma2.abs() >= gamma0 {
            return Err(Ma2Error::AutocovarianceBound {
                lag: 2,
                value: gamma2,
                gamma0,
            });
        }
        Ok(Self {
            gamma0,
            gamma1,
            gamma2,
        })
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    /// Inverts the autocovariance map for a known candidate variance:
    ///
    /// theta1 = -gamma1 / (sigma2 + gamma2),  theta2 = -gamma2 / sigma2.
    ///
    /// Different admissible sigma2 values produce the different
    /// parameterizations sharing this triple.
    pub fn theta_given_sigma2(&self, sigma2: f64) -> Result<(f64, f64), Ma2Error> {
        if !sigma2.is_finite() || sigma2 <= 0.0 {
            return Err(Ma2Error::NonPositiveSigma2 { sigma2 });
        }
        let den = sigma2 + self.gamma2;
        if den == 0.0 {
            return Err(Ma2Error::DegenerateSigmaCandidate { sigma2 });
        }
        let theta1 = -self.gamma1 / den;
        let theta2 = -self.gamma2 / sigma2;
        if !(theta1.is_finite() && theta2.is_finite()) {
            return Err(Ma2Error::DegenerateSigmaCandidate { sigma2 });
        }
        Ok((theta1, theta2))
    }

    /// The autocovariance generating function
    ///
    /// sum_(h = -2..2) gamma_|h| * z^h = gamma0 + gamma1*(z + 1/z) + gamma2*(z^2 + 1/z^2),
    ///
    /// defined for z != 0. For an exact MA(2) triple it factorizes as
    /// sigma2 * M(z) * M(1/z), which identification and version enumeration
    /// both exploit.
    pub fn acgf(&self, z: Complex64) -> Result<Complex64, Ma2Error> {
        if z == Complex64::new(0.0, 0.0) {
            return Err(Ma2Error::ZeroEvaluationPoint);
        }
        let zi = z.inv();
        let z2 = z * z;
        let zi2 = zi * zi;
        Ok(self.gamma0 + self.gamma1 * (z + zi) + self.gamma2 * (z2 + zi2))
    }
}
