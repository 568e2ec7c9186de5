//! Identification of MA(2) parameters from an autocovariance triple.
//!
//! Every noise variance sigma2 compatible with a triple (gamma0, gamma1,
//! gamma2) is a positive real root of the quartic
//!
//! ```text
//! x^4 + a1*x^3 + a2*x^2 + a1*k*x + k^2 = 0
//! ```
//!
//! with a1 = 2*gamma2 - gamma0, a2 = 2*gamma2^2 - 2*gamma0*gamma2 + gamma1^2
//! and k = gamma2^2. The coefficient symmetry (a3 = a1*k, a4 = k^2) means the
//! roots come in pairs with product k, so the substitution z = x + k/x
//! collapses the quartic to the quadratic z^2 + a1*z + (a2 - 2k) = 0. Solving
//! that quadratic and then splitting each z back into its root pair yields
//! four closed-form candidates x1 <= x2 (the pair from the smaller z, real
//! only when the candidate processes have real characteristic roots) and
//! x3 <= x4 (always real for a feasible triple).
//!
//! The candidate x4 is the variance of the invertible parameterization
//! whenever one exists. [`identify_invertible`] recovers it, verifies the
//! reconstruction against the input triple, and rejects triples that sit on
//! an invertibility boundary or that no MA(2) process can produce.

use std::fmt;

use crate::error::Ma2Error;
use crate::model::{AcfTriple, Invertibility, Ma2Params};
use crate::tol;

/// Coefficients of the variance quartic
/// x^4 + a1*x^3 + a2*x^2 + a3*x + a4 with a3 = a1*k and a4 = k^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticCoeffs {
    pub a1: f64,
    pub a2: f64,
    pub k: f64,
}

impl QuarticCoeffs {
    pub fn from_acf(acf: &AcfTriple) -> Self {
        let (g0, g1, g2) = (acf.gamma0(), acf.gamma1(), acf.gamma2());
        Self {
            a1: 2.0 * g2 - g0,
            a2: 2.0 * g2 * g2 - 2.0 * g0 * g2 + g1 * g1,
            k: g2 * g2,
        }
    }

    pub fn a3(&self) -> f64 {
        self.a1 * self.k
    }

    pub fn a4(&self) -> f64 {
        self.k * self.k
    }

    /// Evaluates the quartic at x by Horner's rule.
    pub fn eval(&self, x: f64) -> f64 {
        (((x + self.a1) * x + self.a2) * x + self.a3()) * x + self.a4()
    }

    /// Magnitude sum of the quartic's terms at x, the natural scale for
    /// judging whether `eval(x)` is zero up to roundoff.
    pub fn eval_scale(&self, x: f64) -> f64 {
        let ax = x.abs();
        (((ax + self.a1.abs()) * ax + self.a2.abs()) * ax + self.a3().abs()) * ax + self.a4()
    }
}

/// Which of the four variance candidates is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CandidateLabel {
    X1,
    X2,
    X3,
    X4,
}

impl CandidateLabel {
    pub const ALL: [CandidateLabel; 4] = [
        CandidateLabel::X1,
        CandidateLabel::X2,
        CandidateLabel::X3,
        CandidateLabel::X4,
    ];
}

impl fmt::Display for CandidateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CandidateLabel::X1 => "x1",
            CandidateLabel::X2 => "x2",
            CandidateLabel::X3 => "x3",
            CandidateLabel::X4 => "x4",
        };
        f.write_str(s)
    }
}

/// The four quartic roots and the intermediate quantities they come from.
///
/// Pairing convention: x1 and x2 share the smaller quadratic root z_minus
/// (absent as reals when that pair is complex), x3 and x4 share z_plus, and
/// x1*x2 = x3*x4 = k. The discriminant-like quantities are
///
/// ```text
/// g       = sqrt(s_minus * s_plus),
/// h_minus = sqrt(z_minus^2 - 4k),
/// h_plus  = sqrt(z_plus^2 - 4k),
/// ```
///
/// with s_minus = gamma0 - 2*gamma1 + 2*gamma2 and
/// s_plus = gamma0 + 2*gamma1 + 2*gamma2. Radicands that roundoff pushed
/// slightly negative are clamped to zero, so `h_minus == Some(0.0)` is an
/// exact marker for a double root x1 == x2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaCandidates {
    pub s_minus: f64,
    pub s_plus: f64,
    pub g: f64,
    pub z_minus: f64,
    pub z_plus: f64,
    pub k: f64,
    pub h_minus: Option<f64>,
    pub h_plus: f64,
    pub x1: Option<f64>,
    pub x2: Option<f64>,
    pub x3: f64,
    pub x4: f64,
}

impl SigmaCandidates {
    /// The candidate value for a label, or None when that pair is complex.
    pub fn candidate(&self, label: CandidateLabel) -> Option<f64> {
        match label {
            CandidateLabel::X1 => self.x1,
            CandidateLabel::X2 => self.x2,
            CandidateLabel::X3 => Some(self.x3),
            CandidateLabel::X4 => Some(self.x4),
        }
    }

    /// All real candidates in label order.
    pub fn real_candidates(&self) -> Vec<(CandidateLabel, f64)> {
        CandidateLabel::ALL
            .iter()
            .filter_map(|&l| self.candidate(l).map(|x| (l, x)))
            .collect()
    }
}

/// Solves the variance quartic in closed form.
///
/// Fails with [`Ma2Error::InfeasibleAcf`] when the triple cannot come from
/// any MA(2) process: the spectrum-like products force s_minus * s_plus >= 0
/// and z_plus^2 >= 4k for every genuine triple, so a material violation of
/// either is a hard rejection rather than a numerical accident.
pub fn sigma_candidates(acf: &AcfTriple) -> Result<SigmaCandidates, Ma2Error> {
    let (g0, g1, g2) = (acf.gamma0(), acf.gamma1(), acf.gamma2());
    let clamp_tol = tol::RADICAND_CLAMP_REL * g0 * g0;
    // Negative radicands within roundoff of zero are treated as exact zeros.
    // Anything more negative is reported as-is so the caller can distinguish
    // "complex pair" from "infeasible input".
    let clamped = |r: f64| {
        if (-clamp_tol..0.0).contains(&r) {
            0.0
        } else {
            r
        }
    };

    let s_minus = g0 - 2.0 * g1 + 2.0 * g2;
    let s_plus = g0 + 2.0 * g1 + 2.0 * g2;
    let g_sq = clamped(s_minus * s_plus);
    if g_sq < 0.0 {
        return Err(Ma2Error::InfeasibleAcf {
            reason: format!(
                "spectral density is negative at z = 1 or z = -1 \
                 (gamma0 - 2*gamma1 + 2*gamma2 = {s_minus}, \
                 gamma0 + 2*gamma1 + 2*gamma2 = {s_plus})"
            ),
        });
    }
    // Root the factors separately when both are admissible. The
    // reciprocal-root boundary theta2 = -1 makes each factor a perfect
    // square, so on exactly representable inputs this form keeps g, and
    // through it h_minus, exactly zero, where rounding the product first
    // would not.
    let g = if s_minus >= 0.0 && s_plus >= 0.0 {
        s_minus.sqrt() * s_plus.sqrt()
    } else {
        g_sq.sqrt()
    };

    // gamma0 - 2*gamma2 >= 0 for every genuine triple, so this sum is
    // cancellation free and z_plus carries the larger magnitude. The smaller
    // quadratic root then comes from the product of the pair sums,
    // z_minus * z_plus = gamma1^2 - 2*gamma0*gamma2.
    let z_plus = 0.5 * (g0 - 2.0 * g2 + g);
    if z_plus <= 0.0 {
        return Err(Ma2Error::InfeasibleAcf {
            reason: format!("largest candidate pair sum is not positive (z_plus = {z_plus})"),
        });
    }
    let z_minus = (g1 * g1 - 2.0 * g0 * g2) / z_plus;

    let k = g2 * g2;
    let h_plus_sq = clamped(z_plus * z_plus - 4.0 * k);
    if h_plus_sq < 0.0 {
        return Err(Ma2Error::InfeasibleAcf {
            reason: format!(
                "dominant candidate pair would be complex \
                 (z_plus^2 - 4*gamma2^2 = {h_plus_sq})"
            ),
        });
    }
    let h_plus = h_plus_sq.sqrt();
    let x4 = 0.5 * (z_plus + h_plus);
    // x4 inherits positivity from z_plus; the guard is kept for safety.
    if x4 <= 0.0 || !x4.is_finite() {
        return Err(Ma2Error::InfeasibleAcf {
            reason: format!("dominant variance candidate is not positive (x4 = {x4})"),
        });
    }
    let x3 = if h_plus == 0.0 { x4 } else { k / x4 };

    let h_minus_sq = clamped(z_minus * z_minus - 4.0 * k);
    let (h_minus, x1, x2) = if h_minus_sq < 0.0 {
        (None, None, None)
    } else {
        let h_minus = h_minus_sq.sqrt();
        // Split without cancellation: take the half whose terms agree in
        // sign, recover the other from the pair product x1*x2 = k. A real
        // pair with z_minus == 0 would need k <= 0, so the divisions are
        // safe.
        let (x1, x2) = if h_minus == 0.0 {
            let x = 0.5 * z_minus;
            (x, x)
        } else if z_minus >= 0.0 {
            let x2 = 0.5 * (z_minus + h_minus);
            (k / x2, x2)
        } else {
            let x1 = 0.5 * (z_minus - h_minus);
            (x1, k / x1)
        };
        (Some(h_minus), Some(x1), Some(x2))
    };

    Ok(SigmaCandidates {
        s_minus,
        s_plus,
        g,
        z_minus,
        z_plus,
        k,
        h_minus,
        h_plus,
        x1,
        x2,
        x3,
        x4,
    })
}

/// Recovers (theta1, theta2) for one labeled candidate through the closed
/// forms
///
/// ```text
/// theta1 = -4*gamma1 / (gamma0 + 2*gamma2 + sg*g + sh*2*h),
/// theta2 = -4*gamma2 / (gamma0 - 2*gamma2 + sg*g + sh*2*h),
/// ```
///
/// where h is h_minus for x1 and x2, h_plus for x3 and x4, and the signs
/// (sg, sh) are (-,-), (-,+), (+,-), (+,+) for x1 through x4. The
/// denominators equal 4*(x + gamma2) and 4*x for the labeled candidate, so
/// these forms agree with [`AcfTriple::theta_given_sigma2`] at that
/// candidate.
pub fn theta_from_candidate(
    acf: &AcfTriple,
    label: CandidateLabel,
    candidates: &SigmaCandidates,
) -> Result<(f64, f64), Ma2Error> {
    let (x, h, gsign, hsign) = match label {
        CandidateLabel::X1 => (candidates.x1, candidates.h_minus, -1.0, -1.0),
        CandidateLabel::X2 => (candidates.x2, candidates.h_minus, -1.0, 1.0),
        CandidateLabel::X3 => (Some(candidates.x3), Some(candidates.h_plus), 1.0, -1.0),
        CandidateLabel::X4 => (Some(candidates.x4), Some(candidates.h_plus), 1.0, 1.0),
    };
    let (Some(x), Some(h)) = (x, h) else {
        return Err(Ma2Error::CandidateInadmissible {
            label,
            reason: "the candidate pair is complex",
        });
    };
    if x <= 0.0 {
        return Err(Ma2Error::CandidateInadmissible {
            label,
            reason: "the candidate is not a positive variance",
        });
    }

    let (g0, g1, g2) = (acf.gamma0(), acf.gamma1(), acf.gamma2());
    let d1 = g0 + 2.0 * g2 + gsign * candidates.g + hsign * 2.0 * h;
    let d2 = g0 - 2.0 * g2 + gsign * candidates.g + hsign * 2.0 * h;
    if d1 == 0.0 {
        // 4*(x + gamma2) = 0 means theta2 would be exactly one, where theta1
        // is not determined by the autocovariances through this route.
        return Err(Ma2Error::CandidateInadmissible {
            label,
            reason: "theta1 denominator vanishes",
        });
    }
    if d2 == 0.0 {
        return Err(Ma2Error::CandidateInadmissible {
            label,
            reason: "theta2 denominator vanishes",
        });
    }
    let theta1 = -4.0 * g1 / d1;
    let theta2 = -4.0 * g2 / d2;
    if !(theta1.is_finite() && theta2.is_finite()) {
        return Err(Ma2Error::CandidateInadmissible {
            label,
            reason: "recovered parameters are not finite",
        });
    }
    Ok((theta1, theta2))
}

/// The invertible parameterization of a triple, along with the full
/// candidate set it was selected from and the reconstruction residual.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentResult {
    pub invertible: Ma2Params,
    pub candidates: SigmaCandidates,
    /// max_h |gamma_h(recovered) - gamma_h(input)| / gamma0(input).
    pub residual: f64,
}

/// Recovers the unique invertible MA(2) parameterization of a triple.
///
/// Returns [`Ma2Error::NoInvertibleVersion`] when the triple lies on an
/// invertibility boundary (a characteristic root on the unit circle), where
/// every parameterization is boundary and none is invertible, and
/// [`Ma2Error::InfeasibleAcf`] when no MA(2) process has this triple at all.
pub fn identify_invertible(acf: &AcfTriple) -> Result<IdentResult, Ma2Error> {
    let candidates = sigma_candidates(acf)?;

    // Boundary screens. Roundoff in g and h_plus is of order sqrt(machine
    // epsilon) times the data scale near the boundary set, which a direct
    // tolerance on the recovered parameters cannot see reliably. The factors
    // s_minus, s_plus and the radicand z_plus^2 - 4k are computed to full
    // relative accuracy, so a relative zero test on them detects the
    // boundary lines: s_plus = 0 is a unit root at +1, s_minus = 0 a unit
    // root at -1, and z_plus^2 = 4k a complex conjugate unit-modulus pair.
    let s_scale = acf.gamma0() + 2.0 * acf.gamma1().abs() + 2.0 * acf.gamma2().abs();
    if candidates.s_minus.abs().min(candidates.s_plus.abs()) <= tol::BOUNDARY_SCREEN_REL * s_scale {
        return Err(Ma2Error::NoInvertibleVersion);
    }
    let radicand = candidates.z_plus * candidates.z_plus - 4.0 * candidates.k;
    let r_scale = candidates.z_plus * candidates.z_plus + 4.0 * candidates.k;
    if radicand.abs() <= tol::BOUNDARY_SCREEN_REL * r_scale {
        return Err(Ma2Error::NoInvertibleVersion);
    }

    let (theta1, theta2) = theta_from_candidate(acf, CandidateLabel::X4, &candidates)?;
    let invertible = Ma2Params::new(theta1, theta2, candidates.x4)?;

    let back = invertible.acf();
    let residual = (back.gamma0() - acf.gamma0())
        .abs()
        .max((back.gamma1() - acf.gamma1()).abs())
        .max((back.gamma2() - acf.gamma2()).abs())
        / acf.gamma0();
    if residual > tol::MAX_RESIDUAL {
        return Err(Ma2Error::InfeasibleAcf {
            reason: format!(
                "no MA(2) process reproduces the triple; best reconstruction \
                 misses by a relative {residual:.3e}"
            ),
        });
    }

    match invertible.invertibility() {
        Invertibility::Invertible => Ok(IdentResult {
            invertible,
            candidates,
            residual,
        }),
        Invertibility::Boundary(_) => Err(Ma2Error::NoInvertibleVersion),
        Invertibility::NonInvertible => Err(Ma2Error::InfeasibleAcf {
            reason: "recovered parameters fall outside the invertibility region".to_string(),
        }),
    }
}
