//! Shared samplers, error measures, and an independent root-finding oracle
//! for the integration suites.

use ma2::Ma2Params;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Margin kept from every region boundary when sampling parameter points.
pub const MARGIN: f64 = 1e-3;

/// One deterministic generator per sampling stream, so suites that share
/// samples regenerate identical points.
pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream)
}

/// Noise variance log-uniform over [0.01, 100].
pub fn log_uniform_sigma2(rng: &mut ChaCha8Rng) -> f64 {
    10f64.powf(rng.random_range(-2.0..2.0f64))
}

/// Uniform draw strictly inside the invertibility triangle, at least
/// `MARGIN` from each edge and with |theta2| > `MARGIN`.
pub fn sample_invertible(rng: &mut ChaCha8Rng) -> Ma2Params {
    loop {
        let t1 = rng.random_range(-2.0..2.0f64);
        let t2 = rng.random_range(-1.0..1.0f64);
        let inside = 1.0 + t1 - t2 > MARGIN && 1.0 - t1 - t2 > MARGIN && t2 + 1.0 > MARGIN;
        if inside && t2.abs() > MARGIN {
            let s2 = log_uniform_sigma2(rng);
            return Ma2Params::new(t1, t2, s2).unwrap();
        }
    }
}

/// Uniform draw over the non-invertible cases 2 through 8, rejecting points
/// within `MARGIN` of any case boundary (the three unit-root lines, both
/// |theta2| = 1 lines, the real/complex-root parabola, and theta2 = 0).
pub fn sample_noninvertible(rng: &mut ChaCha8Rng) -> Ma2Params {
    loop {
        let t1 = rng.random_range(-4.0..4.0f64);
        let t2 = rng.random_range(-3.0..3.0f64);
        let a = 1.0 + t1 - t2;
        let b = 1.0 - t1 - t2;
        let invertible = a > 0.0 && b > 0.0 && t2.abs() < 1.0;
        let clear = a.abs() > MARGIN
            && b.abs() > MARGIN
            && (t2 - 1.0).abs() > MARGIN
            && (t2 + 1.0).abs() > MARGIN
            && (t1 * t1 + 4.0 * t2).abs() > MARGIN
            && t2.abs() > MARGIN;
        if clear && !invertible {
            let s2 = log_uniform_sigma2(rng);
            return Ma2Params::new(t1, t2, s2).unwrap();
        }
    }
}

/// Relative error with an absolute floor of one, for quantities that may
/// legitimately sit near zero.
pub fn err_floor(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

/// Strict relative error, for quantities bounded away from zero.
pub fn err_rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

/// Roots of the monic quartic x^4 + c3*x^3 + c2*x^2 + c1*x + c0 by
/// Durand-Kerner iteration with a Newton polish, independent of every
/// closed form in the library.
pub fn quartic_roots(c3: f64, c2: f64, c1: f64, c0: f64) -> [Complex64; 4] {
    let eval = |x: Complex64| (((x + c3) * x + c2) * x + c1) * x + c0;
    let deriv = |x: Complex64| ((4.0 * x + 3.0 * c3) * x + 2.0 * c2) * x + c1;

    // Standard non-real, non-unit-modulus starting points.
    let s = Complex64::new(0.4, 0.9);
    let mut roots = [s, s * s, s * s * s, s * s * s * s];
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..4 {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..4 {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            moved = moved.max(step.norm());
        }
        let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
        if moved <= 1e-14 * scale {
            break;
        }
    }
    // A few Newton steps sharpen simple roots to machine precision; at a
    // double root they leave the sqrt(eps)-accurate iterate in place.
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let d = deriv(*r);
            if d.norm() > 0.0 {
                *r -= eval(*r) / d;
            }
        }
    }
    roots
}
