//! Region classification of the (theta1, theta2) plane and the choice of
//! the correct variance candidate per region.
//!
//! Four predicates partition the plane away from their equality sets:
//!
//! ```text
//! A: theta2 - theta1 < 1      B: theta2 + theta1 < 1
//! C: theta2^2 < 1             D: theta1^2 + 4*theta2 > 0
//! ```
//!
//! A, B and C delimit the invertibility triangle; D separates real from
//! complex characteristic roots. Each combination of strict outcomes is a
//! numbered case, and each case names the quartic candidate that recovers
//! the generating process's variance: the invertible region (case 1) takes
//! x4, the regions across one straight edge (cases 2 and 3) take x2, the
//! regions below the triangle (cases 5 and 7) take x3, and the remaining
//! ones (cases 6 and 8) take x1. The combination "A and B both reversed
//! with C holding" would force theta2 > 1 and theta2^2 < 1 at once, so only
//! seven cases are realizable. On the segment theta2 = -1, |theta1| > 2 the
//! characteristic roots are mutual reciprocals and the small candidate pair
//! collapses: x1 = x2 is the correct variance there.

use std::fmt;

use crate::error::Ma2Error;
use crate::ident::{sigma_candidates, CandidateLabel};
use crate::model::{boundary_tag, Ma2Params};
use crate::tol;

/// Outcome of one strict inequality: it holds, the strict reverse holds, or
/// the point sits on the equality set within tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ternary {
    Holds,
    Reversed,
    Boundary,
}

impl fmt::Display for Ternary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Ternary::Holds => "holds",
            Ternary::Reversed => "reversed",
            Ternary::Boundary => "boundary",
        };
        f.write_str(s)
    }
}

/// The region a parameter point falls in. Cases 1 and 5 are split by D
/// (real versus complex characteristic roots); in every other realizable
/// case D holds automatically. `Boundary` covers both the unit-root lines
/// and the theta2^2 = 1 equality set that separates the case table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseId {
    Case1a,
    Case1b,
    Case2,
    Case3,
    Case5a,
    Case5b,
    Case6,
    Case7,
    Case8,
    Boundary,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseId::Case1a => "1a",
            CaseId::Case1b => "1b",
            CaseId::Case2 => "2",
            CaseId::Case3 => "3",
            CaseId::Case5a => "5a",
            CaseId::Case5b => "5b",
            CaseId::Case6 => "6",
            CaseId::Case7 => "7",
            CaseId::Case8 => "8",
            CaseId::Boundary => "boundary",
        };
        f.write_str(s)
    }
}

/// Which variance candidate a region designates as correct. `X1EqualsX2`
/// marks the reciprocal-root segment theta2 = -1, |theta1| > 2, where the
/// small pair is a double root and either member is the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaChoice {
    X1,
    X2,
    X3,
    X4,
    X1EqualsX2,
}

impl SigmaChoice {
    /// The candidate label to look up; the double-root marker resolves to
    /// x1 (equal to x2 there).
    pub fn label(&self) -> CandidateLabel {
        match self {
            SigmaChoice::X1 | SigmaChoice::X1EqualsX2 => CandidateLabel::X1,
            SigmaChoice::X2 => CandidateLabel::X2,
            SigmaChoice::X3 => CandidateLabel::X3,
            SigmaChoice::X4 => CandidateLabel::X4,
        }
    }
}

impl fmt::Display for SigmaChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SigmaChoice::X1 => "x1",
            SigmaChoice::X2 => "x2",
            SigmaChoice::X3 => "x3",
            SigmaChoice::X4 => "x4",
            SigmaChoice::X1EqualsX2 => "x1=x2",
        };
        f.write_str(s)
    }
}

/// Full classification of a parameter point: the case, the four predicate
/// outcomes, and the designated candidate when the table names one.
/// `correct_sigma` is absent on the unit-root lines and on the
/// theta2 = +1 equality set, which the case table does not cover.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionCase {
    pub case_id: CaseId,
    pub a_holds: Ternary,
    pub b_holds: Ternary,
    pub c_holds: Ternary,
    pub d_holds: Ternary,
    pub correct_sigma: Option<SigmaChoice>,
}

fn ternary(value: f64, eps: f64) -> Ternary {
    if value.abs() <= eps {
        Ternary::Boundary
    } else if value > 0.0 {
        Ternary::Holds
    } else {
        Ternary::Reversed
    }
}

/// Classifies a parameter point into the case table.
///
/// Points on the unit-root lines and on the theta2^2 = 1 equality set
/// return `CaseId::Boundary` rather than a numbered case; of those, only
/// the reciprocal-root segment theta2 = -1, |theta1| > 2 carries a
/// designated candidate (x1 = x2).
pub fn classify_region(theta1: f64, theta2: f64) -> Result<RegionCase, Ma2Error> {
    if !(theta1.is_finite() && theta2.is_finite()) {
        return Err(Ma2Error::NonFiniteInput);
    }
    if theta2 == 0.0 {
        return Err(Ma2Error::DegenerateTheta2);
    }

    // One tolerance scale for A, B and C keeps the outcomes consistent:
    // whenever A and B are both strictly reversed, theta2 > 1 + eps follows
    // and C is strictly reversed too, so the impossible combination cannot
    // appear even by rounding.
    let eps = tol::BOUNDARY_REL * (1.0 + theta1.abs() + theta2.abs());
    let a_holds = ternary(1.0 + theta1 - theta2, eps);
    let b_holds = ternary(1.0 - theta1 - theta2, eps);
    let c_holds = ternary(1.0 - theta2.abs(), eps);
    let d = theta1 * theta1 + 4.0 * theta2;
    let d_holds = ternary(
        d,
        tol::BOUNDARY_REL * (1.0 + theta1 * theta1 + 4.0 * theta2.abs()),
    );

    let boundary = |correct_sigma| RegionCase {
        case_id: CaseId::Boundary,
        a_holds,
        b_holds,
        c_holds,
        d_holds,
        correct_sigma,
    };

    if boundary_tag(theta1, theta2).is_some() {
        return Ok(boundary(None));
    }
    if c_holds == Ternary::Boundary {
        // theta2 = -1 off the lines means |theta1| > 2: reciprocal real
        // roots, double candidate. theta2 = +1 off the lines is the gap the
        // table does not name a candidate for.
        let correct = if theta2 < 0.0 {
            Some(SigmaChoice::X1EqualsX2)
        } else {
            None
        };
        return Ok(boundary(correct));
    }

    use Ternary::{Holds as H, Reversed as R};
    let (case_id, choice) = match (a_holds, b_holds, c_holds) {
        (H, H, H) => match d_holds {
            R => (CaseId::Case1b, SigmaChoice::X4),
            // The equality set of D inside the triangle is measure zero;
            // fold it into the real-root side.
            _ => (CaseId::Case1a, SigmaChoice::X4),
        },
        (R, H, H) => (CaseId::Case2, SigmaChoice::X2),
        (H, R, H) => (CaseId::Case3, SigmaChoice::X2),
        (R, R, H) => unreachable!("A and B reversed force theta2 > 1, contradicting C"),
        (H, H, R) => match d_holds {
            R => (CaseId::Case5b, SigmaChoice::X3),
            _ => (CaseId::Case5a, SigmaChoice::X3),
        },
        (R, H, R) => (CaseId::Case6, SigmaChoice::X1),
        (R, R, R) => (CaseId::Case7, SigmaChoice::X3),
        (H, R, R) => (CaseId::Case8, SigmaChoice::X1),
        // A or B on its equality set is exactly a unit-root line, and the
        // C equality set returns early too; none of them reach this match.
        (Ternary::Boundary, _, _) | (_, Ternary::Boundary, _) | (_, _, Ternary::Boundary) => {
            unreachable!("boundary sets are handled before the case match")
        }
    };
    Ok(RegionCase {
        case_id,
        a_holds,
        b_holds,
        c_holds,
        d_holds,
        correct_sigma: Some(choice),
    })
}

/// The condensed four-way rule, equivalent to the case table wherever both
/// are defined: with u = |1 - theta2| - |theta1| and v = |theta2| - 1,
///
/// ```text
/// u > 0, v < 0  ->  x4        u > 0, v > 0  ->  x3
/// u < 0, v < 0  ->  x2        u < 0, v > 0  ->  x1
/// ```
///
/// On v = 0 only theta2 = -1 (where x1 = x2) has an answer; theta2 = +1
/// points are reported as unclassifiable. u = 0 is exactly the unit-root
/// lines, reported as on-boundary.
pub fn simplified_rule(theta1: f64, theta2: f64) -> Result<SigmaChoice, Ma2Error> {
    if !(theta1.is_finite() && theta2.is_finite()) {
        return Err(Ma2Error::NonFiniteInput);
    }
    if theta2 == 0.0 {
        return Err(Ma2Error::DegenerateTheta2);
    }
    if let Some(tag) = boundary_tag(theta1, theta2) {
        return Err(Ma2Error::OnBoundary {
            theta1,
            theta2,
            tag,
        });
    }

    let eps = tol::BOUNDARY_REL * (1.0 + theta1.abs() + theta2.abs());
    let u = (1.0 - theta2).abs() - theta1.abs();
    let v = theta2.abs() - 1.0;
    if v.abs() <= eps {
        return if theta2 < 0.0 {
            // Reciprocal-root segment; the double candidate x1 = x2.
            Ok(SigmaChoice::X1)
        } else {
            Err(Ma2Error::Unclassifiable { theta1, theta2 })
        };
    }
    // |1 - theta2| = |theta1| factors as the product of the two unit-root
    // line equations, so the boundary check above has already excluded a
    // vanishing u.
    Ok(if u > 0.0 {
        if v < 0.0 {
            SigmaChoice::X4
        } else {
            SigmaChoice::X3
        }
    } else if v < 0.0 {
        SigmaChoice::X2
    } else {
        SigmaChoice::X1
    })
}

/// Recovers the generating variance of `p` from its own autocovariances by
/// looking up the candidate its region designates.
///
/// For the theta2 = +1 gap in the table, falls back to testing each real
/// positive candidate: the one whose implied theta2 matches `p` and whose
/// reconstruction reproduces the autocovariances is returned.
pub fn correct_sigma2(p: &Ma2Params) -> Result<f64, Ma2Error> {
    let region = classify_region(p.theta1(), p.theta2())?;
    if region.case_id == CaseId::Boundary {
        if let Some(tag) = boundary_tag(p.theta1(), p.theta2()) {
            return Err(Ma2Error::OnBoundary {
                theta1: p.theta1(),
                theta2: p.theta2(),
                tag,
            });
        }
    }

    let acf = p.acf();
    let candidates = sigma_candidates(&acf)?;
    let Some(choice) = region.correct_sigma else {
        // theta2 = +1 off the lines. No table entry names a candidate here, so
        // test each real positive x directly: keep the generator's thetas, swap
        // in x for the variance, and compare the rebuilt autocovariances. On
        // this set x1 = x2 is an analytic double root that rounding splits by
        // O(sqrt(eps)), hence the sqrt(eps)-aware ceiling. The other two
        // candidates are the variances of the theta1 = 0 processes sharing
        // these autocovariances, so they miss gamma0 by about |theta1|; the
        // label order tries x1 and x2 first in any case.
        for (_, x) in candidates.real_candidates() {
            if x <= 0.0 {
                continue;
            }
            let trial = Ma2Params::new(p.theta1(), p.theta2(), x)?;
            let back = trial.acf();
            let residual = (back.gamma0() - acf.gamma0())
                .abs()
                .max((back.gamma1() - acf.gamma1()).abs())
                .max((back.gamma2() - acf.gamma2()).abs())
                / acf.gamma0();
            if residual <= tol::GAP_MATCH_REL {
                return Ok(x);
            }
        }
        return Err(Ma2Error::Unclassifiable {
            theta1: p.theta1(),
            theta2: p.theta2(),
        });
    };

    let label = choice.label();
    candidates
        .candidate(label)
        .filter(|&x| x > 0.0)
        .ok_or(Ma2Error::CandidateInadmissible {
            label,
            reason: "the designated candidate is not a positive real variance",
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::AcfTriple;
    use proptest::prelude::*;

    fn rel(got: f64, want: f64) -> f64 {
        (got - want).abs() / want.abs().max(1e-300)
    }

    #[test]
    fn numbered_cases_and_choices() {
        use Ternary::{Holds as H, Reversed as R};
        // (theta1, theta2, case, choice, (a, b, c)).
        let table = [
            (0.5, 0.3, CaseId::Case1a, SigmaChoice::X4, (H, H, H)),
            (0.5, -0.3, CaseId::Case1b, SigmaChoice::X4, (H, H, H)),
            (-2.5, 0.5, CaseId::Case2, SigmaChoice::X2, (R, H, H)),
            (2.5, 0.5, CaseId::Case3, SigmaChoice::X2, (H, R, H)),
            (3.1, -2.25, CaseId::Case5a, SigmaChoice::X3, (H, H, R)),
            (0.5, -2.0, CaseId::Case5b, SigmaChoice::X3, (H, H, R)),
            (-3.0, -1.5, CaseId::Case6, SigmaChoice::X1, (R, H, R)),
            (0.5, 2.0, CaseId::Case7, SigmaChoice::X3, (R, R, R)),
            (3.0, -1.5, CaseId::Case8, SigmaChoice::X1, (H, R, R)),
        ];
        for (t1, t2, case, choice, (a, b, c)) in table {
            let r = classify_region(t1, t2).unwrap();
            assert_eq!(r.case_id, case, "case for ({t1}, {t2})");
            assert_eq!(r.correct_sigma, Some(choice), "choice for ({t1}, {t2})");
            assert_eq!((r.a_holds, r.b_holds, r.c_holds), (a, b, c));
            // D holds automatically outside the split cases.
            if !matches!(case, CaseId::Case1b | CaseId::Case5b) {
                assert_eq!(r.d_holds, Ternary::Holds);
            }
        }
    }

    #[test]
    fn boundary_and_gap_points() {
        // Unit-root lines.
        let r = classify_region(0.5, 0.5).unwrap();
        assert_eq!(r.case_id, CaseId::Boundary);
        assert_eq!(r.correct_sigma, None);
        assert_eq!(r.b_holds, Ternary::Boundary);

        let r = classify_region(1.0, -1.0).unwrap();
        assert_eq!(r.case_id, CaseId::Boundary);
        assert_eq!(r.correct_sigma, None);
        assert_eq!(r.c_holds, Ternary::Boundary);

        // Reciprocal-root segment: a named double candidate.
        let r = classify_region(3.0, -1.0).unwrap();
        assert_eq!(r.case_id, CaseId::Boundary);
        assert_eq!(r.correct_sigma, Some(SigmaChoice::X1EqualsX2));
        assert_eq!(r.c_holds, Ternary::Boundary);

        // theta2 = +1 off the lines: no candidate named.
        let r = classify_region(1.5, 1.0).unwrap();
        assert_eq!(r.case_id, CaseId::Boundary);
        assert_eq!(r.correct_sigma, None);
        assert_eq!(r.c_holds, Ternary::Boundary);

        assert_eq!(
            classify_region(0.5, 0.0).unwrap_err(),
            Ma2Error::DegenerateTheta2
        );
    }

    #[test]
    fn simplified_rule_examples() {
        assert_eq!(simplified_rule(0.5, 0.3).unwrap(), SigmaChoice::X4);
        assert_eq!(simplified_rule(0.5, 2.0).unwrap(), SigmaChoice::X3);
        assert_eq!(simplified_rule(2.5, 0.5).unwrap(), SigmaChoice::X2);
        assert_eq!(simplified_rule(-3.0, -1.5).unwrap(), SigmaChoice::X1);
        // Reciprocal-root segment resolves to x1 (equal to x2 there).
        assert_eq!(simplified_rule(3.0, -1.0).unwrap(), SigmaChoice::X1);
        // theta2 = +1 off the lines has no rule.
        assert!(matches!(
            simplified_rule(1.5, 1.0).unwrap_err(),
            Ma2Error::Unclassifiable { .. }
        ));
        // Unit-root lines are rejected up front.
        assert!(matches!(
            simplified_rule(0.5, 0.5).unwrap_err(),
            Ma2Error::OnBoundary { .. }
        ));
        assert!(matches!(
            simplified_rule(1.0, -1.0).unwrap_err(),
            Ma2Error::OnBoundary { .. }
        ));
    }

    #[test]
    fn correct_sigma2_round_trips() {
        // Invertible: x4 is the generating variance.
        let p = Ma2Params::new(0.5, 0.3, 1.0).unwrap();
        assert!(rel(correct_sigma2(&p).unwrap(), 1.0) < 1e-12);

        // Case 7: x3.
        let p = Ma2Params::new(0.5, 2.0, 1.0).unwrap();
        assert!(rel(correct_sigma2(&p).unwrap(), 1.0) < 1e-12);

        // Reciprocal roots: the double candidate, exactly.
        let p = Ma2Params::new(3.0, -1.0, 1.0).unwrap();
        assert_eq!(correct_sigma2(&p).unwrap(), 1.0);

        // theta2 = +1 fallback: candidates of (8.5, 0, -2) are
        // {2, 2, 0.5, 8} and only x = 2 implies theta2 = 1.
        let p = Ma2Params::new(1.5, 1.0, 2.0).unwrap();
        assert_eq!(correct_sigma2(&p).unwrap(), 2.0);

        // On a unit-root line the generating variance is not recoverable.
        let p = Ma2Params::new(0.5, 0.5, 1.0).unwrap();
        assert!(matches!(
            correct_sigma2(&p).unwrap_err(),
            Ma2Error::OnBoundary { .. }
        ));
    }

    #[test]
    fn display_labels() {
        assert_eq!(CaseId::Case5a.to_string(), "5a");
        assert_eq!(CaseId::Boundary.to_string(), "boundary");
        assert_eq!(SigmaChoice::X1EqualsX2.to_string(), "x1=x2");
        assert_eq!(Ternary::Reversed.to_string(), "reversed");
    }

    fn off_table_boundaries() -> impl Strategy<Value = (f64, f64)> {
        (-4.0..4.0_f64, prop_oneof![-4.0..-1e-3_f64, 1e-3..4.0_f64]).prop_filter(
            "away from table boundaries",
            |&(t1, t2)| {
                (1.0 - t1 - t2).abs() > 1e-3
                    && (1.0 + t1 - t2).abs() > 1e-3
                    && (t2.abs() - 1.0).abs() > 1e-3
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1024))]

        // The impossible predicate combination never appears, and D holds
        // automatically outside the split cases.
        #[test]
        fn case_four_never_occurs(
            t1 in -6.0..6.0_f64,
            t2 in prop_oneof![-6.0..-1e-6_f64, 1e-6..6.0_f64],
        ) {
            let r = classify_region(t1, t2).unwrap();
            use Ternary::Reversed as R;
            if r.a_holds == R && r.b_holds == R {
                prop_assert_eq!(r.c_holds, R);
            }
            if matches!(
                r.case_id,
                CaseId::Case2 | CaseId::Case3 | CaseId::Case6 | CaseId::Case7 | CaseId::Case8
            ) {
                prop_assert_eq!(r.d_holds, Ternary::Holds);
            }
        }

        // The condensed rule and the case table always designate the same
        // candidate where both are defined.
        #[test]
        fn simplified_rule_agrees_with_case_table(
            (t1, t2) in off_table_boundaries(),
        ) {
            let table = classify_region(t1, t2).unwrap().correct_sigma.unwrap();
            let condensed = simplified_rule(t1, t2).unwrap();
            prop_assert_eq!(table.label(), condensed.label());
        }

        // The designated candidate recovers the generating variance across
        // all realizable cases.
        #[test]
        fn designated_candidate_recovers_sigma2(
            (t1, t2) in off_table_boundaries(),
            ls in -2.0..2.0_f64,
        ) {
            let s2 = 10f64.powf(ls);
            let p = Ma2Params::new(t1, t2, s2).unwrap();
            let got = correct_sigma2(&p).unwrap();
            prop_assert!((got - s2).abs() <= 1e-9 * s2);
        }

        // A non-invertible process is never assigned x4; x4 is the largest
        // candidate and belongs to the invertible version alone.
        #[test]
        fn noninvertible_never_designates_x4(
            (t1, t2) in off_table_boundaries(),
        ) {
            let r = classify_region(t1, t2).unwrap();
            if r.case_id != CaseId::Case1a && r.case_id != CaseId::Case1b {
                prop_assert!(r.correct_sigma != Some(SigmaChoice::X4));
            }
        }

        // The theta2 = +1 fallback recovers sigma2 on the gap set.
        #[test]
        fn gap_fallback_recovers_sigma2(
            t1 in prop_oneof![-3.0..-0.05_f64, 0.05..3.0_f64],
            ls in -1.0..1.0_f64,
        ) {
            let s2 = 10f64.powf(ls);
            let p = Ma2Params::new(t1, 1.0, s2).unwrap();
            let got = correct_sigma2(&p).unwrap();
            // The matched candidate is half of a rounding-split double root,
            // so it carries sqrt(eps)-scale error rather than 1e-9.
            prop_assert!((got - s2).abs() <= 1e-6 * s2);
        }
    }

    #[test]
    fn rank_of_designated_candidate() {
        // Sorted candidate ranks per case: 1a largest, 2 and 3 second
        // largest, 6 and 8 third largest, 5a and 7 smallest.
        let checks = [
            (0.5, 0.3, 3),
            (-2.5, 0.5, 2),
            (2.5, 0.5, 2),
            (3.1, -2.25, 0),
            (-3.0, -1.5, 1),
            (0.5, 2.0, 0),
            (3.0, -1.5, 1),
        ];
        for (t1, t2, rank) in checks {
            let p = Ma2Params::new(t1, t2, 1.3).unwrap();
            let got = correct_sigma2(&p).unwrap();
            let c = sigma_candidates(&p.acf()).unwrap();
            let mut xs: Vec<f64> = c.real_candidates().iter().map(|&(_, x)| x).collect();
            xs.sort_by(f64::total_cmp);
            assert_eq!(xs.len(), 4, "four real candidates at ({t1}, {t2})");
            assert!(
                rel(xs[rank], got) < 1e-12,
                "rank {rank} at ({t1}, {t2}): sorted {xs:?}, got {got}"
            );
        }
    }

    #[test]
    fn fallback_is_consistent_with_shared_acf() {
        // Both (1.5, 1, 2) and its mirror share the triple (8.5, 0, -2);
        // the fallback still recovers each generator's variance because
        // theta2 matching does not involve theta1.
        let a = AcfTriple::new(8.5, 0.0, -2.0).unwrap();
        for t1 in [1.5, -1.5] {
            let p = Ma2Params::new(t1, 1.0, 2.0).unwrap();
            let b = p.acf();
            assert!(rel(b.gamma0(), a.gamma0()) < 1e-15);
            assert!(b.gamma1().abs() < 1e-15);
            assert_eq!(correct_sigma2(&p).unwrap(), 2.0);
        }
    }
}
