//! Independent audits of claimed equilibria and fake-payoff constructions.
//!
//! Everything here re-derives its answers from the equilibrium definition
//! using only the game and solver primitives in `ruse-core`, so it can
//! certify the output of the construction crates without sharing a line of
//! code with them. [`verify_induces`] checks a reported matrix against a
//! claimed profile, [`brute_force_sse_two_rows`] solves two-row games by
//! enumerating follower tie points along the one-dimensional strategy
//! segment, and [`inducibility_conditions_agree`] confirms that the two equivalent
//! membership conditions for enforceable targets agree on an instance.

use num_traits::{One, Zero};
use ruse_core::game::{GameError, MixedStrategy, PayoffMatrix, StrategyProfile};
use ruse_core::lp::{self, LpProblem};
use ruse_core::rational::{format_rational, ExtendedRational, Rational};
use ruse_core::sse::{self, SseResult};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("breakpoint enumeration needs exactly two rows, got {rows}")]
    UnsupportedDimension { rows: usize },
}

/// Outcome of auditing one claimed profile against a reported matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub target: StrategyProfile,
    /// The target is an equilibrium of (leader, fake).
    pub is_sse: bool,
    /// Uniqueness verdict, present only when it was requested.
    pub is_unique: Option<bool>,
    /// Equilibrium value of the reported game.
    pub sse_value: Rational,
    /// Best leader payoff per column under the reported best responses.
    pub per_column_values: Vec<ExtendedRational>,
    /// Human-readable description of every failed predicate.
    pub violated_checks: Vec<String>,
}

/// Audits whether `target` is an equilibrium of the game formed by the true
/// leader payoffs and a reported follower matrix, optionally demanding that
/// it is the only one.
pub fn verify_induces(
    leader: &PayoffMatrix,
    fake: &PayoffMatrix,
    target: &StrategyProfile,
    check_unique: bool,
) -> Result<VerificationReport, GameError> {
    let check = sse::is_sse(leader, fake, target)?;
    let equilibrium = sse::compute_sse(leader, fake)?;
    let mut violated = Vec::new();
    if !check.response_is_best {
        violated.push(
            "the target column is not a best response to the target strategy under the reported \
             payoffs"
                .to_string(),
        );
    }
    if check.leader_value != check.sse_value {
        violated.push(format!(
            "leader payoff {} at the target differs from the equilibrium value {}",
            format_rational(&check.leader_value),
            format_rational(&check.sse_value)
        ));
    }
    let is_unique = if check_unique {
        let unique = sse::is_unique_sse(leader, fake, target)?;
        if !unique {
            violated.push("the reported game has equilibria other than the target".to_string());
        }
        Some(unique)
    } else {
        None
    };
    Ok(VerificationReport {
        target: target.clone(),
        is_sse: check.holds,
        is_unique,
        sse_value: check.sse_value,
        per_column_values: equilibrium.per_column_values,
        violated_checks: violated,
    })
}

/// Follower payoff of column `col` at `(t, 1-t)` as the pair (slope,
/// intercept) in `t`.
fn column_line(matrix: &PayoffMatrix, col: usize) -> (Rational, Rational) {
    let top = matrix.entry(0, col);
    let bottom = matrix.entry(1, col);
    (top - bottom, bottom.clone())
}

/// Equilibrium of a two-row game by exact enumeration.
///
/// With two rows the strategy space is the segment `x = (t, 1-t)`, every
/// payoff is affine in `t`, and best responses change only where two
/// follower columns tie. Candidate points are the segment endpoints, all
/// pairwise tie points, and the midpoints of consecutive candidates; the
/// best leader payoff over candidates where a column responds is exact.
/// Ties are broken toward the smallest column, then the smallest `t`.
pub fn brute_force_sse_two_rows(
    leader: &PayoffMatrix,
    follower: &PayoffMatrix,
) -> Result<SseResult, VerifyError> {
    if leader.rows() != 2 {
        return Err(VerifyError::UnsupportedDimension { rows: leader.rows() });
    }
    if follower.rows() != leader.rows() || follower.cols() != leader.cols() {
        return Err(GameError::ShapeMismatch {
            leader_rows: leader.rows(),
            leader_cols: leader.cols(),
            follower_rows: follower.rows(),
            follower_cols: follower.cols(),
        }
        .into());
    }
    let n = leader.cols();
    let mut candidates = BTreeSet::new();
    candidates.insert(Rational::zero());
    candidates.insert(Rational::one());
    for a in 0..n {
        let (slope_a, intercept_a) = column_line(follower, a);
        for b in a + 1..n {
            let (slope_b, intercept_b) = column_line(follower, b);
            let gap = &slope_a - &slope_b;
            if gap.is_zero() {
                continue;
            }
            let t = (intercept_b - &intercept_a) / gap;
            if t >= Rational::zero() && t <= Rational::one() {
                candidates.insert(t);
            }
        }
    }
    let sorted: Vec<Rational> = candidates.into_iter().collect();
    let mut points = sorted.clone();
    for pair in sorted.windows(2) {
        points.push((&pair[0] + &pair[1]) / Rational::from_integer(2.into()));
    }
    points.sort();

    let mut per_column_values = vec![ExtendedRational::MinusInfinity; n];
    let mut best: Option<(Rational, usize, MixedStrategy)> = None;
    for t in points {
        let x = MixedStrategy::new(vec![t.clone(), Rational::one() - &t])
            .expect("candidates lie on the segment");
        for col in follower.best_responses(&x) {
            let value = leader.payoff(&x, col);
            if ExtendedRational::Finite(value.clone()) > per_column_values[col] {
                per_column_values[col] = ExtendedRational::Finite(value.clone());
            }
            let improves = match &best {
                None => true,
                Some((best_value, best_col, _)) => {
                    &value > best_value || (&value == best_value && col < *best_col)
                }
            };
            if improves {
                best = Some((value, col, x.clone()));
            }
        }
    }
    let (leader_value, col, strategy) = best.expect("the segment endpoints always respond");
    let follower_value = follower.payoff(&strategy, col);
    Ok(SseResult {
        profile: StrategyProfile::new(strategy, col),
        leader_value,
        follower_value,
        per_column_values,
    })
}

/// Leader maximin value by a direct program: the best payoff the leader can
/// guarantee against an adversarial column choice.
fn maximin_value(leader: &PayoffMatrix) -> Rational {
    let m = leader.rows();
    let mut lp = LpProblem::new(m + 1);
    let mut objective = vec![Rational::zero(); m + 1];
    objective[m] = Rational::one();
    lp.set_objective(objective);
    lp.set_free(m);
    let mut total = vec![Rational::one(); m];
    total.push(Rational::zero());
    lp.add_eq(total, Rational::one());
    for col in 0..leader.cols() {
        let mut row = leader.column(col);
        row.push(-Rational::one());
        lp.add_ge(row, Rational::zero());
    }
    lp::solve(&lp)
        .expect("guarantee program is well formed")
        .expect_optimal("guarantee program is feasible and bounded")
        .value
}

/// Best retaliation the other columns offer the leader over the strategies
/// that beat the target on its own column.
fn retaliation_value(leader: &PayoffMatrix, target: &StrategyProfile) -> ExtendedRational {
    let j = target.response;
    let c = leader.payoff(&target.strategy, j);
    let column_max = leader.column(j).into_iter().max().expect("matrices are nonempty");
    if column_max <= c {
        return ExtendedRational::MinusInfinity;
    }
    if leader.cols() == 1 {
        return ExtendedRational::PlusInfinity;
    }
    let m = leader.rows();
    let mut lp = LpProblem::new(m + 1);
    let mut objective = vec![Rational::zero(); m + 1];
    objective[m] = Rational::one();
    lp.set_objective(objective);
    lp.set_free(m);
    let mut total = vec![Rational::one(); m];
    total.push(Rational::zero());
    lp.add_eq(total, Rational::one());
    let mut ahead = leader.column(j);
    ahead.push(Rational::zero());
    lp.add_ge(ahead, c);
    for col in 0..leader.cols() {
        if col == j {
            continue;
        }
        let mut row = leader.column(col);
        row.push(-Rational::one());
        lp.add_ge(row, Rational::zero());
    }
    let value = lp::solve(&lp)
        .expect("retaliation program is well formed")
        .expect_optimal("a beating strategy exists, so the region is nonempty")
        .value;
    ExtendedRational::Finite(value)
}

/// Cross-checks the two characterizations of enforceable targets on one
/// instance: clearing the leader's maximin value must coincide with
/// clearing the best retaliation available over the deviation region. Both
/// sides are computed from scratch here; `false` always indicates a bug,
/// never a legitimate answer.
pub fn inducibility_conditions_agree(leader: &PayoffMatrix, target: &StrategyProfile) -> bool {
    let c = leader.payoff(&target.strategy, target.response);
    let cleared_maximin = c >= maximin_value(leader);
    let cleared_retaliation = ExtendedRational::Finite(c) >= retaliation_value(leader, target);
    cleared_maximin == cleared_retaliation
}

#[cfg(test)]
mod tests {
    use super::*;
    use ruse_core::rational::{rat, rint};
    use ruse_testkit::fixtures;

    fn matrix(rows: Vec<Vec<Rational>>) -> PayoffMatrix {
        PayoffMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn brute_force_finds_the_mixed_equilibrium() {
        let game = fixtures::mixing_2x2(rat(1, 2));
        let result = brute_force_sse_two_rows(game.leader(), game.follower().unwrap()).unwrap();
        assert_eq!(
            result.profile,
            StrategyProfile::new(MixedStrategy::new(vec![rat(1, 2), rat(1, 2)]).unwrap(), 0)
        );
        assert_eq!(result.leader_value, rat(1, 2));
        assert_eq!(result.follower_value, rat(1, 2));
        assert_eq!(
            result.per_column_values,
            vec![
                ExtendedRational::Finite(rat(1, 2)),
                ExtendedRational::Finite(rint(0)),
            ]
        );
    }

    #[test]
    fn brute_force_on_an_always_indifferent_report() {
        // Reported payoffs make the good column a best response everywhere
        // only at t = 0, collapsing the leader's value to 0 while the
        // follower collects 1.
        let leader = matrix(vec![vec![rint(1), rint(0)], vec![rint(0), rint(0)]]);
        let reported = matrix(vec![vec![rint(0), rint(1)], vec![rint(1), rint(1)]]);
        let result = brute_force_sse_two_rows(&leader, &reported).unwrap();
        assert_eq!(result.leader_value, rint(0));
        assert_eq!(result.follower_value, rint(1));
        assert_eq!(result.profile.response, 0);
        assert_eq!(result.profile.strategy, MixedStrategy::pure(2, 1));
    }

    #[test]
    fn brute_force_single_column_picks_the_better_row() {
        let leader = matrix(vec![vec![rint(3)], vec![rint(5)]]);
        let follower = matrix(vec![vec![rint(2)], vec![rint(2)]]);
        let result = brute_force_sse_two_rows(&leader, &follower).unwrap();
        assert_eq!(result.profile, StrategyProfile::new(MixedStrategy::pure(2, 1), 0));
        assert_eq!(result.leader_value, rint(5));
    }

    #[test]
    fn brute_force_rejects_other_shapes() {
        let game = fixtures::threat_3x3();
        let follower = matrix(vec![
            vec![rint(0), rint(0), rint(0)],
            vec![rint(0), rint(0), rint(0)],
            vec![rint(0), rint(0), rint(0)],
        ]);
        assert_eq!(
            brute_force_sse_two_rows(game.leader(), &follower).unwrap_err(),
            VerifyError::UnsupportedDimension { rows: 3 }
        );
    }

    #[test]
    fn dominant_report_induces_but_not_uniquely_on_a_tied_column() {
        let game = fixtures::tied_column_3x2();
        let fake = matrix(vec![
            vec![rint(1), rint(0)],
            vec![rint(1), rint(0)],
            vec![rint(1), rint(0)],
        ]);
        let target = StrategyProfile::new(MixedStrategy::pure(3, 2), 0);
        let report = verify_induces(game.leader(), &fake, &target, true).unwrap();
        assert!(report.is_sse);
        assert_eq!(report.is_unique, Some(false));
        assert_eq!(report.sse_value, rat(1, 4));
        assert_eq!(report.violated_checks.len(), 1);
    }

    #[test]
    fn failed_audit_names_each_broken_predicate() {
        let game = fixtures::mixing_2x2(rat(1, 2));
        let honest = game.follower().unwrap();
        // Column 1 responds fine at the pure top row but pays the leader 0
        // rather than the equilibrium 1/2, so exactly one check fails.
        let target = StrategyProfile::new(MixedStrategy::pure(2, 0), 1);
        let report = verify_induces(game.leader(), honest, &target, false).unwrap();
        assert!(!report.is_sse);
        assert_eq!(report.is_unique, None);
        assert_eq!(report.violated_checks.len(), 1);
        assert!(report.violated_checks[0].contains("differs from the equilibrium value"));

        // The pure top row with column 0 breaks both predicates at once.
        let doubly_wrong = StrategyProfile::new(MixedStrategy::pure(2, 0), 0);
        let report = verify_induces(game.leader(), honest, &doubly_wrong, false).unwrap();
        assert!(!report.is_sse);
        assert_eq!(report.violated_checks.len(), 2);
    }

    #[test]
    fn membership_conditions_agree_on_the_fixtures() {
        let threat = fixtures::threat_3x3();
        let target = StrategyProfile::new(
            MixedStrategy::new(vec![rat(1, 2), rat(1, 2), rint(0)]).unwrap(),
            0,
        );
        assert!(inducibility_conditions_agree(threat.leader(), &target));

        let margin = fixtures::strict_margin_3x2();
        let target = StrategyProfile::new(MixedStrategy::pure(3, 2), 0);
        assert!(inducibility_conditions_agree(margin.leader(), &target));

        // A target below the maximin value must fail both conditions, and
        // the check still reports agreement.
        let low = StrategyProfile::new(MixedStrategy::pure(3, 0), 0);
        assert!(inducibility_conditions_agree(threat.leader(), &low));
    }

    #[test]
    fn single_column_games_agree_too() {
        let leader = matrix(vec![vec![rint(1)], vec![rint(3)]]);
        let beatable = StrategyProfile::new(MixedStrategy::pure(2, 0), 0);
        assert!(inducibility_conditions_agree(&leader, &beatable));
        let unbeatable = StrategyProfile::new(MixedStrategy::pure(2, 1), 0);
        assert!(inducibility_conditions_agree(&leader, &unbeatable));
    }
}
