//! Which commitments a deceptive follower can make the leader play.
//!
//! Whatever the follower reports, the leader can always fall back on her
//! maximin strategy and guarantee herself the maximin value `M`, so no
//! reported matrix can trap her below it. That threshold turns out to be
//! the whole story: a profile `(x, j)` is *payoff-inducible*, meaning some
//! reported matrix has `(x, j)` among its equilibria, exactly when the
//! leader's payoff at `(x, j)` is at least `M`. The best the follower can
//! do is therefore to maximize its true payoff over the inducible set,
//! which [`optimal_inducible_profile`] does with one LP per column.
//!
//! Two auxiliary quantities drive the constructive half of that story. The
//! *restricted maximin* drops the target column from the leader's options;
//! when the target payoff clears it, a simple construction works. The
//! *threat value* is the worst the remaining columns can do to the leader
//! over the region where she would deviate to something better than
//! `u^L(x, j)`; its witness point and active columns feed the Farkas step
//! of the general construction.

use ruse_core::game::{Game, GameError, MixedStrategy, PayoffMatrix, StrategyProfile};
use ruse_core::lp::{self, LpProblem};
use ruse_core::rational::{ExtendedRational, Rational};
use num_traits::{One, Zero};

/// Leader's guaranteed value and a strategy achieving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximinResult {
    pub value: Rational,
    pub witness: MixedStrategy,
}

/// Maximin program over a column subset: maximize the worst column payoff.
/// Variables are the strategy plus one free variable for the floor.
fn maximin_lp(leader: &PayoffMatrix, excluded: Option<usize>) -> LpProblem {
    let m = leader.rows();
    let mut lp = LpProblem::new(m + 1);
    lp.set_free(m);
    let mut objective = vec![Rational::zero(); m + 1];
    objective[m] = Rational::one();
    lp.set_objective(objective);
    let mut simplex_row = vec![Rational::one(); m + 1];
    simplex_row[m] = Rational::zero();
    lp.add_eq(simplex_row, Rational::one());
    for col in 0..leader.cols() {
        if Some(col) == excluded {
            continue;
        }
        let mut coeffs: Vec<Rational> = leader.column(col).iter().map(|u| -u.clone()).collect();
        coeffs.push(Rational::one());
        lp.add_le(coeffs, Rational::zero());
    }
    lp
}

/// The leader's maximin value over all columns, with a witness strategy.
pub fn maximin(leader: &PayoffMatrix) -> MaximinResult {
    let lp = maximin_lp(leader, None);
    let solution = lp::solve(&lp)
        .expect("maximin program is well formed")
        .expect_optimal("maximin program is feasible and bounded");
    let witness = MixedStrategy::new(solution.point[..leader.rows()].to_vec())
        .expect("program constrains the strategy to the simplex");
    MaximinResult { value: solution.value, witness }
}

/// Maximin value when the leader must defend only against the columns
/// other than `excluded`; `PlusInfinity` when no column remains.
pub fn restricted_maximin(leader: &PayoffMatrix, excluded: usize) -> ExtendedRational {
    assert!(excluded < leader.cols(), "excluded column out of range");
    if leader.cols() == 1 {
        return ExtendedRational::PlusInfinity;
    }
    let lp = maximin_lp(leader, Some(excluded));
    let solution = lp::solve(&lp)
        .expect("restricted maximin program is well formed")
        .expect_optimal("restricted maximin program is feasible and bounded");
    ExtendedRational::Finite(solution.value)
}

/// Threat analysis for a target `(x, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreatAnalysis {
    /// Best floor the leader can hold with the other columns while staying
    /// in the closed region where column `j` pays her at least `u^L(x,j)`.
    /// `MinusInfinity` when that region's interior is empty, `PlusInfinity`
    /// when there are no other columns.
    pub value: ExtendedRational,
    /// Maximizer of the floor, when the value is finite.
    pub witness: Option<MixedStrategy>,
    /// Columns other than `j` whose payoff at the witness equals the value,
    /// ascending.
    pub active: Vec<usize>,
}

/// Strategies strictly better than the target for the leader on column `j`
/// exist iff the column's maximum over the simplex exceeds `u^L(x, j)`.
fn deviation_region_is_empty(leader: &PayoffMatrix, x: &MixedStrategy, j: usize) -> bool {
    let m = leader.rows();
    let mut lp = LpProblem::new(m);
    lp.set_objective(leader.column(j));
    lp.add_eq(vec![Rational::one(); m], Rational::one());
    let best = lp::solve(&lp)
        .expect("column maximum program is well formed")
        .expect_optimal("simplex maximum exists");
    best.value <= leader.payoff(x, j)
}

/// Computes the threat value for the target `(x, j)`; see
/// [`ThreatAnalysis`] for the meaning of the pieces.
pub fn threat_value(leader: &PayoffMatrix, x: &MixedStrategy, j: usize) -> ThreatAnalysis {
    assert_eq!(x.len(), leader.rows(), "strategy length vs matrix rows");
    assert!(j < leader.cols(), "target column out of range");
    if deviation_region_is_empty(leader, x, j) {
        return ThreatAnalysis { value: ExtendedRational::MinusInfinity, witness: None, active: vec![] };
    }
    if leader.cols() == 1 {
        return ThreatAnalysis { value: ExtendedRational::PlusInfinity, witness: None, active: vec![] };
    }
    let m = leader.rows();
    let target_value = leader.payoff(x, j);
    let mut lp = LpProblem::new(m + 1);
    lp.set_free(m);
    let mut objective = vec![Rational::zero(); m + 1];
    objective[m] = Rational::one();
    lp.set_objective(objective);
    let mut simplex_row = vec![Rational::one(); m + 1];
    simplex_row[m] = Rational::zero();
    lp.add_eq(simplex_row, Rational::one());
    let mut stay_ahead: Vec<Rational> = leader.column(j);
    stay_ahead.push(Rational::zero());
    lp.add_ge(stay_ahead, target_value);
    for col in 0..leader.cols() {
        if col == j {
            continue;
        }
        let mut coeffs: Vec<Rational> = leader.column(col).iter().map(|u| -u.clone()).collect();
        coeffs.push(Rational::one());
        lp.add_le(coeffs, Rational::zero());
    }
    let solution = lp::solve(&lp)
        .expect("threat program is well formed")
        .expect_optimal("closed deviation region is nonempty and payoffs are bounded");
    let witness = MixedStrategy::new(solution.point[..m].to_vec())
        .expect("program constrains the witness to the simplex");
    let active = (0..leader.cols())
        .filter(|&col| col != j && leader.payoff(&witness, col) == solution.value)
        .collect();
    ThreatAnalysis {
        value: ExtendedRational::Finite(solution.value),
        witness: Some(witness),
        active,
    }
}

/// A target profile is inducible iff the leader's payoff there is at least
/// her maximin value.
pub fn is_payoff_inducible(leader: &PayoffMatrix, target: &StrategyProfile) -> Result<bool, GameError> {
    validate_target(leader, target)?;
    let m = maximin(leader);
    Ok(leader.payoff(&target.strategy, target.response) >= m.value)
}

/// The follower's best inducible outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducibleOutcome {
    pub profile: StrategyProfile,
    /// True follower payoff at the profile.
    pub follower_value: Rational,
    /// Best follower payoff inducible with each column, ascending by column.
    pub per_column_values: Vec<Rational>,
}

/// Maximizes the follower's true payoff over all inducible profiles: one LP
/// per column, each over the region where the leader still clears her
/// maximin value. Ties pick the smallest column; the strategy is the
/// solver's vertex for that column.
pub fn optimal_inducible_profile(game: &Game) -> Result<InducibleOutcome, GameError> {
    let follower = game.follower_required()?;
    let leader = game.leader();
    let m = leader.rows();
    let maximin_value = maximin(leader).value;
    let mut per_column_values = Vec::with_capacity(leader.cols());
    let mut best: Option<(usize, MixedStrategy)> = None;
    for col in 0..leader.cols() {
        let mut lp = LpProblem::new(m);
        lp.set_objective(follower.column(col));
        lp.add_eq(vec![Rational::one(); m], Rational::one());
        lp.add_ge(leader.column(col), maximin_value.clone());
        let solution = lp::solve(&lp)
            .expect("inducibility program is well formed")
            .expect_optimal("maximin witness keeps every column feasible");
        let strategy = MixedStrategy::new(solution.point)
            .expect("program constrains the strategy to the simplex");
        if best.is_none() || solution.value > per_column_values[best.as_ref().unwrap().0] {
            best = Some((col, strategy));
        }
        per_column_values.push(solution.value);
    }
    let (col, strategy) = best.expect("games have at least one column");
    let follower_value = per_column_values[col].clone();
    Ok(InducibleOutcome {
        profile: StrategyProfile::new(strategy, col),
        follower_value,
        per_column_values,
    })
}

/// Best-response correspondence of the fabricated game, described without
/// constructing it.
///
/// Against strategies where the leader would gain over the target on
/// column `j`, the fake follower punishes by playing whichever other
/// column hurts her most; at the region's boundary the target column ties
/// with those; everywhere else the target column alone is the best
/// response. When no strategy beats the target on column `j`, the target
/// column is the best response everywhere.
pub fn br_p_response(
    leader: &PayoffMatrix,
    target: &StrategyProfile,
    y: &MixedStrategy,
) -> Result<Vec<usize>, GameError> {
    validate_target(leader, target)?;
    if y.len() != leader.rows() {
        return Err(GameError::StrategyLength { expected: leader.rows(), found: y.len() });
    }
    let j = target.response;
    if leader.cols() == 1 || deviation_region_is_empty(leader, &target.strategy, j) {
        return Ok(vec![j]);
    }
    let target_value = leader.payoff(&target.strategy, j);
    let y_value = leader.payoff(y, j);
    if y_value < target_value {
        return Ok(vec![j]);
    }
    let mut worst: Option<Rational> = None;
    let mut arg: Vec<usize> = Vec::new();
    for col in 0..leader.cols() {
        if col == j {
            continue;
        }
        let value = leader.payoff(y, col);
        match &worst {
            Some(w) if &value > w => {}
            Some(w) if &value == w => arg.push(col),
            _ => {
                worst = Some(value);
                arg = vec![col];
            }
        }
    }
    if y_value == target_value {
        arg.push(j);
        arg.sort_unstable();
    }
    Ok(arg)
}

/// Everything the fake-payoff construction needs to know about a target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducibilityCertificate {
    pub target: StrategyProfile,
    /// Leader payoff at the target.
    pub target_value: Rational,
    pub maximin: MaximinResult,
    /// Maximin with the target column removed.
    pub restricted: ExtendedRational,
    pub threat: ThreatAnalysis,
}

/// Gathers the maximin, restricted maximin, and threat analysis for one
/// target profile.
pub fn certify(leader: &PayoffMatrix, target: &StrategyProfile) -> Result<InducibilityCertificate, GameError> {
    validate_target(leader, target)?;
    let target_value = leader.payoff(&target.strategy, target.response);
    let maximin = maximin(leader);
    let restricted = restricted_maximin(leader, target.response);
    let threat = threat_value(leader, &target.strategy, target.response);
    Ok(InducibilityCertificate { target: target.clone(), target_value, maximin, restricted, threat })
}

fn validate_target(leader: &PayoffMatrix, target: &StrategyProfile) -> Result<(), GameError> {
    if target.strategy.len() != leader.rows() {
        return Err(GameError::StrategyLength { expected: leader.rows(), found: target.strategy.len() });
    }
    if target.response >= leader.cols() {
        return Err(GameError::ResponseOutOfRange { response: target.response, cols: leader.cols() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ruse_core::rational::{rat, rint};
    use ruse_testkit::fixtures;

    #[test]
    fn maximin_of_the_threat_fixture() {
        let game = fixtures::threat_3x3();
        let result = maximin(game.leader());
        assert_eq!(result.value, rat(1, 2));
        assert_eq!(result.witness.probs(), &[rat(1, 2), rat(1, 4), rat(1, 4)]);
    }

    #[test]
    fn restricted_maximin_rises_without_the_first_column() {
        let game = fixtures::threat_3x3();
        assert_eq!(restricted_maximin(game.leader(), 0), ExtendedRational::Finite(rint(1)));
    }

    #[test]
    fn restricted_maximin_of_a_single_column_is_unbounded() {
        let leader = PayoffMatrix::from_rows(vec![vec![rint(0)], vec![rint(1)]]).unwrap();
        assert_eq!(restricted_maximin(&leader, 0), ExtendedRational::PlusInfinity);
    }

    #[test]
    fn threat_fixture_analysis_matches_hand_computation() {
        let game = fixtures::threat_3x3();
        let x = MixedStrategy::new(vec![rat(1, 2), rat(1, 2), rint(0)]).unwrap();
        let threat = threat_value(game.leader(), &x, 0);
        assert_eq!(threat.value, ExtendedRational::Finite(rat(1, 2)));
        assert_eq!(
            threat.witness.as_ref().unwrap().probs(),
            &[rat(1, 2), rat(1, 4), rat(1, 4)]
        );
        assert_eq!(threat.active, vec![1, 2]);
    }

    #[test]
    fn threat_is_minus_infinity_when_no_deviation_beats_the_target() {
        let game = fixtures::tied_column_3x2();
        let x = MixedStrategy::pure(3, 2);
        let threat = threat_value(game.leader(), &x, 0);
        assert_eq!(threat.value, ExtendedRational::MinusInfinity);
        assert!(threat.witness.is_none());
        assert!(threat.active.is_empty());
    }

    #[test]
    fn inducibility_is_the_maximin_threshold() {
        let game = fixtures::threat_3x3();
        let leader = game.leader();
        let good = StrategyProfile::new(
            MixedStrategy::new(vec![rat(1, 2), rat(1, 2), rint(0)]).unwrap(),
            0,
        );
        assert!(is_payoff_inducible(leader, &good).unwrap());
        // Leader payoff 0 on column 0 sits below the maximin value 1/2.
        let bad = StrategyProfile::new(MixedStrategy::pure(3, 0), 0);
        assert!(!is_payoff_inducible(leader, &bad).unwrap());
    }

    #[test]
    fn optimal_inducible_outcome_of_the_mixing_game() {
        let game = fixtures::mixing_2x2(rat(1, 2));
        let outcome = optimal_inducible_profile(&game).unwrap();
        assert_eq!(outcome.profile.response, 0);
        assert_eq!(outcome.profile.strategy.probs(), &[rint(0), rint(1)]);
        assert_eq!(outcome.follower_value, rint(1));
    }

    #[test]
    fn optimal_inducible_outcome_of_the_margin_fixture() {
        let game = fixtures::strict_margin_3x2();
        let outcome = optimal_inducible_profile(&game).unwrap();
        assert_eq!(outcome.profile.response, 0);
        assert_eq!(outcome.profile.strategy.probs(), &[rint(0), rint(0), rint(1)]);
        assert_eq!(outcome.follower_value, rint(1));
    }

    #[test]
    fn optimal_inducible_outcome_of_the_tied_column_fixture() {
        let game = fixtures::tied_column_3x2();
        let outcome = optimal_inducible_profile(&game).unwrap();
        assert_eq!(outcome.profile.response, 0);
        assert_eq!(outcome.profile.strategy.probs(), &[rint(0), rint(0), rint(1)]);
        assert_eq!(outcome.follower_value, rint(1));
    }

    #[test]
    fn fake_best_responses_partition_into_the_three_regions() {
        let game = fixtures::threat_3x3();
        let leader = game.leader();
        let target = StrategyProfile::new(
            MixedStrategy::new(vec![rat(1, 2), rat(1, 2), rint(0)]).unwrap(),
            0,
        );
        // Strictly inside the deviation region: only the punishing column.
        let inside = MixedStrategy::pure(3, 1);
        assert_eq!(br_p_response(leader, &target, &inside).unwrap(), vec![1]);
        // On its boundary: the target column joins the worst columns. The
        // threat witness sits there with every column tied.
        let witness = MixedStrategy::new(vec![rat(1, 2), rat(1, 4), rat(1, 4)]).unwrap();
        assert_eq!(br_p_response(leader, &target, &witness).unwrap(), vec![0, 1, 2]);
        let boundary = MixedStrategy::new(vec![rat(1, 2), rint(0), rat(1, 2)]).unwrap();
        assert_eq!(br_p_response(leader, &target, &boundary).unwrap(), vec![0, 2]);
        // The target itself lies on the boundary as well.
        assert_eq!(br_p_response(leader, &target, &target.strategy).unwrap(), vec![0, 1]);
        // Outside: only the target column.
        let outside = MixedStrategy::pure(3, 0);
        assert_eq!(br_p_response(leader, &target, &outside).unwrap(), vec![0]);
    }

    #[test]
    fn fake_best_response_is_the_target_column_when_no_deviation_exists() {
        let game = fixtures::tied_column_3x2();
        let target = StrategyProfile::new(MixedStrategy::pure(3, 2), 0);
        for y in [MixedStrategy::pure(3, 0), MixedStrategy::pure(3, 1), MixedStrategy::pure(3, 2)] {
            assert_eq!(br_p_response(game.leader(), &target, &y).unwrap(), vec![0]);
        }
    }
}
