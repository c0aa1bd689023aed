//! Strong Stackelberg equilibria by the multiple-LP method.
//!
//! For each follower column `j`, the leader strategies against which `j` is
//! a best response form a polytope inside the simplex. Maximizing the
//! leader's own column-`j` payoff over that polytope is one small LP; the
//! equilibrium value is the best optimum across columns, and the follower
//! breaks ties in the leader's favour by definition. [`compute_sse`] solves
//! the per-column LPs, [`is_sse`] tests membership of a given profile, and
//! [`is_unique_sse`] additionally pins the winning column's optimal face to
//! a single point.

use crate::game::{GameError, MixedStrategy, PayoffMatrix, StrategyProfile};
use crate::lp::{self, LpOutcome, LpProblem};
use crate::rational::{ExtendedRational, Rational};
use num_traits::{One, Zero};

/// An equilibrium profile with the values behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SseResult {
    pub profile: StrategyProfile,
    /// Leader payoff at the profile; the maximum over the finite per-column
    /// values.
    pub leader_value: Rational,
    /// Follower payoff at the profile under the matrix used for best
    /// responses.
    pub follower_value: Rational,
    /// Best leader payoff attainable with each column as a best response;
    /// `MinusInfinity` marks columns that are never a best response.
    pub per_column_values: Vec<ExtendedRational>,
}

/// Outcome of checking one profile against the equilibrium conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SseCheck {
    /// The profile's column is a best response to its strategy.
    pub response_is_best: bool,
    /// Leader payoff at the profile.
    pub leader_value: Rational,
    /// Equilibrium value of the game.
    pub sse_value: Rational,
    pub holds: bool,
}

/// Per-column LPs and their optima, shared by the public entry points.
struct ColumnAnalysis {
    lps: Vec<LpProblem>,
    values: Vec<ExtendedRational>,
    points: Vec<Option<MixedStrategy>>,
}

/// LP for one column: maximize the leader's payoff over the strategies that
/// make `col` a follower best response.
fn column_lp(leader: &PayoffMatrix, follower: &PayoffMatrix, col: usize) -> LpProblem {
    let m = leader.rows();
    let mut lp = LpProblem::new(m);
    lp.set_objective(leader.column(col));
    lp.add_eq(vec![Rational::one(); m], Rational::one());
    for other in 0..follower.cols() {
        if other == col {
            continue;
        }
        let coeffs: Vec<Rational> = (0..m)
            .map(|i| follower.entry(i, other) - follower.entry(i, col))
            .collect();
        lp.add_le(coeffs, Rational::zero());
    }
    lp
}

fn check_shapes(leader: &PayoffMatrix, follower: &PayoffMatrix) -> Result<(), GameError> {
    if leader.rows() != follower.rows() || leader.cols() != follower.cols() {
        return Err(GameError::ShapeMismatch {
            leader_rows: leader.rows(),
            leader_cols: leader.cols(),
            follower_rows: follower.rows(),
            follower_cols: follower.cols(),
        });
    }
    Ok(())
}

fn analyze_columns(leader: &PayoffMatrix, follower: &PayoffMatrix) -> ColumnAnalysis {
    let mut lps = Vec::with_capacity(leader.cols());
    let mut values = Vec::with_capacity(leader.cols());
    let mut points = Vec::with_capacity(leader.cols());
    for col in 0..leader.cols() {
        let lp = column_lp(leader, follower, col);
        match lp::solve(&lp).expect("column LP is well formed") {
            LpOutcome::Optimal(solution) => {
                values.push(ExtendedRational::Finite(solution.value));
                let strategy = MixedStrategy::new(solution.point)
                    .expect("column LP constrains its point to the simplex");
                points.push(Some(strategy));
            }
            LpOutcome::Infeasible => {
                values.push(ExtendedRational::MinusInfinity);
                points.push(None);
            }
            LpOutcome::Unbounded => unreachable!("column LP feasible set is inside the simplex"),
        }
        lps.push(lp);
    }
    ColumnAnalysis { lps, values, points }
}

impl ColumnAnalysis {
    /// Winning column: maximal value, ties to the smallest index. At least
    /// one column is always attainable because best responses exist at
    /// every strategy.
    fn best_column(&self) -> usize {
        let mut best: Option<usize> = None;
        for (col, value) in self.values.iter().enumerate() {
            if !value.is_finite() {
                continue;
            }
            match best {
                Some(b) if value <= &self.values[b] => {}
                _ => best = Some(col),
            }
        }
        best.expect("some column is a best response somewhere")
    }
}

/// Computes an equilibrium profile. When several columns attain the
/// equilibrium value the smallest column index is reported, with the vertex
/// the solver found for it.
pub fn compute_sse(leader: &PayoffMatrix, follower: &PayoffMatrix) -> Result<SseResult, GameError> {
    check_shapes(leader, follower)?;
    let analysis = analyze_columns(leader, follower);
    let col = analysis.best_column();
    let strategy = analysis.points[col].clone().expect("best column is attainable");
    let leader_value = analysis.values[col]
        .as_finite()
        .expect("best column value is finite")
        .clone();
    let follower_value = follower.payoff(&strategy, col);
    Ok(SseResult {
        profile: StrategyProfile::new(strategy, col),
        leader_value,
        follower_value,
        per_column_values: analysis.values,
    })
}

/// Checks whether `profile` is an equilibrium of the given game: its column
/// must be a best response and its leader payoff must match the equilibrium
/// value.
pub fn is_sse(
    leader: &PayoffMatrix,
    follower: &PayoffMatrix,
    profile: &StrategyProfile,
) -> Result<SseCheck, GameError> {
    check_shapes(leader, follower)?;
    validate_profile(leader, profile)?;
    let analysis = analyze_columns(leader, follower);
    let col = analysis.best_column();
    let sse_value = analysis.values[col]
        .as_finite()
        .expect("best column value is finite")
        .clone();
    let response_is_best = follower
        .best_responses(&profile.strategy)
        .contains(&profile.response);
    let leader_value = leader.payoff(&profile.strategy, profile.response);
    let holds = response_is_best && leader_value == sse_value;
    Ok(SseCheck { response_is_best, leader_value, sse_value, holds })
}

/// Checks whether `profile` is the only equilibrium of the game.
///
/// Three things must hold: the profile is an equilibrium, no other column
/// attains the equilibrium value, and the winning column's optimal face is
/// the single point `profile.strategy`. The face test maximizes and
/// minimizes every coordinate over the face and demands both extremes equal
/// the profile's coordinate.
pub fn is_unique_sse(
    leader: &PayoffMatrix,
    follower: &PayoffMatrix,
    profile: &StrategyProfile,
) -> Result<bool, GameError> {
    check_shapes(leader, follower)?;
    validate_profile(leader, profile)?;
    let check = is_sse(leader, follower, profile)?;
    if !check.holds {
        return Ok(false);
    }
    let analysis = analyze_columns(leader, follower);
    for (col, value) in analysis.values.iter().enumerate() {
        if col != profile.response && value == &ExtendedRational::Finite(check.sse_value.clone()) {
            return Ok(false);
        }
    }
    let lp = &analysis.lps[profile.response];
    let m = leader.rows();
    for i in 0..m {
        for sign in [Rational::one(), -Rational::one()] {
            let mut objective = vec![Rational::zero(); m];
            objective[i] = sign.clone();
            let outcome = lp::maximize_over_face(lp, &check.sse_value, &objective)
                .expect("face LP is well formed")
                .expect_optimal("optimal face is nonempty and bounded");
            if outcome.value != &sign * profile.strategy.get(i) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn validate_profile(leader: &PayoffMatrix, profile: &StrategyProfile) -> Result<(), GameError> {
    if profile.strategy.len() != leader.rows() {
        return Err(GameError::StrategyLength { expected: leader.rows(), found: profile.strategy.len() });
    }
    if profile.response >= leader.cols() {
        return Err(GameError::ResponseOutOfRange { response: profile.response, cols: leader.cols() });
    }
    Ok(())
}
