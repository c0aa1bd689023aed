//! Fake matrices that pin a unique equilibrium near the optimal
//! inducible outcome.
//!
//! A fake matrix from [`crate::deception`] makes its target an
//! equilibrium, but possibly one of many, and a leader may settle on a
//! different one. Sacrificing an arbitrarily small amount of follower
//! value buys uniqueness, provided no column of the leader's matrix has
//! a tied maximum. With such a tie the uniquely enforceable outcomes can
//! be unboundedly worse than the freely enforceable ones, so that case
//! is a hard error rather than a degraded construction.
//!
//! The construction lifts the leader's payoff on the target column by
//! the largest margin that costs the follower at most `epsilon`, then
//! moves the target to a vertex `x` of the lifted payoff slice. With a
//! positive margin the reported target column ties against the cheapest
//! rival column exactly on the slice and falls off steeply above it,
//! while rows outside the support of `x` get an extra penalty so the tie
//! is attained at `x` alone. A zero margin means the base profile
//! already uniquely maximizes the leader's column and the dominant
//! column matrix suffices at zero cost.

use crate::deception::{cheapest_column, dominant_column_matrix};
use crate::inducibility::{optimal_inducible_profile, threat_value, InducibleOutcome};
use ruse_core::game::{Game, GameError, MixedStrategy, PayoffMatrix, StrategyProfile};
use ruse_core::lp::{self, LpProblem};
use ruse_core::rational::{ExtendedRational, Rational};
use ruse_core::sse::is_unique_sse;
use num_traits::{One, Zero};

/// Failure modes of the uniqueness-forcing construction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrongError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("leader column {column} has a tied maximum, so no matrix can force a unique equilibrium near the optimum")]
    MaxDegenerate { column: usize },
    #[error("the follower loss budget must be positive, got {epsilon}")]
    InvalidEpsilon { epsilon: Rational },
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
    #[error("constructed matrix failed the final uniqueness audit")]
    UniquenessCheckFailed,
}

/// Smallest column whose maximal leader payoff is attained by more than
/// one row, if any.
pub fn max_degenerate_column(leader: &PayoffMatrix) -> Option<usize> {
    (0..leader.cols()).find(|&col| {
        let column = leader.column(col);
        let max = column.iter().max().expect("matrices are nonempty");
        column.iter().filter(|value| *value == max).count() > 1
    })
}

/// Which construction produced the fake matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrongBranch {
    /// The base profile uniquely maximizes the leader's target column, so
    /// making that column dominant already pins it, at zero follower cost.
    DominantColumn,
    /// The profile moved to a vertex of the lifted payoff slice.
    Margin {
        /// Rows where the vertex puts zero weight, ascending. Empty only
        /// in two-row games whose slice is a single interior point.
        boundary: Vec<usize>,
        /// Indicator vector of `boundary`: the extra penalty on the
        /// target column's fake payoff at each pure strategy.
        h: Vec<Rational>,
        /// Rival column the target column ties against on the slice.
        k: usize,
        /// Slope of the fake target-column payoff in the leader's payoff,
        /// steep enough to dominate every rival payoff difference.
        alpha: Rational,
    },
}

/// A uniqueness-forcing fake matrix together with how it was built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongConstruction {
    /// The outcome the construction approximates, with its profile `(x*, j)`.
    pub base: InducibleOutcome,
    pub epsilon: Rational,
    /// Lift of the leader's target-column payoff over the base profile.
    pub delta: Rational,
    /// The profile the fake matrix pins as the unique equilibrium.
    pub profile: StrategyProfile,
    /// True follower payoff at `profile`; at least the base value minus
    /// `epsilon`.
    pub follower_value: Rational,
    pub branch: StrongBranch,
    pub fake: PayoffMatrix,
}

/// Builds a fake follower matrix whose game has a unique equilibrium
/// worth at least the optimal enforceable follower value minus `epsilon`.
pub fn strong_deceive(game: &Game, epsilon: &Rational) -> Result<StrongConstruction, StrongError> {
    let follower = game.follower_required()?;
    let leader = game.leader();
    if epsilon <= &Rational::zero() {
        return Err(StrongError::InvalidEpsilon { epsilon: epsilon.clone() });
    }
    if let Some(column) = max_degenerate_column(leader) {
        return Err(StrongError::MaxDegenerate { column });
    }
    let base = optimal_inducible_profile(game)?;
    let j = base.profile.response;
    let base_level = leader.payoff(&base.profile.strategy, j);
    let m = leader.rows();

    // Largest lift of the leader's column-j payoff whose follower cost
    // stays within epsilon: maximize delta over distributions x with
    // u^F(x,j) >= u^F(x*,j) - epsilon and u^L(x,j) = u^L(x*,j) + delta.
    let mut margin_lp = LpProblem::new(m + 1);
    let mut objective = vec![Rational::zero(); m + 1];
    objective[m] = Rational::one();
    margin_lp.set_objective(objective);
    margin_lp.set_free(m);
    let mut total = vec![Rational::one(); m];
    total.push(Rational::zero());
    margin_lp.add_eq(total, Rational::one());
    let mut floor: Vec<Rational> = follower.column(j);
    floor.push(Rational::zero());
    margin_lp.add_ge(floor, &base.follower_value - epsilon);
    let mut level: Vec<Rational> = leader.column(j);
    level.push(-Rational::one());
    margin_lp.add_eq(level, base_level.clone());
    let margin = lp::solve(&margin_lp)
        .expect("margin program is well formed")
        .expect_optimal("margin program contains the base profile");
    let delta = margin.value;
    if delta < Rational::zero() {
        return Err(StrongError::Internal("margin below zero despite a feasible base"));
    }

    if delta.is_zero() {
        // Zero margin forces an empty deviation region, and a tie-free
        // column maximum then makes the base profile its unique
        // maximizer, hence pure.
        if threat_value(leader, &base.profile.strategy, j).value != ExtendedRational::MinusInfinity
        {
            return Err(StrongError::Internal("zero margin with a nonempty deviation region"));
        }
        if base.profile.strategy.zero_rows().len() + 1 != m {
            return Err(StrongError::Internal("zero margin at a mixed base profile"));
        }
        let fake = dominant_column_matrix(m, leader.cols(), j);
        if !is_unique_sse(leader, &fake, &base.profile)? {
            return Err(StrongError::UniquenessCheckFailed);
        }
        return Ok(StrongConstruction {
            epsilon: epsilon.clone(),
            delta,
            profile: base.profile.clone(),
            follower_value: base.follower_value.clone(),
            base,
            branch: StrongBranch::DominantColumn,
            fake,
        });
    }

    // Vertex of the slice where the lift is attained, follower-optimal so
    // the epsilon floor carries over from the margin witness.
    let mut slice_lp = LpProblem::new(m);
    slice_lp.set_objective(follower.column(j));
    slice_lp.add_eq(vec![Rational::one(); m], Rational::one());
    slice_lp.add_eq(leader.column(j), &base_level + &delta);
    let vertex = lp::solve(&slice_lp)
        .expect("slice program is well formed")
        .expect_optimal("slice contains the margin witness");
    let follower_value = vertex.value;
    if follower_value < &base.follower_value - epsilon {
        return Err(StrongError::Internal("slice vertex lost the follower floor"));
    }
    let x = MixedStrategy::new(vertex.point).expect("slice solutions are distributions");
    let boundary = x.zero_rows();
    // A vertex has m-1 independent tight constraints; the slice equality
    // supplies one, so at most one slack boundary remains.
    if boundary.len() + 2 < m {
        return Err(StrongError::Internal("slice vertex is missing tight boundaries"));
    }
    let h: Vec<Rational> = (0..m)
        .map(|i| if boundary.contains(&i) { Rational::one() } else { Rational::zero() })
        .collect();
    let rivals: Vec<usize> = (0..leader.cols()).filter(|&col| col != j).collect();
    if rivals.is_empty() {
        return Err(StrongError::Internal("positive margin in a single-column game"));
    }
    let k = cheapest_column(leader, &x, &rivals);
    let alpha = (Rational::from_integer(2.into()) * leader.max_abs_entry()
        + Rational::from_integer(m.into()))
        / &delta;
    let level = leader.payoff(&x, j);
    let rows = (0..m)
        .map(|i| {
            (0..leader.cols())
                .map(|col| {
                    if col == j {
                        -leader.entry(i, k) + &alpha * &(&level - leader.entry(i, j)) - &h[i]
                    } else {
                        -leader.entry(i, col)
                    }
                })
                .collect()
        })
        .collect();
    let fake = PayoffMatrix::from_rows(rows).expect("fake matrix is rectangular");
    let profile = StrategyProfile::new(x, j);
    if !is_unique_sse(leader, &fake, &profile)? {
        return Err(StrongError::UniquenessCheckFailed);
    }
    Ok(StrongConstruction {
        base,
        epsilon: epsilon.clone(),
        delta,
        profile,
        follower_value,
        branch: StrongBranch::Margin { boundary, h, k, alpha },
        fake,
    })
}

/// The optimal enforceable follower value next to what the
/// uniqueness-forcing construction actually achieves. The gap is at most
/// `epsilon`.
pub fn strong_value_gap(game: &Game, epsilon: &Rational) -> Result<(Rational, Rational), StrongError> {
    let construction = strong_deceive(game, epsilon)?;
    Ok((construction.base.follower_value, construction.follower_value))
}
