//! Bimatrix games: payoff matrices, mixed strategies, and commitments.
//!
//! The leader commits to a mixed strategy over rows; the follower observes
//! it and picks a column. A [`StrategyProfile`] is one such commitment
//! paired with one follower column. Payoffs are exact rationals throughout.

use crate::rational::{max_abs, Rational};
use num_traits::{One, Zero};

/// Validation failures when building or combining game objects.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("payoff matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },
    #[error("leader matrix is {leader_rows}x{leader_cols} but follower matrix is {follower_rows}x{follower_cols}")]
    ShapeMismatch {
        leader_rows: usize,
        leader_cols: usize,
        follower_rows: usize,
        follower_cols: usize,
    },
    #[error("strategy has {found} probabilities, game has {expected} rows")]
    StrategyLength { expected: usize, found: usize },
    #[error("probability {index} is negative")]
    NegativeProbability { index: usize },
    #[error("probabilities sum to {sum}, not 1")]
    ProbabilitySum { sum: String },
    #[error("response column {response} is out of range for {cols} columns")]
    ResponseOutOfRange { response: usize, cols: usize },
    #[error("operation needs follower payoffs but the game has none")]
    MissingFollower,
}

/// Dense row-major payoff matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayoffMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl PayoffMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, GameError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(GameError::EmptyMatrix);
        }
        let cols = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(GameError::RaggedRows { row: i, expected: cols, found: row.len() });
            }
        }
        let num_rows = rows.len();
        let entries = rows.into_iter().flatten().collect();
        Ok(PayoffMatrix { rows: num_rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        assert!(row < self.rows && col < self.cols, "matrix index out of range");
        &self.entries[row * self.cols + col]
    }

    /// One column, top to bottom.
    pub fn column(&self, col: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.entry(i, col).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    /// Expected payoff of column `col` against the mixed strategy `x`.
    pub fn payoff(&self, x: &MixedStrategy, col: usize) -> Rational {
        assert_eq!(x.len(), self.rows, "strategy length vs matrix rows");
        let mut total = Rational::zero();
        for (i, p) in x.probs().iter().enumerate() {
            if !p.is_zero() {
                total += p * self.entry(i, col);
            }
        }
        total
    }

    /// Columns attaining the maximal expected payoff against `x`, ascending.
    pub fn best_responses(&self, x: &MixedStrategy) -> Vec<usize> {
        let mut best = self.payoff(x, 0);
        let mut arg = vec![0];
        for col in 1..self.cols {
            let value = self.payoff(x, col);
            if value > best {
                best = value;
                arg = vec![col];
            } else if value == best {
                arg.push(col);
            }
        }
        arg
    }

    /// Largest absolute entry.
    pub fn max_abs_entry(&self) -> Rational {
        max_abs(&self.entries)
    }
}

/// Probability distribution over rows: nonnegative entries summing to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedStrategy {
    probs: Vec<Rational>,
}

impl MixedStrategy {
    pub fn new(probs: Vec<Rational>) -> Result<Self, GameError> {
        if probs.is_empty() {
            return Err(GameError::StrategyLength { expected: 1, found: 0 });
        }
        let mut sum = Rational::zero();
        for (index, p) in probs.iter().enumerate() {
            if p < &Rational::zero() {
                return Err(GameError::NegativeProbability { index });
            }
            sum += p;
        }
        if !sum.is_one() {
            return Err(GameError::ProbabilitySum { sum: crate::rational::format_rational(&sum) });
        }
        Ok(MixedStrategy { probs })
    }

    /// Point mass on one row.
    pub fn pure(len: usize, row: usize) -> Self {
        assert!(row < len, "pure strategy row out of range");
        let mut probs = vec![Rational::zero(); len];
        probs[row] = Rational::one();
        MixedStrategy { probs }
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn get(&self, row: usize) -> &Rational {
        &self.probs[row]
    }

    /// Rows with zero probability, ascending.
    pub fn zero_rows(&self) -> Vec<usize> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

/// A leader commitment together with the follower column it anticipates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyProfile {
    pub strategy: MixedStrategy,
    pub response: usize,
}

impl StrategyProfile {
    pub fn new(strategy: MixedStrategy, response: usize) -> Self {
        StrategyProfile { strategy, response }
    }
}

/// A leader payoff matrix, optionally paired with the follower's.
///
/// Deception problems only need the leader side plus a target; equilibrium
/// computation needs both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    leader: PayoffMatrix,
    follower: Option<PayoffMatrix>,
}

impl Game {
    pub fn new(leader: PayoffMatrix, follower: Option<PayoffMatrix>) -> Result<Self, GameError> {
        if let Some(f) = &follower {
            if f.rows() != leader.rows() || f.cols() != leader.cols() {
                return Err(GameError::ShapeMismatch {
                    leader_rows: leader.rows(),
                    leader_cols: leader.cols(),
                    follower_rows: f.rows(),
                    follower_cols: f.cols(),
                });
            }
        }
        Ok(Game { leader, follower })
    }

    pub fn leader_only(leader: PayoffMatrix) -> Self {
        Game { leader, follower: None }
    }

    pub fn leader(&self) -> &PayoffMatrix {
        &self.leader
    }

    pub fn follower(&self) -> Option<&PayoffMatrix> {
        self.follower.as_ref()
    }

    pub fn follower_required(&self) -> Result<&PayoffMatrix, GameError> {
        self.follower.as_ref().ok_or(GameError::MissingFollower)
    }

    pub fn rows(&self) -> usize {
        self.leader.rows()
    }

    pub fn cols(&self) -> usize {
        self.leader.cols()
    }

    /// Checks a profile against this game's shape.
    pub fn validate_profile(&self, profile: &StrategyProfile) -> Result<(), GameError> {
        if profile.strategy.len() != self.rows() {
            return Err(GameError::StrategyLength { expected: self.rows(), found: profile.strategy.len() });
        }
        if profile.response >= self.cols() {
            return Err(GameError::ResponseOutOfRange { response: profile.response, cols: self.cols() });
        }
        Ok(())
    }
}
