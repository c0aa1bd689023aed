//! Shared test support: seeded random generators for games and strategies,
//! the small fixture games the suites keep returning to, and exact linear
//! algebra for brute-force oracles. Not part of the public surface.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ruse_core::rational::Rational;
use ruse_core::{Game, MixedStrategy, PayoffMatrix, StrategyProfile};

/// Deterministic generator; every suite seeds explicitly so failures replay.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform rational with numerator in `[-max_num, max_num]` and denominator
/// in `[1, max_den]`.
pub fn rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    let num = rng.gen_range(-max_num..=max_num);
    let den = rng.gen_range(1..=max_den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> PayoffMatrix {
    let entries = (0..rows)
        .map(|_| (0..cols).map(|_| rational(rng, 4, 3)).collect())
        .collect();
    PayoffMatrix::from_rows(entries).expect("generated matrix is rectangular")
}

/// Random bimatrix game with both payoff matrices.
pub fn game(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Game {
    let leader = matrix(rng, rows, cols);
    let follower = matrix(rng, rows, cols);
    Game::new(leader, Some(follower)).expect("matching shapes by construction")
}

/// Random point of the probability simplex with small rational coordinates.
pub fn simplex_point(rng: &mut ChaCha8Rng, len: usize) -> MixedStrategy {
    loop {
        let raw: Vec<Rational> = (0..len)
            .map(|_| {
                let num = rng.gen_range(0..=6);
                let den = rng.gen_range(1..=4);
                Rational::new(BigInt::from(num), BigInt::from(den))
            })
            .collect();
        let total = raw.iter().fold(Rational::zero(), |acc, p| acc + p);
        if total.is_zero() {
            continue;
        }
        let probs = raw.into_iter().map(|p| p / &total).collect();
        return MixedStrategy::new(probs).expect("normalized point is a distribution");
    }
}

/// Random profile shaped for an `rows x cols` game.
pub fn profile(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> StrategyProfile {
    let strategy = simplex_point(rng, rows);
    let response = rng.gen_range(0..cols);
    StrategyProfile::new(strategy, response)
}

pub mod fixtures {
    use ruse_core::rational::{rat, rint, Rational};
    use ruse_core::{Game, PayoffMatrix};

    fn rows(entries: Vec<Vec<Rational>>) -> PayoffMatrix {
        PayoffMatrix::from_rows(entries).expect("fixture matrix is rectangular")
    }

    /// 2x2 game in which honest play makes the leader mix half-half for a
    /// payoff of 1/2 each, while a misreported follower column pushes the
    /// leader onto the follower's favourite row. `alpha` is the follower's
    /// payoff in its second column.
    pub fn mixing_2x2(alpha: Rational) -> Game {
        let leader = rows(vec![vec![rint(1), rint(0)], vec![rint(0), rint(0)]]);
        let follower = rows(vec![
            vec![rint(0), alpha.clone()],
            vec![rint(1), alpha],
        ]);
        Game::new(leader, Some(follower)).expect("shapes match")
    }

    /// Leader-only 3x3 game whose interesting target needs a nonempty
    /// threat set: inducing column 0 at x = (1/2, 1/2, 0) requires playing
    /// off the two remaining columns against each other.
    pub fn threat_3x3() -> Game {
        Game::leader_only(rows(vec![
            vec![rint(0), rint(1), rint(1)],
            vec![rint(1), rat(-1, 2), rat(1, 2)],
            vec![rint(1), rat(1, 2), rat(-1, 2)],
        ]))
    }

    /// 3x2 game whose first leader column has its maximum on two different
    /// rows, which blocks any construction that needs a unique equilibrium.
    pub fn tied_column_3x2() -> Game {
        let leader = rows(vec![
            vec![rat(1, 4), rint(1)],
            vec![rint(0), rat(1, 3)],
            vec![rat(1, 4), rat(2, 3)],
        ]);
        let follower = rows(vec![
            vec![rat(1, 2), rint(0)],
            vec![rat(1, 2), rint(0)],
            vec![rint(1), rint(0)],
        ]);
        Game::new(leader, Some(follower)).expect("shapes match")
    }

    /// 3x2 game where the best inducible outcome sits on a column maximum
    /// that a unique equilibrium can only approach: enforcing uniqueness
    /// costs a strictly positive margin traded against the follower's
    /// tolerance.
    pub fn strict_margin_3x2() -> Game {
        let leader = rows(vec![
            vec![rint(1), rint(0)],
            vec![rint(0), rint(1)],
            vec![rat(1, 2), rat(1, 4)],
        ]);
        let follower = rows(vec![
            vec![rat(1, 4), rat(1, 3)],
            vec![rat(1, 4), rat(1, 2)],
            vec![rint(1), rat(1, 6)],
        ]);
        Game::new(leader, Some(follower)).expect("shapes match")
    }
}

pub mod linalg {
    use num_traits::Zero;
    use ruse_core::rational::Rational;

    /// Solves a square system `a . x = b` by Gaussian elimination; `None`
    /// when the matrix is singular.
    pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
        let n = a.len();
        assert!(a.iter().all(|row| row.len() == n) && b.len() == n, "square system");
        let mut m: Vec<Vec<Rational>> = a
            .iter()
            .zip(b)
            .map(|(row, rhs)| {
                let mut r = row.clone();
                r.push(rhs.clone());
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, pivot);
            let scale = m[col][col].clone();
            for entry in &mut m[col] {
                if !entry.is_zero() {
                    *entry /= &scale;
                }
            }
            for row in 0..n {
                if row == col || m[row][col].is_zero() {
                    continue;
                }
                let factor = m[row][col].clone();
                for j in col..=n {
                    let delta = &factor * &m[col][j];
                    m[row][j] -= delta;
                }
            }
        }
        Some(m.into_iter().map(|row| row[n].clone()).collect())
    }

    /// Rank of a rational matrix.
    pub fn rank(rows: &[Vec<Rational>]) -> usize {
        if rows.is_empty() {
            return 0;
        }
        let cols = rows[0].len();
        let mut m: Vec<Vec<Rational>> = rows.to_vec();
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            let scale = m[rank][col].clone();
            for entry in &mut m[rank] {
                if !entry.is_zero() {
                    *entry /= &scale;
                }
            }
            for row in 0..m.len() {
                if row == rank || m[row][col].is_zero() {
                    continue;
                }
                let factor = m[row][col].clone();
                for j in 0..cols {
                    let delta = &factor * &m[rank][j];
                    m[row][j] -= delta;
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }
}
