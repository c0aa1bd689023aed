//! Fake payoff matrices that make a chosen target an equilibrium.
//!
//! Given an inducible target `(x, j)`, the reported matrix must do two
//! things: make column `j` a best response at `x`, and make sure that
//! wherever the leader could collect more than `u^L(x, j)`, the columns
//! that end up as best responses pay her no more than that. Three cases
//! cover every inducible target.
//!
//! When no strategy beats the target on column `j` at all, reporting `j`
//! as strictly dominant settles it. When the leader cannot reach the
//! target payoff even with every other column available, all of them
//! become punishing columns: the fake payoffs are the negated leader
//! payoffs, so the fake best response is always a column the leader likes
//! least. In the remaining case blanket punishment overshoots; the
//! punishment set has to be cut down to active columns of the threat
//! analysis. Writing the target column's gradient as a nonnegative
//! combination of the active columns' gradients and the tight simplex
//! boundaries (a Farkas certificate at the threat witness) identifies the
//! columns that matter and calibrates the tie-break payoff `alpha`.

use crate::inducibility::{certify, optimal_inducible_profile, InducibilityCertificate, InducibleOutcome};
use ruse_core::game::{Game, GameError, MixedStrategy, PayoffMatrix, StrategyProfile};
use ruse_core::lp::{self, LpOutcome, LpProblem};
use ruse_core::rational::{ExtendedRational, Rational};
use num_traits::{One, Zero};

/// Failure modes of the construction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeceptionError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("target is not inducible: leader payoff {leader_value} is below the maximin value {maximin}")]
    NotInducible { leader_value: Rational, maximin: Rational },
    #[error("threat geometry admits no Farkas decomposition")]
    DecompositionInfeasible,
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

/// Geometry of the leader's problem in the coordinates of the first
/// `m - 1` strategy weights, anchored at a base point.
///
/// Dropping the last coordinate turns the simplex into the region cut out
/// by `m` halfspaces: one per original row, where the first `m - 1` have
/// unit normals with offset zero and the last has the all-minus-ones
/// normal with offset minus one. Column payoffs become affine with the
/// stored gradients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGeometry {
    /// Payoff gradient of each column, length `m - 1` apiece.
    pub gradients: Vec<Vec<Rational>>,
    /// Inward normals of the simplex boundaries, one per original row.
    pub boundary_normals: Vec<Vec<Rational>>,
    /// Offsets paired with the normals: the boundary is where the normal
    /// dotted with the point equals the offset.
    pub boundary_offsets: Vec<Rational>,
    /// Boundaries tight at the base point, ascending; equivalently the
    /// base point's zero rows.
    pub tight: Vec<usize>,
}

impl ReducedGeometry {
    pub fn new(leader: &PayoffMatrix, base: &MixedStrategy) -> Self {
        assert_eq!(base.len(), leader.rows(), "base point length vs matrix rows");
        let m = leader.rows();
        let gradients = (0..leader.cols())
            .map(|col| {
                (0..m - 1)
                    .map(|i| leader.entry(i, col) - leader.entry(m - 1, col))
                    .collect()
            })
            .collect();
        let mut boundary_normals = Vec::with_capacity(m);
        let mut boundary_offsets = Vec::with_capacity(m);
        for i in 0..m - 1 {
            let mut normal = vec![Rational::zero(); m - 1];
            normal[i] = Rational::one();
            boundary_normals.push(normal);
            boundary_offsets.push(Rational::zero());
        }
        boundary_normals.push(vec![-Rational::one(); m - 1]);
        boundary_offsets.push(-Rational::one());
        ReducedGeometry {
            gradients,
            boundary_normals,
            boundary_offsets,
            tight: base.zero_rows(),
        }
    }
}

/// Nonnegative multipliers writing the negated target gradient as a
/// combination of active-column gradients and tight boundary normals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasDecomposition {
    /// One multiplier per active column, keyed by column index.
    pub lambda: Vec<(usize, Rational)>,
    /// One multiplier per tight boundary, keyed by boundary index.
    pub mu: Vec<(usize, Rational)>,
}

/// Solves `-g_j = sum lambda_l g_l + sum mu_i e_i` with all multipliers
/// nonnegative, over the active columns and the tight boundaries of the
/// geometry.
pub fn farkas_decompose(
    geometry: &ReducedGeometry,
    j: usize,
    active: &[usize],
) -> Result<FarkasDecomposition, DeceptionError> {
    assert!(j < geometry.gradients.len(), "target column out of range");
    let dim = geometry.gradients[j].len();
    let num_vars = active.len() + geometry.tight.len();
    let mut lp = LpProblem::new(num_vars);
    for coord in 0..dim {
        let mut coeffs = Vec::with_capacity(num_vars);
        for &col in active {
            coeffs.push(geometry.gradients[col][coord].clone());
        }
        for &boundary in &geometry.tight {
            coeffs.push(geometry.boundary_normals[boundary][coord].clone());
        }
        lp.add_eq(coeffs, -geometry.gradients[j][coord].clone());
    }
    let solution = match lp::solve(&lp).expect("decomposition program is well formed") {
        LpOutcome::Optimal(solution) => solution,
        LpOutcome::Infeasible => return Err(DeceptionError::DecompositionInfeasible),
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    };
    let lambda = active
        .iter()
        .zip(&solution.point)
        .map(|(&col, value)| (col, value.clone()))
        .collect();
    let mu = geometry
        .tight
        .iter()
        .zip(&solution.point[active.len()..])
        .map(|(&boundary, value)| (boundary, value.clone()))
        .collect();
    Ok(FarkasDecomposition { lambda, mu })
}

/// Which of the three constructions produced the fake matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeceptionBranch {
    /// No strategy beats the target on its column, so the fake matrix just
    /// makes that column strictly dominant.
    DominantColumn,
    /// The target payoff clears the restricted maximin, so every other
    /// column punishes: the fake payoffs are the negated leader payoffs.
    PunishAll { s_hat: Vec<usize>, k: usize, alpha: Rational },
    /// Punishment confined to the threat's active columns with positive
    /// Farkas multipliers.
    PunishSupport {
        geometry: ReducedGeometry,
        decomposition: FarkasDecomposition,
        s_hat: Vec<usize>,
        k: usize,
        alpha: Rational,
    },
}

/// A fake matrix together with the analysis that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeceptionConstruction {
    pub certificate: InducibilityCertificate,
    pub branch: DeceptionBranch,
    pub fake: PayoffMatrix,
    /// Largest bit length among the numerators and denominators of the
    /// fake payoffs. Tiny support multipliers can blow these up, so the
    /// size is reported rather than normalized away.
    pub fake_entry_bits: u64,
}

/// Largest bit length among the numerators and denominators of the
/// matrix entries.
fn max_entry_bits(matrix: &PayoffMatrix) -> u64 {
    let mut bits = 0;
    for i in 0..matrix.rows() {
        for col in 0..matrix.cols() {
            let entry = matrix.entry(i, col);
            bits = bits.max(entry.numer().bits()).max(entry.denom().bits());
        }
    }
    bits
}

/// Matrix that pays 1 on column `j` and 0 elsewhere.
pub(crate) fn dominant_column_matrix(rows: usize, cols: usize, j: usize) -> PayoffMatrix {
    let entries = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|col| if col == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    PayoffMatrix::from_rows(entries).expect("dominant matrix is rectangular")
}

/// Fake payoffs at the pure strategies: punishing columns carry the
/// negated leader payoffs, excluded columns sit strictly below column `k`
/// everywhere, and the target column ties with `k` exactly where the
/// leader does not beat the target payoff.
fn punishment_matrix(
    leader: &PayoffMatrix,
    target: &StrategyProfile,
    s_hat: &[usize],
    k: usize,
    alpha: &Rational,
) -> PayoffMatrix {
    let target_value = leader.payoff(&target.strategy, target.response);
    let entries = (0..leader.rows())
        .map(|i| {
            (0..leader.cols())
                .map(|col| {
                    if col == target.response {
                        -leader.entry(i, k)
                            + alpha * &(&target_value - leader.entry(i, target.response))
                    } else if s_hat.contains(&col) {
                        -leader.entry(i, col)
                    } else {
                        -leader.entry(i, k) - Rational::one()
                    }
                })
                .collect()
        })
        .collect();
    PayoffMatrix::from_rows(entries).expect("punishment matrix is rectangular")
}

/// Smallest column of `s_hat` minimizing the leader's payoff at the target
/// strategy.
pub(crate) fn cheapest_column(leader: &PayoffMatrix, x: &MixedStrategy, s_hat: &[usize]) -> usize {
    let mut best = s_hat[0];
    let mut best_value = leader.payoff(x, best);
    for &col in &s_hat[1..] {
        let value = leader.payoff(x, col);
        if value < best_value {
            best = col;
            best_value = value;
        }
    }
    best
}

/// Builds a fake follower matrix whose equilibria include the target.
pub fn construct_inducing_payoffs(
    leader: &PayoffMatrix,
    target: &StrategyProfile,
) -> Result<DeceptionConstruction, DeceptionError> {
    let certificate = certify(leader, target)?;
    if certificate.target_value < certificate.maximin.value {
        return Err(DeceptionError::NotInducible {
            leader_value: certificate.target_value.clone(),
            maximin: certificate.maximin.value.clone(),
        });
    }
    let branch = match &certificate.threat.value {
        ExtendedRational::MinusInfinity => DeceptionBranch::DominantColumn,
        ExtendedRational::PlusInfinity => {
            // A single-column target is inducible only when nothing beats
            // it, which the dominant branch already caught.
            return Err(DeceptionError::Internal("unbounded threat on an inducible target"));
        }
        ExtendedRational::Finite(_) => {
            if ExtendedRational::Finite(certificate.target_value.clone()) >= certificate.restricted {
                let s_hat: Vec<usize> =
                    (0..leader.cols()).filter(|&col| col != target.response).collect();
                let k = cheapest_column(leader, &target.strategy, &s_hat);
                DeceptionBranch::PunishAll { s_hat, k, alpha: Rational::one() }
            } else {
                let witness = certificate
                    .threat
                    .witness
                    .as_ref()
                    .ok_or(DeceptionError::Internal("finite threat without witness"))?;
                let geometry = ReducedGeometry::new(leader, witness);
                let decomposition = farkas_decompose(&geometry, target.response, &certificate.threat.active)?;
                let s_hat: Vec<usize> = decomposition
                    .lambda
                    .iter()
                    .filter(|(_, value)| value > &Rational::zero())
                    .map(|(col, _)| *col)
                    .collect();
                if s_hat.is_empty() {
                    return Err(DeceptionError::Internal("empty punishment support"));
                }
                let k = cheapest_column(leader, &target.strategy, &s_hat);
                let lambda_k = decomposition
                    .lambda
                    .iter()
                    .find(|(col, _)| *col == k)
                    .map(|(_, value)| value.clone())
                    .expect("k is drawn from the support");
                DeceptionBranch::PunishSupport {
                    geometry,
                    decomposition,
                    s_hat,
                    k,
                    alpha: lambda_k.recip(),
                }
            }
        }
    };
    let fake = match &branch {
        DeceptionBranch::DominantColumn => {
            dominant_column_matrix(leader.rows(), leader.cols(), target.response)
        }
        DeceptionBranch::PunishAll { s_hat, k, alpha }
        | DeceptionBranch::PunishSupport { s_hat, k, alpha, .. } => {
            punishment_matrix(leader, target, s_hat, *k, alpha)
        }
    };
    let fake_entry_bits = max_entry_bits(&fake);
    Ok(DeceptionConstruction { certificate, branch, fake, fake_entry_bits })
}

/// The follower's best deception: its optimal inducible outcome plus a
/// fake matrix that realizes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalDeception {
    pub outcome: InducibleOutcome,
    pub construction: DeceptionConstruction,
}

pub fn deceive_optimal(game: &Game) -> Result<OptimalDeception, DeceptionError> {
    let outcome = optimal_inducible_profile(game)?;
    let construction = construct_inducing_payoffs(game.leader(), &outcome.profile)?;
    Ok(OptimalDeception { outcome, construction })
}
