//! Sampled and exact properties of the constructed matrices and of the
//! characterization quantities they rest on.

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use ruse_core::game::{Game, MixedStrategy, PayoffMatrix, StrategyProfile};
use ruse_core::rational::{rat, rint, ExtendedRational, Rational};
use ruse_deceive::{
    certify, construct_inducing_payoffs, is_payoff_inducible, maximin, restricted_maximin,
    strong_deceive, threat_value, DeceptionBranch, DeceptionConstruction, ReducedGeometry,
    StrongBranch, StrongConstruction,
};
use ruse_testkit as testkit;
use ruse_testkit::fixtures;

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).fold(rint(0), |acc, v| acc + v)
}

/// First `m - 1` coordinates of a strategy.
fn reduce(strategy: &MixedStrategy) -> Vec<Rational> {
    strategy.probs()[..strategy.len() - 1].to_vec()
}

/// The support-punishment fixture plus randomly sampled inducible targets
/// across small games, paired with their constructions.
fn sampled_constructions(
    rng: &mut ChaCha8Rng,
) -> Vec<(PayoffMatrix, StrategyProfile, DeceptionConstruction)> {
    let threat = fixtures::threat_3x3();
    let target = StrategyProfile::new(
        MixedStrategy::new(vec![rat(1, 2), rat(1, 2), rint(0)]).unwrap(),
        0,
    );
    let mut out = vec![(
        threat.leader().clone(),
        target.clone(),
        construct_inducing_payoffs(threat.leader(), &target).unwrap(),
    )];
    for _ in 0..40 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let leader = testkit::matrix(rng, rows, cols);
        for _ in 0..10 {
            let target = testkit::profile(rng, rows, cols);
            if is_payoff_inducible(&leader, &target).unwrap() {
                let construction = construct_inducing_payoffs(&leader, &target).unwrap();
                out.push((leader.clone(), target, construction));
                break;
            }
        }
    }
    out
}

/// Uniqueness-forcing constructions over random games, plus fixtures for
/// the margin branch and the empty-boundary slice.
fn sampled_strong_constructions(
    rng: &mut ChaCha8Rng,
) -> Vec<(PayoffMatrix, StrongConstruction)> {
    let margin = fixtures::strict_margin_3x2();
    let mut out = vec![(
        margin.leader().clone(),
        strong_deceive(&margin, &rat(3, 100)).unwrap(),
    )];
    let interior = Game::new(
        PayoffMatrix::from_rows(vec![vec![rint(1), rint(0)], vec![rint(0), rint(-1)]]).unwrap(),
        Some(
            PayoffMatrix::from_rows(vec![vec![rint(0), rint(-5)], vec![rint(1), rint(-5)]])
                .unwrap(),
        ),
    )
    .unwrap();
    out.push((
        interior.leader().clone(),
        strong_deceive(&interior, &rat(1, 10)).unwrap(),
    ));
    let mut kept = 0;
    while kept < 25 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let game = testkit::game(rng, rows, cols);
        if let Ok(construction) = strong_deceive(&game, &rat(1, 20)) {
            out.push((game.leader().clone(), construction));
            kept += 1;
        }
    }
    out
}

/// The three defining properties of an inducing matrix: the target column
/// responds at the target, excluded columns are strictly dominated by the
/// tie-break column, and wherever the target column responds the leader
/// cannot beat her target payoff.
#[test]
fn fake_matrices_satisfy_the_pointwise_properties() {
    let mut rng = testkit::rng(0xfa6e5);
    for (leader, target, construction) in sampled_constructions(&mut rng) {
        let fake = &construction.fake;
        let j = target.response;
        let target_value = leader.payoff(&target.strategy, j);
        assert!(
            fake.best_responses(&target.strategy).contains(&j),
            "target column does not respond at the target"
        );
        if let DeceptionBranch::PunishAll { s_hat, k, .. }
        | DeceptionBranch::PunishSupport { s_hat, k, .. } = &construction.branch
        {
            for col in 0..leader.cols() {
                if col == j || s_hat.contains(&col) {
                    continue;
                }
                for i in 0..leader.rows() {
                    assert!(
                        fake.entry(i, col) < fake.entry(i, *k),
                        "excluded column {col} is not strictly dominated at row {i}"
                    );
                }
            }
        }
        for _ in 0..200 {
            let y = testkit::simplex_point(&mut rng, leader.rows());
            if fake.best_responses(&y).contains(&j) {
                assert!(
                    leader.payoff(&y, j) <= target_value,
                    "leader beats the target somewhere the target column responds"
                );
            }
        }
    }
}

/// The stored matrix agrees with its defining formula at every pure
/// strategy, re-derived here from the branch parameters alone.
#[test]
fn fake_rows_match_their_defining_formula() {
    let mut rng = testkit::rng(0xf00d);
    for (leader, target, construction) in sampled_constructions(&mut rng) {
        let j = target.response;
        let target_value = leader.payoff(&target.strategy, j);
        match &construction.branch {
            DeceptionBranch::DominantColumn => {
                for i in 0..leader.rows() {
                    for col in 0..leader.cols() {
                        let expected = if col == j { rint(1) } else { rint(0) };
                        assert_eq!(construction.fake.entry(i, col), &expected);
                    }
                }
            }
            DeceptionBranch::PunishAll { s_hat, k, alpha }
            | DeceptionBranch::PunishSupport { s_hat, k, alpha, .. } => {
                for i in 0..leader.rows() {
                    for col in 0..leader.cols() {
                        let expected = if col == j {
                            -leader.entry(i, *k)
                                + alpha * &(&target_value - leader.entry(i, j))
                        } else if s_hat.contains(&col) {
                            -leader.entry(i, col)
                        } else {
                            -leader.entry(i, *k) - rint(1)
                        };
                        assert_eq!(
                            construction.fake.entry(i, col),
                            &expected,
                            "row {i} column {col} deviates from the formula"
                        );
                    }
                }
            }
        }
    }
}

/// Support decompositions substitute back into the vector identity
/// exactly, their multipliers are nonnegative, the punishment set is the
/// positive support, and the tie-break scale is the reciprocal of the
/// tie-break column's multiplier.
#[test]
fn support_decompositions_reconstruct_the_negated_gradient() {
    let mut rng = testkit::rng(0xacc01ade);
    let mut seen = 0;
    for (_, target, construction) in sampled_constructions(&mut rng) {
        let j = target.response;
        if let DeceptionBranch::PunishSupport { geometry, decomposition, s_hat, k, alpha } =
            &construction.branch
        {
            seen += 1;
            let dim = geometry.gradients[j].len();
            for coord in 0..dim {
                let mut sum = rint(0);
                for (col, lambda) in &decomposition.lambda {
                    sum += lambda * &geometry.gradients[*col][coord];
                }
                for (i, mu) in &decomposition.mu {
                    sum += mu * &geometry.boundary_normals[*i][coord];
                }
                assert_eq!(sum, -&geometry.gradients[j][coord], "coordinate {coord} mismatch");
            }
            for (_, lambda) in &decomposition.lambda {
                assert!(lambda >= &rint(0));
            }
            for (_, mu) in &decomposition.mu {
                assert!(mu >= &rint(0));
            }
            let support: Vec<usize> = decomposition
                .lambda
                .iter()
                .filter(|(_, lambda)| lambda > &rint(0))
                .map(|(col, _)| *col)
                .collect();
            assert_eq!(&support, s_hat);
            assert!(!s_hat.is_empty());
            let lambda_k = decomposition
                .lambda
                .iter()
                .find(|(col, _)| col == k)
                .map(|(_, lambda)| lambda.clone())
                .unwrap();
            assert_eq!(alpha, &lambda_k.recip());
        }
    }
    assert!(seen >= 1, "no support-punishment instances were sampled");
}

/// The reduced geometry reproduces every column payoff as an affine
/// function anchored at the base point, and its tight boundaries never
/// decrease toward any point of the simplex.
#[test]
fn reduced_geometry_reproduces_payoffs_and_boundaries() {
    let mut rng = testkit::rng(0xbead);
    for _ in 0..40 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let leader = testkit::matrix(&mut rng, rows, cols);
        let base = testkit::simplex_point(&mut rng, rows);
        let geometry = ReducedGeometry::new(&leader, &base);
        let reduced_base = reduce(&base);
        for _ in 0..10 {
            let y = testkit::simplex_point(&mut rng, rows);
            let reduced_y = reduce(&y);
            let step: Vec<Rational> =
                reduced_y.iter().zip(&reduced_base).map(|(a, b)| a - b).collect();
            for col in 0..cols {
                let reconstructed =
                    dot(&geometry.gradients[col], &step) + leader.payoff(&base, col);
                assert_eq!(reconstructed, leader.payoff(&y, col), "column {col} payoff");
            }
            for &i in &geometry.tight {
                assert!(
                    dot(&geometry.boundary_normals[i], &step) >= rint(0),
                    "tight boundary {i} decreases into the simplex"
                );
            }
        }
    }
}

/// Which branch fired is fully determined by the certificate quantities,
/// and the tie-break column is the cheapest punishment column for the
/// leader at the target, smallest index first.
#[test]
fn branch_selection_matches_the_certificate() {
    let mut rng = testkit::rng(0xcafe);
    for (leader, target, construction) in sampled_constructions(&mut rng) {
        let certificate = &construction.certificate;
        let finite_target = ExtendedRational::Finite(certificate.target_value.clone());
        let check_tie_break = |s_hat: &[usize], k: usize| {
            let cheapest = s_hat
                .iter()
                .map(|&col| leader.payoff(&target.strategy, col))
                .min()
                .unwrap();
            let expected = s_hat
                .iter()
                .copied()
                .find(|&col| leader.payoff(&target.strategy, col) == cheapest)
                .unwrap();
            assert_eq!(k, expected, "tie-break column is not the first cheapest");
        };
        match &construction.branch {
            DeceptionBranch::DominantColumn => {
                assert_eq!(certificate.threat.value, ExtendedRational::MinusInfinity);
            }
            DeceptionBranch::PunishAll { s_hat, k, alpha } => {
                assert!(certificate.threat.value.is_finite());
                assert!(finite_target >= certificate.restricted);
                assert_eq!(alpha, &rint(1));
                let expected: Vec<usize> =
                    (0..leader.cols()).filter(|&col| col != target.response).collect();
                assert_eq!(s_hat, &expected);
                check_tie_break(s_hat, *k);
            }
            DeceptionBranch::PunishSupport { s_hat, k, .. } => {
                assert!(certificate.threat.value.is_finite());
                assert!(finite_target < certificate.restricted);
                check_tie_break(s_hat, *k);
            }
        }
    }
}

/// In the support-punishment case the threat witness must sit exactly at
/// the target's payoff level on the target column.
#[test]
fn hard_case_witness_sits_at_the_target_level() {
    let mut rng = testkit::rng(0xdead);
    for (leader, target, construction) in sampled_constructions(&mut rng) {
        if let DeceptionBranch::PunishSupport { .. } = &construction.branch {
            let witness = construction.certificate.threat.witness.as_ref().unwrap();
            assert_eq!(
                leader.payoff(witness, target.response),
                construction.certificate.target_value,
                "witness is not pinned to the target level"
            );
        }
    }
}

/// Strictly inside the deviation region, some punishment column falls
/// strictly below the threat value.
#[test]
fn beating_strategies_sink_below_the_threat() {
    let mut rng = testkit::rng(0xbeef);
    for (leader, target, construction) in sampled_constructions(&mut rng) {
        let DeceptionBranch::PunishSupport { s_hat, .. } = &construction.branch else {
            continue;
        };
        let j = target.response;
        let target_value = &construction.certificate.target_value;
        let threat = construction
            .certificate
            .threat
            .value
            .as_finite()
            .expect("support case with a non-finite threat")
            .clone();
        let column = leader.column(j);
        let best_row = (0..leader.rows())
            .max_by(|&a, &b| column[a].cmp(&column[b]))
            .unwrap();
        assert!(&column[best_row] > target_value, "deviation region is empty");
        for _ in 0..100 {
            let z = testkit::simplex_point(&mut rng, leader.rows());
            let z_value = leader.payoff(&z, j);
            // Mix z toward the best row far enough to clear the target
            // level strictly: t sits halfway between the clearing
            // threshold and 1.
            let threshold = if &z_value >= target_value {
                rint(0)
            } else {
                (target_value - &z_value) / (&column[best_row] - &z_value)
            };
            let t = (&threshold + rint(1)) / rint(2);
            let y = MixedStrategy::new(
                (0..leader.rows())
                    .map(|i| {
                        let mut p = (rint(1) - &t) * z.get(i);
                        if i == best_row {
                            p += &t;
                        }
                        p
                    })
                    .collect(),
            )
            .unwrap();
            assert!(&leader.payoff(&y, j) > target_value, "sample is not strictly inside");
            let min_punishment = s_hat
                .iter()
                .map(|&col| leader.payoff(&y, col))
                .min()
                .expect("punishment support is nonempty");
            assert!(
                min_punishment < threat,
                "no punishment column sinks below the threat strictly inside"
            );
        }
    }
}

/// Clearing the maximin value and clearing the threat value are the same
/// test, on random games and targets, using this crate's own analyses.
#[test]
fn clearing_maximin_equals_clearing_the_threat() {
    let mut rng = testkit::rng(0x5eed);
    for round in 0..200 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let leader = testkit::matrix(&mut rng, rows, cols);
        let target = testkit::profile(&mut rng, rows, cols);
        let value = ExtendedRational::Finite(leader.payoff(&target.strategy, target.response));
        let clears_maximin = value >= ExtendedRational::Finite(maximin(&leader).value);
        let clears_threat =
            value >= threat_value(&leader, &target.strategy, target.response).value;
        assert_eq!(clears_maximin, clears_threat, "round {round}: characterizations disagree");
    }
}

/// The active set recorded with a finite threat is exactly the set of
/// rival columns attaining the threat value at the witness.
#[test]
fn certificate_active_set_matches_the_witness_payoffs() {
    let mut rng = testkit::rng(0xface);
    for round in 0..100 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(2..=4);
        let leader = testkit::matrix(&mut rng, rows, cols);
        let target = testkit::profile(&mut rng, rows, cols);
        let certificate = certify(&leader, &target).unwrap();
        let Some(threat) = certificate.threat.value.as_finite() else {
            continue;
        };
        let witness = certificate.threat.witness.as_ref().unwrap();
        for col in 0..cols {
            if col == target.response {
                continue;
            }
            let payoff = leader.payoff(witness, col);
            let is_active = certificate.threat.active.contains(&col);
            assert_eq!(
                &payoff == threat,
                is_active,
                "round {round}: active set mislabels column {col}"
            );
            assert!(&payoff >= threat, "round {round}: witness payoff below the threat value");
        }
    }
}

/// Membership in the idealized response correspondence is closed under
/// midpoints, column by column.
#[test]
fn idealized_response_sets_are_midpoint_closed() {
    let mut rng = testkit::rng(0x51de5);
    for _ in 0..30 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let leader = testkit::matrix(&mut rng, rows, cols);
        let target = testkit::profile(&mut rng, rows, cols);
        let samples: Vec<MixedStrategy> =
            (0..12).map(|_| testkit::simplex_point(&mut rng, rows)).collect();
        let memberships: Vec<Vec<usize>> = samples
            .iter()
            .map(|y| ruse_deceive::br_p_response(&leader, &target, y).unwrap())
            .collect();
        for col in 0..cols {
            let members: Vec<&MixedStrategy> = samples
                .iter()
                .zip(&memberships)
                .filter(|(_, response)| response.contains(&col))
                .map(|(y, _)| y)
                .collect();
            for pair in members.windows(2) {
                let midpoint = MixedStrategy::new(
                    (0..rows)
                        .map(|i| (pair[0].get(i) + pair[1].get(i)) / rint(2))
                        .collect(),
                )
                .unwrap();
                let response = ruse_deceive::br_p_response(&leader, &target, &midpoint).unwrap();
                assert!(
                    response.contains(&col),
                    "column {col} membership is not midpoint-closed"
                );
            }
        }
    }
}

/// Off the pinned profile, a uniqueness-forcing matrix keeps the leader
/// strictly below her payoff at the profile: on the target column whenever
/// it responds, and on every other responding column outright.
#[test]
fn forced_matrices_keep_the_leader_strictly_ahead_off_target() {
    let mut rng = testkit::rng(0x57a6e);
    for (leader, construction) in sampled_strong_constructions(&mut rng) {
        let j = construction.profile.response;
        let x = &construction.profile.strategy;
        let level = leader.payoff(x, j);
        for _ in 0..200 {
            let y = testkit::simplex_point(&mut rng, leader.rows());
            if &y == x {
                continue;
            }
            for col in construction.fake.best_responses(&y) {
                if col == j {
                    assert!(
                        leader.payoff(&y, j) < level,
                        "target column responds off-profile without a strict leader loss"
                    );
                } else {
                    assert!(
                        leader.payoff(&y, col) < level,
                        "rival column {col} responds without a strict leader loss"
                    );
                }
            }
        }
    }
}

/// The margin branch ties the target column against the tie-break column
/// exactly at the pinned profile.
#[test]
fn margin_branch_ties_exactly_at_the_profile() {
    let mut rng = testkit::rng(0x7a11);
    for (_, construction) in sampled_strong_constructions(&mut rng) {
        if let StrongBranch::Margin { k, .. } = &construction.branch {
            let x = &construction.profile.strategy;
            assert_eq!(
                construction.fake.payoff(x, construction.profile.response),
                construction.fake.payoff(x, *k),
                "tie-break column does not tie at the profile"
            );
        }
    }
}

fn small_matrix() -> impl Strategy<Value = PayoffMatrix> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(
            proptest::collection::vec((-4i64..=4, 1i64..=3), cols),
            rows,
        )
        .prop_map(|entries| {
            PayoffMatrix::from_rows(
                entries
                    .into_iter()
                    .map(|row| row.into_iter().map(|(num, den)| rat(num, den)).collect())
                    .collect(),
            )
            .unwrap()
        })
    })
}

proptest! {
    /// Removing a column from the adversary's options never lowers the
    /// leader's guarantee.
    #[test]
    fn removing_a_column_never_hurts_the_guarantee(leader in small_matrix()) {
        let full = maximin(&leader).value;
        for col in 0..leader.cols() {
            prop_assert!(
                restricted_maximin(&leader, col) >= ExtendedRational::Finite(full.clone())
            );
        }
    }

    /// The maximin witness attains the maximin value as its worst column.
    #[test]
    fn maximin_witness_attains_the_value(leader in small_matrix()) {
        let result = maximin(&leader);
        let worst = (0..leader.cols())
            .map(|col| leader.payoff(&result.witness, col))
            .min()
            .unwrap();
        prop_assert_eq!(worst, result.value);
    }
}
