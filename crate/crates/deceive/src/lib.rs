//! What a strategic follower can gain by misreporting its payoffs.
//!
//! The leader computes an equilibrium of the game she is shown. A follower
//! that fabricates its half of that game therefore steers which commitment
//! the leader lands on. [`inducibility`] characterizes the outcomes that
//! can be reached this way, [`deception`] builds a fake payoff matrix that
//! reaches a chosen one, and [`strong`] hardens the construction so the
//! induced equilibrium is unique at an arbitrarily small cost in follower
//! value.

pub mod deception;
pub mod inducibility;
pub mod strong;

pub use deception::{
    construct_inducing_payoffs, deceive_optimal, DeceptionBranch, DeceptionConstruction,
    DeceptionError, FarkasDecomposition, OptimalDeception, ReducedGeometry,
};
pub use inducibility::{
    br_p_response, certify, is_payoff_inducible, maximin, optimal_inducible_profile,
    restricted_maximin, threat_value, InducibilityCertificate, InducibleOutcome, MaximinResult,
    ThreatAnalysis,
};
pub use strong::{
    max_degenerate_column, strong_deceive, strong_value_gap, StrongBranch, StrongConstruction,
    StrongError,
};
