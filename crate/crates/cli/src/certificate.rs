//! Output side of the command line: certificate payloads rendered as
//! deterministic JSON.
//!
//! Field order is fixed by the struct definitions, every rational is in
//! canonical text form (`p`, or `p/q` in lowest terms with a positive
//! denominator), and all row and column indices are 1-based. Re-parsing a
//! certificate therefore reproduces the exact values.

use ruse_core::game::{PayoffMatrix, StrategyProfile};
use ruse_core::rational::{format_rational, ExtendedRational, Rational};
use serde::Serialize;

#[derive(Serialize)]
pub struct Certificate<T: Serialize> {
    pub command: &'static str,
    pub inputs: Vec<InputDigest>,
    pub result: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationBlock>,
}

#[derive(Serialize)]
pub struct InputDigest {
    pub role: &'static str,
    pub sha256: String,
}

/// Independent audit of an emitted fake matrix.
#[derive(Serialize)]
pub struct VerificationBlock {
    pub is_sse: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_unique: Option<bool>,
    pub violations: Vec<String>,
}

#[derive(Serialize)]
pub struct ProfileJson {
    pub strategy: Vec<String>,
    pub response: usize,
}

#[derive(Serialize)]
pub struct MaximinJson {
    pub maximin: String,
    pub witness: Vec<String>,
}

#[derive(Serialize)]
pub struct SseJson {
    pub profile: ProfileJson,
    pub leader_value: String,
    pub follower_value: String,
    pub column_values: Vec<String>,
}

#[derive(Serialize)]
pub struct InducibleJson {
    pub profile: ProfileJson,
    pub follower_value: String,
    pub column_values: Vec<String>,
}

#[derive(Serialize)]
pub struct DeceiveJson {
    pub target: ProfileJson,
    pub target_leader_value: String,
    pub follower_value: String,
    pub maximin: String,
    pub threat: String,
    pub restricted_maximin: String,
    pub branch: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub punishment_set: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tie_break_column: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    pub fake: Vec<Vec<String>>,
    pub fake_entry_bits: u64,
}

#[derive(Serialize)]
pub struct StrongJson {
    pub epsilon: String,
    pub base_follower_value: String,
    pub delta: String,
    pub profile: ProfileJson,
    pub follower_value: String,
    pub branch: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tie_break_column: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    pub fake: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct VerifyJson {
    pub profile: ProfileJson,
    pub unique_requested: bool,
    pub is_sse: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_unique: Option<bool>,
    pub equilibrium_value: String,
    pub column_values: Vec<String>,
    pub violations: Vec<String>,
}

pub fn profile_json(profile: &StrategyProfile) -> ProfileJson {
    ProfileJson {
        strategy: rational_strings(profile.strategy.probs()),
        response: profile.response + 1,
    }
}

pub fn rational_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

pub fn extended_strings(values: &[ExtendedRational]) -> Vec<String> {
    values.iter().map(ExtendedRational::to_string).collect()
}

pub fn matrix_strings(matrix: &PayoffMatrix) -> Vec<Vec<String>> {
    matrix.to_rows().iter().map(|row| rational_strings(row)).collect()
}

pub fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}
