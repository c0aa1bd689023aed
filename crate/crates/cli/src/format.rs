//! Input side of the command line: game files, fake-matrix files, profile
//! literals, and input digests.
//!
//! A game file is a JSON object `{ "m", "n", "leader", "follower"? }` whose
//! payoff entries are JSON integers or quoted rational literals (`"p/q"` or
//! a finite decimal). Unquoted non-integer numbers are rejected rather than
//! rounded.

use sha2::{Digest, Sha256};
use std::fs;
use std::path::Path;

use ruse_core::game::{Game, MixedStrategy, PayoffMatrix, StrategyProfile};
use ruse_core::rational::{parse_rational, Rational};
use serde::Deserialize;
use serde_json::Value;

use crate::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GameFile {
    m: usize,
    n: usize,
    leader: Vec<Vec<Value>>,
    #[serde(default)]
    follower: Option<Vec<Vec<Value>>>,
}

/// A parsed game together with the digest of the bytes it came from.
pub struct LoadedGame {
    pub game: Game,
    pub sha256: String,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|err| CliError::Input(format!("cannot read {}: {err}", path.display())))
}

fn json_error(path: &Path, err: serde_json::Error) -> CliError {
    CliError::Input(format!("{}: {err}", path.display()))
}

fn payoff(value: &Value, place: String) -> Result<Rational, CliError> {
    match value {
        Value::Number(number) => match number.as_i64() {
            Some(int) => Ok(Rational::from_integer(int.into())),
            None => Err(CliError::Input(format!(
                "{place}: non-integer numeric payoff; quote it as a rational or decimal string"
            ))),
        },
        Value::String(text) => {
            parse_rational(text).map_err(|err| CliError::Input(format!("{place}: {err}")))
        }
        other => Err(CliError::Input(format!(
            "{place}: payoff must be an integer or a string, found {other}"
        ))),
    }
}

fn matrix(values: &[Vec<Value>], name: &str, m: usize, n: usize) -> Result<PayoffMatrix, CliError> {
    if values.len() != m {
        return Err(CliError::Input(format!(
            "{name} has {} rows, header says m = {m}",
            values.len()
        )));
    }
    let mut rows = Vec::with_capacity(m);
    for (i, row) in values.iter().enumerate() {
        if row.len() != n {
            return Err(CliError::Input(format!(
                "{name} row {} has {} entries, header says n = {n}",
                i + 1,
                row.len()
            )));
        }
        let mut parsed = Vec::with_capacity(n);
        for (j, value) in row.iter().enumerate() {
            parsed.push(payoff(value, format!("{name}[{}][{}]", i + 1, j + 1))?);
        }
        rows.push(parsed);
    }
    Ok(PayoffMatrix::from_rows(rows)?)
}

pub fn load_game(path: &Path) -> Result<LoadedGame, CliError> {
    let bytes = read_bytes(path)?;
    let file: GameFile = serde_json::from_slice(&bytes).map_err(|err| json_error(path, err))?;
    let leader = matrix(&file.leader, "leader", file.m, file.n)?;
    let follower = match &file.follower {
        Some(values) => Some(matrix(values, "follower", file.m, file.n)?),
        None => None,
    };
    Ok(LoadedGame { game: Game::new(leader, follower)?, sha256: digest(&bytes) })
}

/// Loads the matrix to audit. Three shapes are accepted: a certificate
/// emitted by this tool (its `result.fake` matrix), a game file (the
/// follower matrix, or the leader matrix if no follower is present), and a
/// bare JSON array of payoff rows sized like `game`.
pub fn load_fake(path: &Path, game: &Game) -> Result<(PayoffMatrix, String), CliError> {
    let bytes = read_bytes(path)?;
    let sha256 = digest(&bytes);
    let value: Value = serde_json::from_slice(&bytes).map_err(|err| json_error(path, err))?;
    let fake = match &value {
        Value::Object(fields) if fields.contains_key("result") => {
            let rows = fields["result"].get("fake").and_then(Value::as_array).ok_or_else(|| {
                CliError::Input(format!("{}: certificate has no result.fake matrix", path.display()))
            })?;
            matrix(&value_rows(rows, path)?, "result.fake", game.rows(), game.cols())?
        }
        Value::Object(_) => {
            let file: GameFile =
                serde_json::from_value(value.clone()).map_err(|err| json_error(path, err))?;
            let rows = file.follower.as_ref().unwrap_or(&file.leader);
            let name = if file.follower.is_some() { "follower" } else { "leader" };
            matrix(rows, name, file.m, file.n)?
        }
        Value::Array(rows) => matrix(&value_rows(rows, path)?, "fake", game.rows(), game.cols())?,
        _ => {
            return Err(CliError::Input(format!(
                "{}: fake payoffs must be a game file, a bare matrix, or a certificate",
                path.display()
            )))
        }
    };
    Ok((fake, sha256))
}

fn value_rows(rows: &[Value], path: &Path) -> Result<Vec<Vec<Value>>, CliError> {
    rows.iter()
        .map(|row| {
            row.as_array().cloned().ok_or_else(|| {
                CliError::Input(format!("{}: matrix rows must be arrays", path.display()))
            })
        })
        .collect()
}

/// Parses `"x1,...,xm;j"` with rational literals and a 1-based column.
pub fn parse_profile(text: &str, game: &Game) -> Result<StrategyProfile, CliError> {
    let (probs_text, response_text) = text.rsplit_once(';').ok_or_else(|| {
        CliError::Input(format!("profile {text:?} must look like \"x1,...,xm;j\""))
    })?;
    let probs = probs_text
        .split(',')
        .map(|part| {
            parse_rational(part).map_err(|err| CliError::Input(format!("profile: {err}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let response: usize = response_text.trim().parse().map_err(|_| {
        CliError::Input(format!("profile response {response_text:?} is not a column number"))
    })?;
    if response == 0 {
        return Err(CliError::Input("profile response columns are numbered from 1".into()));
    }
    let profile = StrategyProfile::new(MixedStrategy::new(probs)?, response - 1);
    game.validate_profile(&profile)?;
    Ok(profile)
}
