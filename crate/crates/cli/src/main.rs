//! Command line front end for the deception solver.
//!
//! Each command loads a JSON game file, runs one pipeline, writes a
//! machine-readable certificate to standard output (or `--out`), and prints
//! a one-line human summary on standard error. Exit codes: 0 success, 2
//! parse or validation failure, 3 tied column maxima blocking the
//! uniqueness construction, 4 failed verification, 5 internal consistency
//! failure.

mod certificate;
mod format;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ruse_core::game::{Game, GameError, PayoffMatrix, StrategyProfile};
use ruse_core::rational::{format_rational, parse_rational, Rational};
use ruse_core::sse;
use ruse_deceive::{
    deceive_optimal, maximin, optimal_inducible_profile, strong_deceive, DeceptionBranch,
    DeceptionError, StrongBranch, StrongError,
};
use ruse_verify::{verify_induces, VerificationReport};

use certificate::{
    extended_strings, matrix_strings, one_based, profile_json, rational_strings, Certificate,
    DeceiveJson, InducibleJson, InputDigest, MaximinJson, SseJson, StrongJson, VerificationBlock,
    VerifyJson,
};

#[derive(Parser)]
#[command(name = "ruse", version)]
#[command(about = "Compute and audit payoff deceptions in committed-strategy games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Leader's guaranteed value and a strategy attaining it
    Maximin {
        game: PathBuf,
        /// Write the certificate to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equilibrium of the reported game, follower ties favouring the leader
    Sse {
        game: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Best follower payoff over all inducible commitments
    Inducible {
        game: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fake follower payoffs that induce the best inducible commitment
    Deceive {
        game: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fake payoffs forcing a unique equilibrium within epsilon of the optimum
    DeceiveStrong {
        game: PathBuf,
        /// Follower value conceded for uniqueness, an exact rational
        #[arg(long, default_value = "1/1000")]
        epsilon: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit a fake matrix against the original game at a given profile
    Verify {
        game: PathBuf,
        /// Fake payoffs: a game file, a bare matrix, or an emitted certificate
        fake: PathBuf,
        /// Profile to check, "x1,...,xm;j" with a 1-based column
        #[arg(long)]
        profile: String,
        /// Also require the profile to be the only equilibrium
        #[arg(long)]
        unique: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Degenerate { column: usize },
    VerificationFailed(Vec<String>),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Degenerate { .. } => 3,
            CliError::VerificationFailed(_) => 4,
            CliError::Internal(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(message) => write!(f, "{message}"),
            CliError::Degenerate { column } => write!(
                f,
                "leader column {column} attains its maximum in more than one row; \
                 no fake payoffs can make an equilibrium there unique"
            ),
            CliError::VerificationFailed(violations) => {
                write!(f, "verification failed: {}", violations.join("; "))
            }
            CliError::Internal(message) => write!(f, "internal consistency failure: {message}"),
        }
    }
}

impl From<GameError> for CliError {
    fn from(err: GameError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<DeceptionError> for CliError {
    fn from(err: DeceptionError) -> Self {
        match err {
            DeceptionError::Game(inner) => inner.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<StrongError> for CliError {
    fn from(err: StrongError) -> Self {
        match err {
            StrongError::Game(inner) => inner.into(),
            StrongError::MaxDegenerate { column } => CliError::Degenerate { column: column + 1 },
            StrongError::InvalidEpsilon { .. } => CliError::Input(err.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Maximin { game, out } => cmd_maximin(&game, out.as_deref()),
        Command::Sse { game, out } => cmd_sse(&game, out.as_deref()),
        Command::Inducible { game, out } => cmd_inducible(&game, out.as_deref()),
        Command::Deceive { game, out } => cmd_deceive(&game, out.as_deref()),
        Command::DeceiveStrong { game, epsilon, out } => {
            cmd_deceive_strong(&game, &epsilon, out.as_deref())
        }
        Command::Verify { game, fake, profile, unique, out } => {
            cmd_verify(&game, &fake, &profile, unique, out.as_deref())
        }
    }
}

fn emit<T: serde::Serialize>(
    cert: &Certificate<T>,
    out: Option<&Path>,
    summary: String,
) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(cert)
        .map_err(|err| CliError::Internal(format!("certificate serialization: {err}")))?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|err| CliError::Input(format!("cannot write {}: {err}", path.display())))?,
        None => print!("{text}"),
    }
    eprintln!("{summary}");
    Ok(())
}

fn join_rationals(values: &[Rational]) -> String {
    values.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

fn game_input(sha256: String) -> Vec<InputDigest> {
    vec![InputDigest { role: "game", sha256 }]
}

/// Audits an emitted fake matrix and refuses to certify it on any failure;
/// a construction that does not survive its own audit is a solver bug, not
/// a property of the input.
fn audited(
    game: &Game,
    fake: &PayoffMatrix,
    profile: &StrategyProfile,
    check_unique: bool,
) -> Result<VerificationReport, CliError> {
    let report = verify_induces(game.leader(), fake, profile, check_unique)?;
    if !report.violated_checks.is_empty() {
        return Err(CliError::Internal(format!(
            "constructed matrix failed its audit: {}",
            report.violated_checks.join("; ")
        )));
    }
    Ok(report)
}

fn verification_block(report: &VerificationReport) -> VerificationBlock {
    VerificationBlock {
        is_sse: report.is_sse,
        is_unique: report.is_unique,
        violations: report.violated_checks.clone(),
    }
}

fn cmd_maximin(path: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let loaded = format::load_game(path)?;
    let result = maximin(loaded.game.leader());
    let summary = format!(
        "maximin value {} at ({})",
        format_rational(&result.value),
        join_rationals(result.witness.probs())
    );
    let cert = Certificate {
        command: "maximin",
        inputs: game_input(loaded.sha256),
        result: MaximinJson {
            maximin: format_rational(&result.value),
            witness: rational_strings(result.witness.probs()),
        },
        verification: None,
    };
    emit(&cert, out, summary)
}

fn cmd_sse(path: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let loaded = format::load_game(path)?;
    let result = sse::compute_sse(loaded.game.leader(), loaded.game.follower_required()?)?;
    let summary = format!(
        "equilibrium: leader {}, follower {} at ({}; column {})",
        format_rational(&result.leader_value),
        format_rational(&result.follower_value),
        join_rationals(result.profile.strategy.probs()),
        result.profile.response + 1
    );
    let cert = Certificate {
        command: "sse",
        inputs: game_input(loaded.sha256),
        result: SseJson {
            profile: profile_json(&result.profile),
            leader_value: format_rational(&result.leader_value),
            follower_value: format_rational(&result.follower_value),
            column_values: extended_strings(&result.per_column_values),
        },
        verification: None,
    };
    emit(&cert, out, summary)
}

fn cmd_inducible(path: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let loaded = format::load_game(path)?;
    let outcome = optimal_inducible_profile(&loaded.game)?;
    let summary = format!(
        "best inducible follower value {} at ({}; column {})",
        format_rational(&outcome.follower_value),
        join_rationals(outcome.profile.strategy.probs()),
        outcome.profile.response + 1
    );
    let cert = Certificate {
        command: "inducible",
        inputs: game_input(loaded.sha256),
        result: InducibleJson {
            profile: profile_json(&outcome.profile),
            follower_value: format_rational(&outcome.follower_value),
            column_values: rational_strings(&outcome.per_column_values),
        },
        verification: None,
    };
    emit(&cert, out, summary)
}

fn cmd_deceive(path: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let loaded = format::load_game(path)?;
    let deception = deceive_optimal(&loaded.game)?;
    let honest = sse::compute_sse(loaded.game.leader(), loaded.game.follower_required()?)?;
    let report =
        audited(&loaded.game, &deception.construction.fake, &deception.outcome.profile, false)?;
    let construction = &deception.construction;
    let (branch, punishment_set, tie_break_column, alpha) = match &construction.branch {
        DeceptionBranch::DominantColumn => ("dominant-column", None, None, None),
        DeceptionBranch::PunishAll { s_hat, k, alpha } => {
            ("punish-all", Some(one_based(s_hat)), Some(k + 1), Some(format_rational(alpha)))
        }
        DeceptionBranch::PunishSupport { s_hat, k, alpha, .. } => {
            ("punish-support", Some(one_based(s_hat)), Some(k + 1), Some(format_rational(alpha)))
        }
    };
    let summary = format!(
        "follower value {} (honest equilibrium gives {}); {} construction, audit passed",
        format_rational(&deception.outcome.follower_value),
        format_rational(&honest.follower_value),
        branch
    );
    let cert = Certificate {
        command: "deceive",
        inputs: game_input(loaded.sha256),
        result: DeceiveJson {
            target: profile_json(&deception.outcome.profile),
            target_leader_value: format_rational(&construction.certificate.target_value),
            follower_value: format_rational(&deception.outcome.follower_value),
            maximin: format_rational(&construction.certificate.maximin.value),
            threat: construction.certificate.threat.value.to_string(),
            restricted_maximin: construction.certificate.restricted.to_string(),
            branch,
            punishment_set,
            tie_break_column,
            alpha,
            fake: matrix_strings(&construction.fake),
            fake_entry_bits: construction.fake_entry_bits,
        },
        verification: Some(verification_block(&report)),
    };
    emit(&cert, out, summary)
}

fn cmd_deceive_strong(path: &Path, epsilon: &str, out: Option<&Path>) -> Result<(), CliError> {
    let loaded = format::load_game(path)?;
    let epsilon = parse_rational(epsilon)
        .map_err(|err| CliError::Input(format!("--epsilon: {err}")))?;
    let construction = strong_deceive(&loaded.game, &epsilon)?;
    let report = audited(&loaded.game, &construction.fake, &construction.profile, true)?;
    let (branch, boundary, tie_break_column, alpha) = match &construction.branch {
        StrongBranch::DominantColumn => ("dominant-column", None, None, None),
        StrongBranch::Margin { boundary, k, alpha, .. } => {
            ("margin", Some(one_based(boundary)), Some(k + 1), Some(format_rational(alpha)))
        }
    };
    let summary = format!(
        "follower value {} within {} of the optimum {}; unique equilibrium verified",
        format_rational(&construction.follower_value),
        format_rational(&construction.epsilon),
        format_rational(&construction.base.follower_value)
    );
    let cert = Certificate {
        command: "deceive-strong",
        inputs: game_input(loaded.sha256),
        result: StrongJson {
            epsilon: format_rational(&construction.epsilon),
            base_follower_value: format_rational(&construction.base.follower_value),
            delta: format_rational(&construction.delta),
            profile: profile_json(&construction.profile),
            follower_value: format_rational(&construction.follower_value),
            branch,
            boundary,
            tie_break_column,
            alpha,
            fake: matrix_strings(&construction.fake),
        },
        verification: Some(verification_block(&report)),
    };
    emit(&cert, out, summary)
}

fn cmd_verify(
    game_path: &Path,
    fake_path: &Path,
    profile: &str,
    unique: bool,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let loaded = format::load_game(game_path)?;
    let (fake, fake_sha256) = format::load_fake(fake_path, &loaded.game)?;
    let target = format::parse_profile(profile, &loaded.game)?;
    let report = verify_induces(loaded.game.leader(), &fake, &target, unique)?;
    let passed = report.violated_checks.is_empty();
    let summary = if passed {
        match report.is_unique {
            Some(true) => "audit passed: the profile is the game's only equilibrium".to_string(),
            _ => "audit passed: the profile is an equilibrium of the reported game".to_string(),
        }
    } else {
        format!("audit failed {} check(s)", report.violated_checks.len())
    };
    let cert = Certificate {
        command: "verify",
        inputs: vec![
            InputDigest { role: "game", sha256: loaded.sha256 },
            InputDigest { role: "fake", sha256: fake_sha256 },
        ],
        result: VerifyJson {
            profile: profile_json(&report.target),
            unique_requested: unique,
            is_sse: report.is_sse,
            is_unique: report.is_unique,
            equilibrium_value: format_rational(&report.sse_value),
            column_values: extended_strings(&report.per_column_values),
            violations: report.violated_checks.clone(),
        },
        verification: None,
    };
    emit(&cert, out, summary)?;
    if passed {
        Ok(())
    } else {
        Err(CliError::VerificationFailed(report.violated_checks))
    }
}
