//! Exact-arithmetic foundations for bimatrix Stackelberg games.
//!
//! Everything downstream builds on three pieces: arbitrary-precision
//! rationals ([`rational`]), a small simplex solver with Bland's rule
//! ([`lp`]), and game containers plus strong Stackelberg equilibrium
//! computation ([`game`], [`sse`]). No floating point is used anywhere;
//! every value a caller sees is exact.

pub mod game;
pub mod lp;
pub mod rational;
pub mod sse;

mod simplex;

pub use game::{Game, GameError, MixedStrategy, PayoffMatrix, StrategyProfile};
pub use rational::{ExtendedRational, Rational};
