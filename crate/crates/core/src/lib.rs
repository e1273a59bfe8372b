//! Computations with the Bernoulli convolution measures μ of scale 1/(2n).
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: exact quarter-integer arithmetic, the zero set of μ̂, the
//!   exact sign/argument reduction, certified evaluation of μ̂ and an
//!   independent chaos-game estimator.
//! - [`spectrum`]: digit words for the canonical spectrum Γ, enumeration and
//!   the strata Γ_k (and Γ̃_k for n = 2).
//! - [`operators`]: the Cuntz isometries S₀, S₁, their adjoints, the scaling
//!   unitary U and truncated Fourier expansions with Parseval diagnostics.
//! - [`matrix`]: truncated matrices of U and the structural checks run
//!   against them, plus CSV/JSON/PGM/SVG export.
//!
//! Every zero/sign decision is made in exact integer arithmetic; floating
//! point only appears when a magnitude of μ̂ is evaluated, and every such
//! magnitude carries an error bound.

pub mod arith;
pub mod error;
pub mod matrix;
pub mod operators;
pub mod report;
pub mod spectrum;

pub use arith::{
    chaos_game_estimate, in_zero_set, mu_hat, mu_hat_at, mu_hat_product, mu_hat_shifted,
    reduce_argument, BernoulliParams, ChaosEstimate, Frequency, MuHatValue, QuarterInt, Reduction,
};
pub use error::{Error, Result};
pub use report::{Report, Violation};
pub use spectrum::{DigitWord, GammaOrder, Stratum, TildeStratum};
