//! Exact quarter-integer arithmetic and the Fourier transform μ̂.
//!
//! All arguments that appear in inner products ⟨e_ξ, e_γ⟩ = μ̂(γ − ξ) with
//! ξ, γ in Γ or pΓ are quarter-integers, so they are carried as
//! [`QuarterInt`]. The zero set of μ̂ and the factor-cancellation rule
//! μ̂(2nt) = cos(2πt)·μ̂(t) are decided exactly on that type; only the final
//! magnitude is computed in floating point, with a certified bound.

mod chaos;
mod muhat;
mod params;
mod quarter;
mod zeros;

pub use chaos::{chaos_game_estimate, ChaosEstimate};
pub use muhat::{
    mu_hat, mu_hat_at, mu_hat_product, mu_hat_shifted, tail_bound, terms_for_tolerance, MuHatValue,
};
pub use params::BernoulliParams;
pub use quarter::{Frequency, QuarterInt};
pub use zeros::{in_zero_set, reduce_argument, Reduction};
