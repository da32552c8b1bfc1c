//! Capacity bounds for the Gaussian diamond network with `N` relays.
//!
//! A source reaches a destination only through `N` parallel relays: every
//! source-relay link has SNR `g`, every relay-destination link SNR `h`. The
//! crate computes amplify-and-forward and bursty amplify-and-forward rates,
//! cut-set style upper bounds with correlated relay inputs, a brute-force cut
//! oracle, asymmetric-gain relay selection with a scaling certificate, and a
//! Monte Carlo check of the amplify-and-forward effective SNR.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the `*64` aliases
//! are the usual entry points. Rates are in bits per channel use.

// `!(x > 0)` style guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// frozen reference values keep every digit of the high-precision oracle
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod achievability;
pub mod asymmetric;
pub mod channel_sim;
pub mod converse;
pub mod cut_oracle;
pub mod error;
mod linalg;
pub mod network;
pub mod report;
pub mod scalar;
pub mod search;

pub use achievability::{
    af_rate, bursty_af_rate, classify_regime, df_rate, optimal_duty_cycle, prescribed_duty_cycle,
    thm1_lower_bound, DutyCycle, DutyCycleOptimum,
};
pub use converse::{
    bc_mac_bound, correlation_floor, cutset_at_correlation, eta, independent_cuts_bound,
    rho_cutset_bound, simplified_cutset_bound, thm2_upper_bound, Correlation, RhoOptimum,
    RhoSearchResolution,
};
pub use error::{Error, Result};
pub use network::{Regime, SymmetricNetwork};
pub use scalar::Scalar;

/// Additive gap constant `1 + 0.5 log2 3` bounding `thm2_upper - thm1_lower`.
pub const ADDITIVE_GAP: f64 = 1.792_481_250_360_578;
/// Multiplicative constant `4 / ln(4/3)` bounding `thm2_upper / thm1_lower`.
pub const MULTIPLICATIVE_GAP: f64 = 13.904_237_987_128_828;

pub type SymmetricNetwork64 = SymmetricNetwork<f64>;
pub type SymmetricNetwork32 = SymmetricNetwork<f32>;
pub type AsymmetricNetwork64 = asymmetric::AsymmetricNetwork<f64>;
pub type AsymmetricNetwork32 = asymmetric::AsymmetricNetwork<f32>;
pub type CovarianceMatrix64 = cut_oracle::CovarianceMatrix<f64>;
pub type BoundReport64 = report::BoundReport<f64>;
pub type SimResult64 = channel_sim::SimResult<f64>;
