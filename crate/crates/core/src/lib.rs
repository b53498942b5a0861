//! Numerical toolkit for the symmetric Gaussian interference channel with one
//! oblivious receiver.
//!
//! One of the two receivers never learns the interfering transmitter's
//! codebook, so it cannot jointly decode: the interference it sees is an
//! i.i.d. nuisance signal. A discrete (PAM) input at the non-oblivious
//! transmitter turns out to be both a good input and a benign interferer,
//! and this crate computes everything needed to quantify that:
//!
//! * [`constellation`] — finite real constellations and unit-energy PAM.
//! * [`bounds`] — closed-form lower/upper bounds sandwiching the mutual
//!   information of a discrete input over unit-variance AWGN.
//! * [`oracle`] — an independent adaptive-quadrature computation of the exact
//!   mutual information, used as the referee for every closed form. It never
//!   calls into [`bounds`].
//! * [`ptp`] — point-to-point analysis: SNR-adaptive constellation sizing and
//!   the additive gap to Gaussian capacity.
//! * [`region`] — achievable rate region, interference-regime classification,
//!   and gap reports against the classical channel where both receivers know
//!   both codebooks.
//! * [`gdof`] — generalized-degrees-of-freedom constraints, the numerical
//!   closure of their union, and reference sum-gDoF curves.
//!
//! All rates are in bits per channel use. SNR and INR are linear scale
//! throughout; dB conversion belongs to front ends.

use thiserror::Error;

pub mod bounds;
pub mod constellation;
pub mod gdof;
pub mod oracle;
pub mod ptp;
pub mod region;

pub use bounds::{discrete_mi_lower, gaussian_capacity, mi_bounds, BoundPair};
pub use constellation::Constellation;
pub use gdof::{
    empirical_gdof, gdof_closure, gdof_constraints, sum_gdof_classic, sum_gdof_oblivious,
    sum_gdof_tin, GdofConstraints, GdofPolygon,
};
pub use oracle::{gaussian_entropy_bits, mi_exact, mixture_entropy, QuadratureSpec};
pub use ptp::{
    choose_margin, choose_pam_size, gap_to_capacity_bound, pam_rate_lower, state_channel_gdof_ratio,
    state_channel_rate, PtpDesign,
};
pub use region::{
    achievable_region, classic_reference, classify_regime, gap_report, oblivious_user_gap_bits,
    ChannelParams, GapReport, RateRegion, Regime,
};

/// Errors surfaced by bound, oracle, and region computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument was outside a function's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Constellation construction or validation failed.
    #[error("invalid constellation: {0}")]
    InvalidConstellation(String),

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error(
        "quadrature did not converge: error estimate {achieved:.3e} bits \
         (target {target:.3e}) after {subdivisions} subdivisions"
    )]
    QuadratureDidNotConverge {
        achieved: f64,
        target: f64,
        subdivisions: usize,
    },

    /// Gap analysis was requested in an interference regime it does not cover.
    #[error("unsupported interference regime: {0}")]
    UnsupportedRegime(region::Regime),
}

pub type Result<T> = std::result::Result<T, Error>;
