//! Closed-form mutual-information bounds for discrete inputs on AWGN.
//!
//! For a uniform discrete input `X` with `N` support points, minimum distance
//! `d_min`, and average energy `E`, the mutual information over the
//! unit-variance Gaussian channel `Y = sqrt(snr) X + Z` is sandwiched by
//!
//! ```text
//! discrete_mi_lower(N, snr d_min^2 / 4)  <=  I(X; Y)  <=  min(log2 N, gaussian_capacity(snr E))
//! ```
//!
//! For non-uniform masses the same derivation carries through with the
//! collision mass `sum_i p_i^2` in place of `1/N`, and [`mi_bounds`] uses
//! that form; the `log2 N` variant can exceed the true mutual information
//! once the masses are skewed (it overshoots `H(X)` at high SNR), so it is
//! exposed only as the uniform-input special case. Both sides are cheap
//! closed forms; the exact value lives in [`crate::oracle`], which validates
//! the sandwich in tests.

use crate::constellation::Constellation;
use crate::{Error, Result};
use std::f64::consts::{E, LN_2};

/// Natural-exponent underflow threshold: `exp(-x)` is below the smallest
/// subnormal f64 for `x > 745`, so the residual term is treated as exactly 0.
const EXP_UNDERFLOW_X: f64 = 745.0;

/// `0.5 * log2(e/2)`, the constant offset in the discrete-input lower bound.
pub(crate) fn half_log2_e_over_2() -> f64 {
    0.5 * (E / 2.0).log2()
}

/// Shannon capacity of the scalar Gaussian channel, `0.5 * log2(1 + x)` bits,
/// where `x` is the received signal-to-noise ratio in linear scale.
pub fn gaussian_capacity(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "gaussian_capacity: argument must be finite and nonnegative, got {x}"
        )));
    }
    Ok(gaussian_capacity_raw(x))
}

pub(crate) fn gaussian_capacity_raw(x: f64) -> f64 {
    0.5 * x.ln_1p() / LN_2
}

/// Firm lower bound, in bits, on the mutual information achieved by any
/// `n`-point discrete input over unit-variance AWGN:
///
/// ```text
/// [ log2(n) - 0.5 log2(e/2) - log2(1 + (n-1) exp(-x)) ]+
/// ```
///
/// where `x` is the separation statistic `snr * d_min^2 / 4`. The exponential
/// is base `e` while all logarithms are base 2; the mixed bases are
/// intentional and match the bound's derivation. The value always lies in
/// `[0, log2 n]` and tends to `[log2 n - 0.5 log2(e/2)]+` as `x -> inf`.
pub fn discrete_mi_lower(n: u64, x: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain(
            "discrete_mi_lower: need at least one support point".into(),
        ));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "discrete_mi_lower: separation statistic must be finite and nonnegative, got {x}"
        )));
    }
    Ok(discrete_mi_lower_raw(n, x))
}

pub(crate) fn discrete_mi_lower_raw(n: u64, x: f64) -> f64 {
    collision_mi_lower(1.0 / n as f64, x)
}

/// Mass-aware form of the lower bound with collision mass
/// `q = sum_i p_i^2` (`1/N` for a uniform input, where this reduces to
/// [`discrete_mi_lower`] exactly):
///
/// ```text
/// [ -log2(q) - 0.5 log2(e/2) - log2(1 + (1/q - 1) exp(-x)) ]+
/// ```
fn collision_mi_lower(q: f64, x: f64) -> f64 {
    debug_assert!(q > 0.0 && q <= 1.0);
    let residual = if x > EXP_UNDERFLOW_X {
        0.0
    } else {
        (1.0 / q - 1.0) * (-x).exp()
    };
    let v = -q.log2() - half_log2_e_over_2() - residual.ln_1p() / LN_2;
    v.max(0.0)
}

/// Lower and upper bounds (bits) sandwiching an exact mutual information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
}

/// Sandwich bounds on `I(X; sqrt(snr) X + Z)` for an input distributed over
/// `c` and unit-variance Gaussian noise `Z`.
///
/// Lower side: the mass-aware bound at `x = snr * d_min^2 / 4`, which equals
/// `discrete_mi_lower(N, x)` for uniform masses. Upper side:
/// `min(log2 N, gaussian_capacity(snr * energy))`. A single-point
/// constellation is deterministic and gets `(0, 0)` without touching its
/// (infinite) minimum distance. The pair is not checked against the exact
/// value here; the oracle-backed tests do that.
pub fn mi_bounds(c: &Constellation, snr: f64) -> Result<BoundPair> {
    if !snr.is_finite() || snr < 0.0 {
        return Err(Error::Domain(format!(
            "mi_bounds: snr must be finite and nonnegative, got {snr}"
        )));
    }
    let n = c.len() as u64;
    if n == 1 {
        return Ok(BoundPair {
            lower: 0.0,
            upper: 0.0,
        });
    }
    let collision_mass: f64 = c.masses().iter().map(|p| p * p).sum();
    let lower = collision_mi_lower(collision_mass, snr * c.d_min() * c.d_min() / 4.0);
    let upper = (n as f64)
        .log2()
        .min(gaussian_capacity_raw(snr * c.energy()));
    debug_assert!(lower <= upper + 1e-12);
    Ok(BoundPair { lower, upper })
}
