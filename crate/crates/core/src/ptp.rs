//! Point-to-point AWGN analysis with SNR-adaptive PAM inputs.
//!
//! A fixed finite constellation saturates at `log2 N` bits, but a unit-energy
//! PAM whose size grows like `sqrt(snr^(1-eps))` tracks Gaussian capacity to
//! within an additive gap that grows only like `log log snr`. This module
//! provides the size rule, the margin rule, the achieved rate, the gap bound,
//! and the companion result for a channel hit by an unknown discrete nuisance.

use crate::bounds::{discrete_mi_lower_raw, gaussian_capacity, gaussian_capacity_raw};
use crate::{Error, Result};
use std::f64::consts::E;

/// Largest integer exactly representable in f64; the floor in
/// [`choose_pam_size`] is only exact below this.
const MAX_EXACT_FLOOR: f64 = 9_007_199_254_740_992.0; // 2^53

/// Number of PAM points used at signal-to-noise ratio `snr` with size margin
/// `eps`: `floor(sqrt(1 + snr^(1-eps)))`, always at least 1.
pub fn choose_pam_size(snr: f64, eps: f64) -> Result<u64> {
    if !snr.is_finite() || snr < 0.0 {
        return Err(Error::Domain(format!(
            "choose_pam_size: snr must be finite and nonnegative, got {snr}"
        )));
    }
    check_margin(eps)?;
    let arg = 1.0 + snr.powf(1.0 - eps);
    let floor = arg.sqrt().floor();
    if floor >= MAX_EXACT_FLOOR {
        return Err(Error::Domain(format!(
            "choose_pam_size: snr={snr} eps={eps} implies a size beyond exact integer range"
        )));
    }
    Ok((floor as u64).max(1))
}

fn check_margin(eps: f64) -> Result<()> {
    if !eps.is_finite() || !(0.0..1.0).contains(&eps) {
        return Err(Error::Domain(format!(
            "size margin must lie in [0, 1), got {eps}"
        )));
    }
    Ok(())
}

/// Size margin as a function of SNR: `[log2(ln(snr)/6) / log2(snr)]+`.
///
/// Zero whenever `ln(snr)/6 <= 1`, i.e. for all `snr <= e^6 ~ 403.43`, and
/// strictly below 1 everywhere else, so the value is always a valid margin
/// for [`choose_pam_size`].
pub fn choose_margin(snr: f64) -> Result<f64> {
    if !snr.is_finite() || snr <= 0.0 {
        return Err(Error::Domain(format!(
            "choose_margin: snr must be finite and positive, got {snr}"
        )));
    }
    let t = snr.ln() / 6.0;
    if t <= 1.0 {
        return Ok(0.0);
    }
    let eps = t.log2() / snr.log2();
    debug_assert!(eps < 1.0);
    Ok(eps)
}

/// Achievable rate (bits) of the unit-energy PAM chosen by
/// [`choose_pam_size`], evaluated with the exact separation statistic
/// `3 snr / (n^2 - 1)` of that constellation. The high-SNR surrogate
/// `3 snr^eps` can exceed the true statistic at low SNR, so it is not used;
/// this value is a firm lower bound at every SNR. Zero when only one point
/// fits.
pub fn pam_rate_lower(snr: f64, eps: f64) -> Result<f64> {
    let n = choose_pam_size(snr, eps)?;
    if n < 2 {
        return Ok(0.0);
    }
    let nf = n as f64;
    Ok(discrete_mi_lower_raw(n, 3.0 * snr / (nf * nf - 1.0)))
}

/// Additive gap bound (bits) between Gaussian capacity and
/// [`pam_rate_lower`] under the margin from [`choose_margin`]:
/// `[0.5 log2(ln(snr)/6)]+ + 0.5 log2(8e)` for `snr > 1`, and the trivial
/// 1-bit bound otherwise. Roughly 2.69 bits at 50 dB.
pub fn gap_to_capacity_bound(snr: f64) -> f64 {
    if !(snr > 1.0) {
        return 1.0;
    }
    let t = snr.ln() / 6.0;
    let clipped = if t > 1.0 { 0.5 * t.log2() } else { 0.0 };
    clipped + 0.5 * (8.0 * E).log2()
}

/// Adaptive-PAM design point: the chosen size, achieved rate, capacity, and
/// gap bound at one SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtpDesign {
    pub snr: f64,
    pub eps: f64,
    pub n: u64,
    pub rate_lower: f64,
    pub capacity: f64,
    pub gap_bound: f64,
}

impl PtpDesign {
    /// Design at `snr` with the margin chosen by [`choose_margin`].
    pub fn auto(snr: f64) -> Result<Self> {
        Self::with_margin(snr, choose_margin(snr)?)
    }

    /// Design at `snr` with an explicit margin.
    pub fn with_margin(snr: f64, eps: f64) -> Result<Self> {
        let n = choose_pam_size(snr, eps)?;
        let rate_lower = pam_rate_lower(snr, eps)?;
        let capacity = gaussian_capacity(snr)?;
        debug_assert!(rate_lower <= capacity + 1e-9);
        Ok(Self {
            snr,
            eps,
            n,
            rate_lower,
            capacity,
            gap_bound: gap_to_capacity_bound(snr),
        })
    }
}

/// Achievable rate (bits) of a Gaussian input over AWGN corrupted by an
/// additive `n`-point unit-energy PAM nuisance with power gain `h2`, when
/// neither terminal observes the nuisance realization:
///
/// ```text
/// [ gaussian_capacity(snr)
///   + discrete_mi_lower(n, 3 h2 / ((1 + snr)(n^2 - 1)))
///   - min(log2 n, gaussian_capacity(h2)) ]+
/// ```
///
/// A single-point nuisance is deterministic and costs nothing, so `n = 1`
/// returns the clean capacity. The value never exceeds `gaussian_capacity(snr)`.
pub fn state_channel_rate(snr: f64, h2: f64, n: u64) -> Result<f64> {
    if !snr.is_finite() || snr < 0.0 {
        return Err(Error::Domain(format!(
            "state_channel_rate: snr must be finite and nonnegative, got {snr}"
        )));
    }
    if !h2.is_finite() || h2 < 0.0 {
        return Err(Error::Domain(format!(
            "state_channel_rate: power gain must be finite and nonnegative, got {h2}"
        )));
    }
    if n < 1 {
        return Err(Error::Domain(
            "state_channel_rate: nuisance needs at least one point".into(),
        ));
    }
    if n == 1 {
        return Ok(gaussian_capacity_raw(snr));
    }
    let nf = n as f64;
    let v = gaussian_capacity_raw(snr)
        + discrete_mi_lower_raw(n, 3.0 * h2 / ((1.0 + snr) * (nf * nf - 1.0)))
        - nf.log2().min(gaussian_capacity_raw(h2));
    Ok(v.max(0.0))
}

/// Ratio of [`state_channel_rate`] to Gaussian capacity at the top of an SNR
/// grid. When the nuisance support and gain do not grow with SNR the ratio
/// approaches 1: the nuisance washes out at high SNR.
pub fn state_channel_gdof_ratio(h2: f64, n: u64, snr_grid: &[f64]) -> Result<f64> {
    validate_snr_grid(snr_grid)?;
    let top = *snr_grid.last().expect("nonempty grid");
    Ok(state_channel_rate(top, h2, n)? / gaussian_capacity_raw(top))
}

pub(crate) fn validate_snr_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Domain("snr grid must be nonempty".into()));
    }
    if grid.iter().any(|s| !s.is_finite() || *s <= 0.0) {
        return Err(Error::Domain(
            "snr grid entries must be finite and positive".into(),
        ));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("snr grid must be strictly increasing".into()));
    }
    Ok(())
}
