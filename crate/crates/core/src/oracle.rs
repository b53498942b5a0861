//! Exact mutual information of a discrete input over AWGN, computed by
//! adaptive quadrature of the Gaussian-mixture output density.
//!
//! The output of `Y = scale * X + Z` with `X` distributed over a finite
//! constellation and `Z` standard normal has density
//! `P(y) = sum_i p_i N(y; scale * s_i, 1)`. Its differential entropy
//! `h(Y) = -int P log2 P` is integrated with an adaptive 15-point
//! Gauss-Legendre rule, and `I(X; Y) = h(Y) - 0.5 log2(2 pi e)`.
//!
//! This module is the referee for the closed-form layer in
//! [`crate::bounds`] and never calls into it. Initial panel boundaries are
//! seeded at every mixture mean and `tail_sigma` noise deviations around it,
//! so well-separated modes cannot be stepped over by the error estimator.
//! Panels are accumulated left to right with compensated summation, so the
//! result is deterministic (bit-for-bit) for a fixed configuration.

use crate::constellation::Constellation;
use crate::{Error, Result};
use std::f64::consts::{E, TAU};

/// Accuracy controls for the mixture-entropy quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Target absolute error on the entropy, in bits.
    pub abs_tol: f64,
    /// Hard cap on panel subdivisions before giving up.
    pub max_subdivisions: usize,
    /// Half-width of the integration support beyond the extreme mixture
    /// means, in noise standard deviations. Must be at least 8; the Gaussian
    /// tail beyond 8 sigma contributes less than 1e-15 bits.
    pub tail_sigma: f64,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, max_subdivisions: usize, tail_sigma: f64) -> Result<Self> {
        let spec = Self {
            abs_tol,
            max_subdivisions,
            tail_sigma,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !self.abs_tol.is_finite() {
            return Err(Error::Domain(format!(
                "quadrature abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if !(self.tail_sigma >= 8.0) || !self.tail_sigma.is_finite() {
            return Err(Error::Domain(format!(
                "quadrature tail_sigma must be at least 8, got {}",
                self.tail_sigma
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Domain(
                "quadrature max_subdivisions must be positive".into(),
            ));
        }
        Ok(())
    }
}

impl Default for QuadratureSpec {
    /// `abs_tol = 1e-8` bits, `tail_sigma = 10`: two orders of margin under
    /// the 1e-6 tolerance used by the sandwich tests.
    fn default() -> Self {
        Self {
            abs_tol: 1e-8,
            max_subdivisions: 40_000,
            tail_sigma: 10.0,
        }
    }
}

/// Differential entropy of the unit-variance Gaussian, `0.5 * log2(2 pi e)`
/// bits (about 2.04710).
pub fn gaussian_entropy_bits() -> f64 {
    0.5 * (TAU * E).log2()
}

/// Differential entropy `h(Y)` in bits of `Y = scale * X + Z`, `X ~ c`,
/// `Z ~ N(0, 1)`, by adaptive quadrature over
/// `[min mean - tail_sigma, max mean + tail_sigma]`.
///
/// Deterministic for fixed inputs. Fails with the achieved error estimate if
/// the subdivision budget is exhausted first.
pub fn mixture_entropy(c: &Constellation, scale: f64, q: &QuadratureSpec) -> Result<f64> {
    q.validate()?;
    if !scale.is_finite() || scale < 0.0 {
        return Err(Error::Domain(format!(
            "mixture_entropy: scale must be finite and nonnegative, got {scale}"
        )));
    }
    let mixture = Mixture::new(c, scale);
    let panels = mixture.initial_panels(q.tail_sigma);
    let (h, _err) = integrate_adaptive(
        |y| mixture.entropy_integrand(y),
        &panels,
        q.abs_tol,
        q.max_subdivisions,
    )?;
    Ok(h)
}

/// Exact mutual information `I(X; sqrt(snr) X + Z)` in bits for `X ~ c`,
/// computed as `h(Y) - 0.5 log2(2 pi e)` and clipped at zero.
pub fn mi_exact(c: &Constellation, snr: f64, q: &QuadratureSpec) -> Result<f64> {
    if !snr.is_finite() || snr < 0.0 {
        return Err(Error::Domain(format!(
            "mi_exact: snr must be finite and nonnegative, got {snr}"
        )));
    }
    let h = mixture_entropy(c, snr.sqrt(), q)?;
    Ok((h - gaussian_entropy_bits()).max(0.0))
}

/// Unit-variance Gaussian mixture with components sorted by mean.
struct Mixture {
    /// `(mean, mass)` pairs, ascending in mean.
    components: Vec<(f64, f64)>,
}

/// `1 / sqrt(2 pi)`.
const INV_SQRT_TAU: f64 = 0.398_942_280_401_432_7;

/// A component further than this many sigmas from the evaluation point
/// underflows f64 to exactly zero, so it can be skipped without changing the
/// result bit-for-bit (`exp(-40^2/2) = exp(-800)` underflows).
const COMPONENT_WINDOW: f64 = 40.0;

impl Mixture {
    fn new(c: &Constellation, scale: f64) -> Self {
        let mut components: Vec<(f64, f64)> = c
            .points()
            .iter()
            .zip(c.masses())
            .map(|(s, p)| (scale * s, *p))
            .collect();
        components.sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).expect("finite means"));
        Self { components }
    }

    fn density(&self, y: f64) -> f64 {
        let lo = self
            .components
            .partition_point(|&(m, _)| m < y - COMPONENT_WINDOW);
        let mut p = 0.0;
        for &(m, mass) in &self.components[lo..] {
            if m > y + COMPONENT_WINDOW {
                break;
            }
            let dy = y - m;
            p += mass * INV_SQRT_TAU * (-0.5 * dy * dy).exp();
        }
        p
    }

    fn entropy_integrand(&self, y: f64) -> f64 {
        let p = self.density(y);
        // x log x -> 0; guard the log against underflowed densities
        if p < 1e-300 {
            0.0
        } else {
            -p * p.log2()
        }
    }

    /// Panel boundaries seeded at every mean and `tail` sigmas around it.
    fn initial_panels(&self, tail: f64) -> Vec<(f64, f64)> {
        let lo = self.components.first().expect("nonempty").0 - tail;
        let hi = self.components.last().expect("nonempty").0 + tail;
        let mut cuts = vec![lo];
        for &(m, _) in &self.components {
            for c in [m - tail, m, m + tail] {
                if c > lo && c < hi {
                    cuts.push(c);
                }
            }
        }
        cuts.push(hi);
        cuts.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite cuts"));
        let min_width = 1e-9 * (hi - lo).max(1.0);
        let mut panels = Vec::with_capacity(cuts.len());
        let mut left = cuts[0];
        for &c in &cuts[1..] {
            if c - left >= min_width {
                panels.push((left, c));
                left = c;
            }
        }
        if panels.is_empty() {
            panels.push((lo, hi));
        }
        panels
    }
}

// 15-point Gauss-Legendre rule on [-1, 1] (nodes symmetric about 0).
const GL15_NODES: [f64; 15] = [
    -0.987_992_518_020_485_4,
    -0.937_273_392_400_706_0,
    -0.848_206_583_410_427_2,
    -0.724_417_731_360_170_1,
    -0.570_972_172_608_538_8,
    -0.394_151_347_077_563_4,
    -0.201_194_093_997_434_5,
    0.0,
    0.201_194_093_997_434_5,
    0.394_151_347_077_563_4,
    0.570_972_172_608_538_8,
    0.724_417_731_360_170_1,
    0.848_206_583_410_427_2,
    0.937_273_392_400_706_0,
    0.987_992_518_020_485_4,
];
const GL15_WEIGHTS: [f64; 15] = [
    0.030_753_241_996_117_3,
    0.070_366_047_488_108_1,
    0.107_159_220_467_171_9,
    0.139_570_677_926_154_3,
    0.166_269_205_816_993_9,
    0.186_161_000_015_562_2,
    0.198_431_485_327_111_6,
    0.202_578_241_925_561_3,
    0.198_431_485_327_111_6,
    0.186_161_000_015_562_2,
    0.166_269_205_816_993_9,
    0.139_570_677_926_154_3,
    0.107_159_220_467_171_9,
    0.070_366_047_488_108_1,
    0.030_753_241_996_117_3,
];

fn gl15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for (x, w) in GL15_NODES.iter().zip(&GL15_WEIGHTS) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Compensated (Kahan) accumulator; keeps panel summation reproducible and
/// accurate independent of panel count.
#[derive(Default)]
struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Adaptive bisection over the given initial panels. Each panel is accepted
/// when the difference between its one-shot rule and the sum of its halves
/// falls below its share of the tolerance (halved on every split, so the
/// accepted errors total at most `abs_tol`) or below the machine-noise floor.
fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    panels: &[(f64, f64)],
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<(f64, f64)> {
    struct Panel {
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
    }

    let per_panel_tol = abs_tol / panels.len() as f64;
    // stack, pushed in reverse so panels pop left to right
    let mut stack: Vec<Panel> = panels
        .iter()
        .rev()
        .map(|&(a, b)| Panel {
            a,
            b,
            whole: gl15(&f, a, b),
            tol: per_panel_tol,
        })
        .collect();

    let mut sum = KahanSum::default();
    let mut err_accepted = 0.0;
    let mut subdivisions = 0usize;

    while let Some(p) = stack.pop() {
        let mid = 0.5 * (p.a + p.b);
        let left = gl15(&f, p.a, mid);
        let right = gl15(&f, mid, p.b);
        let refined = left + right;
        let err = (refined - p.whole).abs();
        let noise_floor = 1e-15 * (1.0 + refined.abs());
        if err <= p.tol || err <= noise_floor {
            sum.add(refined);
            err_accepted += err;
        } else {
            subdivisions += 1;
            if subdivisions > max_subdivisions {
                return Err(Error::QuadratureDidNotConverge {
                    achieved: err_accepted + err,
                    target: abs_tol,
                    subdivisions: max_subdivisions,
                });
            }
            let child_tol = 0.5 * p.tol;
            stack.push(Panel {
                a: mid,
                b: p.b,
                whole: right,
                tol: child_tol,
            });
            stack.push(Panel {
                a: p.a,
                b: mid,
                whole: left,
                tol: child_tol,
            });
        }
    }
    Ok((sum.sum, err_accepted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gl15_rule_sanity() {
        let wsum: f64 = GL15_WEIGHTS.iter().sum();
        assert_abs_diff_eq!(wsum, 2.0, epsilon = 1e-14);
        let quad = gl15(&|x: f64| x * x, 0.0, 1.0);
        assert_abs_diff_eq!(quad, 1.0 / 3.0, epsilon = 1e-14);
        // degree-29 polynomial exactness
        let quad = gl15(&|x: f64| x.powi(29), 0.0, 1.0);
        assert_abs_diff_eq!(quad, 1.0 / 30.0, epsilon = 1e-13);
    }

    #[test]
    fn adaptive_integrator_handles_separated_bumps() {
        // two unit-area Gaussians far apart, seeded like the mixture does
        let f = |y: f64| {
            INV_SQRT_TAU
                * (0.5 * (-0.5 * (y + 1000.0) * (y + 1000.0)).exp()
                    + 0.5 * (-0.5 * (y - 1000.0) * (y - 1000.0)).exp())
        };
        let panels = vec![
            (-1010.0, -1000.0),
            (-1000.0, -990.0),
            (-990.0, 990.0),
            (990.0, 1000.0),
            (1000.0, 1010.0),
        ];
        let (v, _) = integrate_adaptive(f, &panels, 1e-10, 10_000).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn pure_gaussian_entropy() {
        let q = QuadratureSpec::default();
        let single = Constellation::pam(1).unwrap();
        for scale in [0.0, 1.0, 123.0] {
            let h = mixture_entropy(&single, scale, &q).unwrap();
            assert_abs_diff_eq!(h, gaussian_entropy_bits(), epsilon = 1e-8);
        }
        // zero scale collapses any mixture
        let bpsk = Constellation::pam(2).unwrap();
        let h = mixture_entropy(&bpsk, 0.0, &q).unwrap();
        assert_abs_diff_eq!(h, gaussian_entropy_bits(), epsilon = 1e-8);
        assert_abs_diff_eq!(gaussian_entropy_bits(), 2.04709, epsilon = 1e-5);
    }

    #[test]
    fn well_separated_bpsk_entropy_splits() {
        // components at +-10 with unit variance barely overlap, so
        // h(Y) ~ H(X) + h(Z) = 1 + 0.5 log2(2 pi e)
        let q = QuadratureSpec::default();
        let bpsk = Constellation::pam(2).unwrap();
        let h = mixture_entropy(&bpsk, 10.0, &q).unwrap();
        assert_abs_diff_eq!(h, 1.0 + gaussian_entropy_bits(), epsilon = 1e-4);
        // tightening the tolerance confirms the same value
        let tight = QuadratureSpec::new(1e-10, 200_000, 10.0).unwrap();
        let h_tight = mixture_entropy(&bpsk, 10.0, &tight).unwrap();
        assert_abs_diff_eq!(h, h_tight, epsilon = 2e-8);
    }

    #[test]
    fn mi_exact_zero_snr_is_zero() {
        let q = QuadratureSpec::default();
        for n in [1usize, 2, 4, 9] {
            let c = Constellation::pam(n).unwrap();
            let mi = mi_exact(&c, 0.0, &q).unwrap();
            assert_abs_diff_eq!(mi, 0.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn mi_exact_bpsk_high_snr_saturates_at_one_bit() {
        let q = QuadratureSpec::default();
        let bpsk = Constellation::pam(2).unwrap();
        let mi = mi_exact(&bpsk, 100.0, &q).unwrap();
        assert!(mi <= 1.0 + 1e-8);
        assert_abs_diff_eq!(mi, 1.0, epsilon = 1e-4);
    }

    #[test]
    fn mi_exact_is_monotone_in_snr() {
        let q = QuadratureSpec::default();
        let c = Constellation::pam(4).unwrap();
        let mut prev = -1.0;
        for db in (-10..=40).step_by(2) {
            let snr = 10f64.powf(db as f64 / 10.0);
            let mi = mi_exact(&c, snr, &q).unwrap();
            assert!(mi >= prev - 1e-7, "not monotone at {db} dB");
            assert!(mi <= 2.0 + 1e-8);
            prev = mi;
        }
    }

    #[test]
    fn mi_exact_is_scale_invariant() {
        let q = QuadratureSpec::default();
        let base = Constellation::uniform(vec![-1.3, -0.2, 0.4, 1.1]).unwrap();
        let scaled =
            Constellation::uniform(base.points().iter().map(|s| 3.0 * s).collect()).unwrap();
        for snr in [0.5, 10.0, 300.0] {
            let a = mi_exact(&base, snr, &q).unwrap();
            let b = mi_exact(&scaled, snr / 9.0, &q).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 1e-7);
        }
    }

    #[test]
    fn mi_exact_self_consistency_under_spec_changes() {
        let base = QuadratureSpec::default();
        let wide = QuadratureSpec::new(base.abs_tol, base.max_subdivisions, 20.0).unwrap();
        let tight =
            QuadratureSpec::new(base.abs_tol / 2.0, 2 * base.max_subdivisions, 10.0).unwrap();
        let c = Constellation::pam(8).unwrap();
        for snr in [1.0, 40.0, 1000.0] {
            let v = mi_exact(&c, snr, &base).unwrap();
            let vw = mi_exact(&c, snr, &wide).unwrap();
            let vt = mi_exact(&c, snr, &tight).unwrap();
            assert!((v - vw).abs() <= 2.0 * base.abs_tol);
            assert!((v - vt).abs() <= 2.0 * base.abs_tol);
        }
    }

    #[test]
    fn tiny_subdivision_budget_reports_achieved_error() {
        // well-separated modes need refinement of the bump panels; a budget
        // of one split cannot get there
        let q = QuadratureSpec::new(1e-13, 1, 10.0).unwrap();
        let c = Constellation::pam(4).unwrap();
        match mi_exact(&c, 1e6, &q) {
            Err(Error::QuadratureDidNotConverge {
                achieved,
                target,
                subdivisions,
            }) => {
                assert!(achieved > 0.0);
                assert_eq!(target, 1e-13);
                assert_eq!(subdivisions, 1);
            }
            other => panic!("expected convergence failure, got {other:?}"),
        }
    }

    #[test]
    fn quadrature_spec_validation() {
        assert!(QuadratureSpec::new(0.0, 100, 10.0).is_err());
        assert!(QuadratureSpec::new(1e-8, 0, 10.0).is_err());
        assert!(QuadratureSpec::new(1e-8, 100, 7.9).is_err());
        assert!(QuadratureSpec::new(1e-8, 100, 8.0).is_ok());
    }

    #[test]
    fn determinism_bit_for_bit() {
        let q = QuadratureSpec::default();
        let c = Constellation::uniform(vec![-2.0, -0.5, 0.1, 1.7]).unwrap();
        let a = mi_exact(&c, 33.0, &q).unwrap();
        let b = mi_exact(&c, 33.0, &q).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
