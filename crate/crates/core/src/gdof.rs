//! Generalized degrees of freedom: per-exponent constraints, the numerical
//! closure of their union, and reference sum-gDoF curves.
//!
//! At high SNR a rate `R` scales as `d * 0.5 log2(1 + snr)`; the prelog `d`
//! is the gDoF. Interference strength is parameterized by
//! `alpha = ln(inr) / ln(snr)` and the discrete-input size by `beta`, with
//! roughly `snr^(beta/2)` constellation points. Each `beta` yields a small
//! polytope of achievable `(d1, d2)` pairs; the achievable region is the
//! union over `beta >= 0`, which this module closes numerically on a grid.

use crate::{Error, Result};

fn pos(x: f64) -> f64 {
    x.max(0.0)
}

/// gDoF caps at one `(alpha, beta)` operating point. The achievable pairs at
/// this point are `{d1 <= d1_max, d2 <= d2_max, d1 + d2 <= sum_max}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GdofConstraints {
    pub alpha: f64,
    pub beta: f64,
    pub d1_max: f64,
    pub d2_max: f64,
    pub sum_max: f64,
}

/// The three case-split caps. Splits are strict: at a threshold the zero
/// branch wins.
///
/// ```text
/// d1      <= beta            if 1 - beta > 0, else 0
/// d2      <= {beta if [alpha-1]+ - beta > 0, else 0} + 1 - min(beta, alpha)
/// d1 + d2 <= {beta if [1-alpha]+ - beta > 0, else 0} + alpha
/// ```
///
/// clipped at zero. When the `d2` first branch is live its `beta` cancels
/// the `min(beta, alpha)` term exactly (the branch condition forces
/// `beta < alpha`), so that case returns exactly 1.
pub fn gdof_constraints(alpha: f64, beta: f64) -> Result<GdofConstraints> {
    if !alpha.is_finite() || alpha < 0.0 || !beta.is_finite() || beta < 0.0 {
        return Err(Error::Domain(format!(
            "gdof_constraints: exponents must be finite and nonnegative, got alpha={alpha} beta={beta}"
        )));
    }
    let d1_max = if 1.0 - beta > 0.0 { beta } else { 0.0 };
    let d2_max = if pos(alpha - 1.0) - beta > 0.0 {
        1.0
    } else {
        pos(1.0 - beta.min(alpha))
    };
    let sum_max = if pos(1.0 - alpha) - beta > 0.0 { beta } else { 0.0 } + alpha;
    Ok(GdofConstraints {
        alpha,
        beta,
        d1_max,
        d2_max,
        sum_max,
    })
}

/// Pareto frontier of the union over a `beta` grid of the per-point
/// polytopes. `vertices` is sorted by increasing `d1` (so decreasing `d2`);
/// every achievable pair is dominated by some vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct GdofPolygon {
    pub vertices: Vec<(f64, f64)>,
    pub beta_grid: Vec<f64>,
}

impl GdofPolygon {
    pub fn max_sum(&self) -> f64 {
        self.vertices
            .iter()
            .map(|&(a, b)| a + b)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_d2(&self) -> f64 {
        self.vertices
            .iter()
            .map(|&(_, b)| b)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Whether some frontier vertex dominates `(d1, d2)` componentwise,
    /// i.e. whether the pair is achievable.
    pub fn dominates(&self, d1: f64, d2: f64) -> bool {
        self.vertices
            .iter()
            .any(|&(a, b)| a >= d1 - 1e-12 && b >= d2 - 1e-12)
    }
}

/// Numerical closure of the union over `beta_grid`: collects the Pareto
/// corners of every per-`beta` polytope and keeps the non-dominated ones.
/// Deterministic for a fixed grid.
pub fn gdof_closure(alpha: f64, beta_grid: &[f64]) -> Result<GdofPolygon> {
    if beta_grid.is_empty() {
        return Err(Error::Domain("beta grid must be nonempty".into()));
    }
    if beta_grid.iter().any(|b| !b.is_finite() || *b < 0.0) {
        return Err(Error::Domain(
            "beta grid entries must be finite and nonnegative".into(),
        ));
    }
    if beta_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain("beta grid must be sorted ascending".into()));
    }

    let mut corners: Vec<(f64, f64)> = Vec::with_capacity(2 * beta_grid.len());
    for &beta in beta_grid {
        let c = gdof_constraints(alpha, beta)?;
        let (a, b, s) = (c.d1_max, c.d2_max, c.sum_max);
        let a_reach = a.min(s);
        let b_reach = b.min(s);
        corners.push((a_reach, (s - a_reach).clamp(0.0, b)));
        corners.push(((s - b_reach).clamp(0.0, a), b_reach));
    }

    // Pareto filter: sort by d1 descending (d2 descending breaks ties), then
    // keep points that improve the running best d2.
    corners.sort_unstable_by(|p, q| {
        q.0.partial_cmp(&p.0)
            .expect("finite corners")
            .then(q.1.partial_cmp(&p.1).expect("finite corners"))
    });
    let mut frontier: Vec<(f64, f64)> = Vec::new();
    let mut best_d2 = f64::NEG_INFINITY;
    for (a, b) in corners {
        if b > best_d2 {
            frontier.push((a, b));
            best_d2 = b;
        }
    }
    frontier.reverse(); // ascending d1
    Ok(GdofPolygon {
        vertices: frontier,
        beta_grid: beta_grid.to_vec(),
    })
}

/// Largest achievable sum-gDoF of the oblivious-receiver scheme, by the
/// three-branch closed form:
///
/// * `1 - eps` for `0 <= alpha < 1`, valid for `0 < eps <= 1 - alpha`;
/// * `alpha - eps` for `1 <= alpha < 2`, valid for `0 < eps <= alpha - 1`;
/// * `2 - eps` for `alpha >= 2`, valid for `0 < eps <= 1`.
///
/// The valid `eps` window is empty at exactly `alpha = 1` (the underlying
/// size exponent `beta = min(1, |alpha - 1|) - eps` must stay nonnegative),
/// so that point is rejected; the one-sided limits from both sides equal
/// `1 - eps`.
pub fn sum_gdof_oblivious(alpha: f64, eps: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::Domain(format!(
            "sum_gdof_oblivious: alpha must be finite and nonnegative, got {alpha}"
        )));
    }
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::Domain(format!(
            "sum_gdof_oblivious: eps must be positive, got {eps}"
        )));
    }
    if alpha < 1.0 {
        if eps > 1.0 - alpha {
            return Err(Error::Domain(format!(
                "sum_gdof_oblivious: eps={eps} exceeds 1 - alpha = {}",
                1.0 - alpha
            )));
        }
        Ok(1.0 - eps)
    } else if alpha < 2.0 {
        if eps > alpha - 1.0 {
            return Err(Error::Domain(format!(
                "sum_gdof_oblivious: eps={eps} exceeds alpha - 1 = {}",
                alpha - 1.0
            )));
        }
        Ok(alpha - eps)
    } else {
        if eps > 1.0 {
            return Err(Error::Domain(format!(
                "sum_gdof_oblivious: eps={eps} exceeds 1"
            )));
        }
        Ok(2.0 - eps)
    }
}

/// Sum-gDoF of the classical channel as a function of the interference
/// exponent (the W-curve):
/// `2 min(1, max(alpha/2, 1 - alpha/2), max(alpha, 1 - alpha))`.
pub fn sum_gdof_classic(alpha: f64) -> f64 {
    debug_assert!(alpha >= 0.0);
    2.0 * 1.0f64
        .min((alpha / 2.0).max(1.0 - alpha / 2.0))
        .min(alpha.max(1.0 - alpha))
}

/// Sum-gDoF when both users treat interference as noise: `2 [1 - alpha]+`.
pub fn sum_gdof_tin(alpha: f64) -> f64 {
    debug_assert!(alpha >= 0.0);
    2.0 * pos(1.0 - alpha)
}

/// Empirical gDoF of a rate function over an SNR grid.
///
/// The capacity-normalized ratio behaves like `d + b / L` with
/// `L = 0.5 log2(1 + snr)`; eliminating the `1/L` term from the two largest
/// grid points gives the extrapolated prelog
/// `(R(s2) - R(s1)) / (L(s2) - L(s1))`. Exact for rates affine in `L`
/// (a constant rate gives exactly 0, the capacity itself exactly 1).
///
/// The grid must be strictly increasing, positive, and span at least three
/// decades so the extrapolation operates in the high-SNR regime.
pub fn empirical_gdof<F: Fn(f64) -> f64>(rate_fn: F, snr_grid: &[f64]) -> Result<f64> {
    crate::ptp::validate_snr_grid(snr_grid)?;
    if snr_grid.len() < 2 {
        return Err(Error::Domain(
            "empirical_gdof: need at least two grid points".into(),
        ));
    }
    let first = snr_grid[0];
    let last = snr_grid[snr_grid.len() - 1];
    if last / first < 1e3 {
        return Err(Error::Domain(format!(
            "empirical_gdof: grid must span at least three decades, got {first}..{last}"
        )));
    }
    let s1 = snr_grid[snr_grid.len() - 2];
    let s2 = last;
    let level = |s: f64| 0.5 * (1.0 + s).log2();
    Ok((rate_fn(s2) - rate_fn(s1)) / (level(s2) - level(s1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn constraints_reference_points() {
        // alpha = 4/3, beta just under the d2 case threshold
        let c = gdof_constraints(4.0 / 3.0, 1.0 / 3.0 - 0.01).unwrap();
        assert_abs_diff_eq!(c.d1_max, 0.32333333, epsilon = 1e-8);
        assert_eq!(c.d2_max, 1.0);
        assert_abs_diff_eq!(c.sum_max, 4.0 / 3.0, epsilon = 1e-12);
        let closed = (c.d1_max + c.d2_max).min(c.sum_max);
        assert_abs_diff_eq!(closed, 4.0 / 3.0 - 0.01, epsilon = 1e-12);

        let c = gdof_constraints(0.0, 0.0).unwrap();
        assert_eq!((c.d1_max, c.d2_max, c.sum_max), (0.0, 1.0, 0.0));

        let c = gdof_constraints(3.0, 0.99).unwrap();
        assert_abs_diff_eq!(c.d1_max, 0.99, epsilon = 1e-15);
        assert_eq!(c.d2_max, 1.0);
        assert_eq!(c.sum_max, 3.0);
        assert_abs_diff_eq!(
            (c.d1_max + c.d2_max).min(c.sum_max),
            1.99,
            epsilon = 1e-12
        );
    }

    #[test]
    fn constraints_match_raw_three_term_form() {
        for alpha in [0.0, 0.3, 1.0, 4.0 / 3.0, 2.0, 2.7] {
            for i in 0..=40 {
                let beta = i as f64 * 0.05;
                let c = gdof_constraints(alpha, beta).unwrap();
                let raw_d2 = if (alpha - 1.0).max(0.0) - beta > 0.0 {
                    beta
                } else {
                    0.0
                } + 1.0
                    - beta.min(alpha);
                assert_abs_diff_eq!(c.d2_max, raw_d2.max(0.0), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn constraints_case_splits_are_strict_at_thresholds() {
        let delta = 1e-9;
        // d1 split at beta = 1: the zero branch wins at the threshold
        assert_abs_diff_eq!(
            gdof_constraints(0.5, 1.0 - delta).unwrap().d1_max,
            1.0 - delta,
            epsilon = 1e-15
        );
        assert_eq!(gdof_constraints(0.5, 1.0).unwrap().d1_max, 0.0);
        assert_eq!(gdof_constraints(0.5, 1.0 + delta).unwrap().d1_max, 0.0);

        // d2 split at beta = alpha - 1 (alpha = 1.5): branch drops from 1 to
        // 1 - beta at the threshold
        let t = 0.5;
        assert_eq!(gdof_constraints(1.5, t - delta).unwrap().d2_max, 1.0);
        assert_abs_diff_eq!(
            gdof_constraints(1.5, t).unwrap().d2_max,
            1.0 - t,
            epsilon = 1e-15
        );

        // sum split at beta = 1 - alpha (alpha = 0.25)
        let t = 0.75;
        assert_abs_diff_eq!(
            gdof_constraints(0.25, t - delta).unwrap().sum_max,
            0.25 + t - delta,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(gdof_constraints(0.25, t).unwrap().sum_max, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn constraints_reject_bad_input() {
        assert!(gdof_constraints(-0.1, 0.0).is_err());
        assert!(gdof_constraints(1.0, -0.1).is_err());
        assert!(gdof_constraints(f64::NAN, 0.0).is_err());
    }

    fn grid(step: f64) -> Vec<f64> {
        let n = (1.0 / step).round() as usize;
        (0..=n).map(|i| i as f64 * step).collect()
    }

    #[test]
    fn closure_single_beta_equals_its_polytope() {
        let poly = gdof_closure(4.0 / 3.0, &[0.0]).unwrap();
        // beta = 0: {d1 <= 0, d2 <= 1, sum <= 4/3} has one Pareto corner
        assert_eq!(poly.vertices, vec![(0.0, 1.0)]);
    }

    #[test]
    fn closure_fig_shape_at_four_thirds() {
        let poly = gdof_closure(4.0 / 3.0, &grid(1e-3)).unwrap();
        assert!(poly.max_sum() >= 4.0 / 3.0 - 0.012);
        assert!((poly.max_d2() - 1.0).abs() < 1e-12);
        // the symmetric classical corner is not achieved
        assert!(!poly.dominates(2.0 / 3.0, 2.0 / 3.0));
        // frontier is a staircase: d1 ascending, d2 descending
        for w in poly.vertices.windows(2) {
            assert!(w[1].0 > w[0].0);
            assert!(w[1].1 < w[0].1);
        }
    }

    #[test]
    fn closure_no_interference_collapses_to_diagonal() {
        let poly = gdof_closure(0.0, &grid(1e-3)).unwrap();
        // every polytope is {d1 + d2 <= beta < 1}; the best sum approaches 1
        assert!(poly.max_sum() <= 1.0 + 1e-12);
        assert!(poly.max_sum() >= 1.0 - 2e-3);
        assert!(poly.max_d2() >= 1.0 - 2e-3);
        // enumeration: no polytope contains any pair with sum above its beta
        for &beta in &poly.beta_grid {
            let c = gdof_constraints(0.0, beta).unwrap();
            assert!(c.sum_max <= beta + 1e-12);
        }
    }

    #[test]
    fn closure_validates_grid() {
        assert!(gdof_closure(1.0, &[]).is_err());
        assert!(gdof_closure(1.0, &[0.2, 0.1]).is_err());
        assert!(gdof_closure(1.0, &[-0.1, 0.5]).is_err());
    }

    #[test]
    fn sum_gdof_oblivious_branches() {
        assert_abs_diff_eq!(
            sum_gdof_oblivious(4.0 / 3.0, 0.1).unwrap(),
            4.0 / 3.0 - 0.1,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(sum_gdof_oblivious(0.5, 0.1).unwrap(), 0.9, epsilon = 1e-15);
        assert_abs_diff_eq!(sum_gdof_oblivious(2.5, 0.5).unwrap(), 1.5, epsilon = 1e-15);
    }

    #[test]
    fn sum_gdof_oblivious_domain() {
        // alpha = 1 has an empty eps window
        assert!(sum_gdof_oblivious(1.0, 0.01).is_err());
        assert!(sum_gdof_oblivious(1.0, 1e-12).is_err());
        // eps must be positive and within the branch range
        assert!(sum_gdof_oblivious(0.5, 0.0).is_err());
        assert!(sum_gdof_oblivious(0.5, 0.6).is_err());
        assert!(sum_gdof_oblivious(1.5, 0.6).is_err());
        assert!(sum_gdof_oblivious(2.5, 1.1).is_err());
        // inclusive upper ends
        assert!(sum_gdof_oblivious(0.5, 0.5).is_ok());
        assert!(sum_gdof_oblivious(1.5, 0.5).is_ok());
        assert!(sum_gdof_oblivious(2.5, 1.0).is_ok());
    }

    #[test]
    fn w_curve_reference_points() {
        assert_eq!(sum_gdof_classic(0.5), 1.0);
        assert_eq!(sum_gdof_classic(1.0), 1.0);
        assert_eq!(sum_gdof_classic(2.0), 2.0);
        assert_abs_diff_eq!(sum_gdof_classic(2.0 / 3.0), 4.0 / 3.0, epsilon = 1e-15);
        assert_eq!(sum_gdof_classic(0.0), 2.0);
        assert_eq!(sum_gdof_classic(3.0), 2.0);
    }

    #[test]
    fn oblivious_matches_classic_above_one_and_trails_below() {
        let eps = 0.01;
        for i in 0..=300 {
            let alpha = i as f64 * 0.01;
            if (alpha - 1.0).abs() < 1e-12 {
                continue;
            }
            if alpha >= 1.0 {
                let v = sum_gdof_oblivious(alpha, eps).unwrap();
                assert_eq!(v, sum_gdof_classic(alpha) - eps, "alpha={alpha}");
            } else {
                let v = sum_gdof_oblivious(alpha, eps).unwrap();
                assert_eq!(v, 1.0 - eps);
                assert!(v < sum_gdof_classic(alpha), "alpha={alpha}");
            }
        }
    }

    #[test]
    fn tin_reference_points() {
        assert_eq!(sum_gdof_tin(0.0), 2.0);
        assert_eq!(sum_gdof_tin(1.0), 0.0);
        assert_eq!(sum_gdof_tin(0.25), 1.5);
        assert_eq!(sum_gdof_tin(2.0), 0.0);
    }

    #[test]
    fn closure_sum_is_consistent_with_closed_form() {
        let step = 1e-3;
        let eps = 0.01;
        for alpha in [0.5, 4.0 / 3.0, 2.5] {
            let poly = gdof_closure(alpha, &grid(step)).unwrap();
            let closed = sum_gdof_oblivious(alpha, eps).unwrap();
            assert!(
                poly.max_sum() >= closed - step - eps,
                "closure sum {} too far below closed form {} at alpha={alpha}",
                poly.max_sum(),
                closed
            );
        }
    }

    #[test]
    fn empirical_gdof_reference_points() {
        let grid = [1e6, 1e8, 1e10, 1e12];
        let d = empirical_gdof(|s| 0.5 * (1.0 + s).log2(), &grid).unwrap();
        assert_abs_diff_eq!(d, 1.0, epsilon = 1e-3);

        let d = empirical_gdof(|_| 1.7, &grid).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn empirical_gdof_matches_d1_branch() {
        // region r1 cap with size exponent beta = 0.5 has prelog 0.5
        let beta = 0.5;
        let rate = |snr: f64| {
            let n = crate::ptp::choose_pam_size(snr.powf(beta), 0.0).unwrap();
            let p = crate::region::ChannelParams::new(snr, 0.0).unwrap();
            crate::region::achievable_region(p, n).unwrap().r1_max
        };
        let d = empirical_gdof(rate, &[1e9, 1e10, 1e11, 1e12]).unwrap();
        assert_abs_diff_eq!(d, 0.5, epsilon = 0.02);
    }

    #[test]
    fn empirical_gdof_validates_grid() {
        assert!(empirical_gdof(|_| 0.0, &[]).is_err());
        assert!(empirical_gdof(|_| 0.0, &[1.0, 1.0]).is_err());
        assert!(empirical_gdof(|_| 0.0, &[10.0, 1.0]).is_err());
        assert!(empirical_gdof(|_| 0.0, &[1.0, 100.0]).is_err()); // span too short
    }
}
