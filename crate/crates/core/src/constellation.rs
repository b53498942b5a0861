//! Finite real-valued signal constellations.

use crate::{Error, Result};

/// Tolerance on the total probability mass of a constellation.
const MASS_SUM_TOL: f64 = 1e-12;

/// A finite set of real amplitudes with point masses.
///
/// Support points must be pairwise distinct and masses strictly positive with
/// unit total. The minimum pairwise distance and the average energy
/// `sum_i p_i s_i^2` are computed at construction and carried along; both can
/// be recomputed exactly from the points and masses.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    points: Vec<f64>,
    masses: Vec<f64>,
    d_min: f64,
    energy: f64,
}

impl Constellation {
    /// Builds a constellation from support points and their masses.
    pub fn new(points: Vec<f64>, masses: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidConstellation("empty support".into()));
        }
        if points.len() != masses.len() {
            return Err(Error::InvalidConstellation(format!(
                "{} points but {} masses",
                points.len(),
                masses.len()
            )));
        }
        if points.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidConstellation(
                "support points must be finite".into(),
            ));
        }
        if masses.iter().any(|p| !p.is_finite() || *p <= 0.0) {
            return Err(Error::InvalidConstellation(
                "masses must be finite and strictly positive".into(),
            ));
        }
        let total: f64 = masses.iter().sum();
        if (total - 1.0).abs() > MASS_SUM_TOL {
            return Err(Error::InvalidConstellation(format!(
                "masses sum to {total}, expected 1"
            )));
        }
        let d_min = min_pairwise_distance(&points);
        if d_min <= 0.0 {
            return Err(Error::InvalidConstellation(
                "support points must be pairwise distinct".into(),
            ));
        }
        let energy = points
            .iter()
            .zip(&masses)
            .map(|(s, p)| p * s * s)
            .sum::<f64>();
        Ok(Self {
            points,
            masses,
            d_min,
            energy,
        })
    }

    /// Uniform masses over the given points.
    pub fn uniform(points: Vec<f64>) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::InvalidConstellation("empty support".into()));
        }
        Self::new(points, vec![1.0 / n as f64; n])
    }

    /// Unit-energy pulse-amplitude modulation with `n` points.
    ///
    /// Points are equally spaced and symmetric about zero with spacing
    /// `sqrt(12 / (n^2 - 1))`, which makes the average energy exactly 1 for
    /// `n >= 2`. The degenerate single-point constellation `{0}` has zero
    /// energy and, by convention, infinite minimum distance: a deterministic
    /// input carries no information, so no bound ever evaluates its spacing.
    pub fn pam(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConstellation(
                "PAM needs at least one point".into(),
            ));
        }
        if n == 1 {
            return Ok(Self {
                points: vec![0.0],
                masses: vec![1.0],
                d_min: f64::INFINITY,
                energy: 0.0,
            });
        }
        let spacing = (12.0 / ((n * n - 1) as f64)).sqrt();
        let half = (n - 1) as f64 / 2.0;
        // Fill symmetric pairs outward-in so the points are exactly
        // antisymmetric; odd n leaves the middle point at 0.
        let mut points = vec![0.0; n];
        for i in 0..n / 2 {
            let amp = spacing * (half - i as f64);
            points[i] = -amp;
            points[n - 1 - i] = amp;
        }
        Self::uniform(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty supports
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// Minimum pairwise distance between support points; infinite for a
    /// single-point constellation.
    pub fn d_min(&self) -> f64 {
        self.d_min
    }

    /// Average energy `sum_i p_i s_i^2`.
    pub fn energy(&self) -> f64 {
        self.energy
    }
}

fn min_pairwise_distance(points: &[f64]) -> f64 {
    if points.len() < 2 {
        return f64::INFINITY;
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite points"));
    sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}
