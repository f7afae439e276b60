//! Hyperbolic trigonometry in double precision: the π/4 square, the
//! right-angled pentagon that fixes `s` and `b`, pants and collar formulas.

use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default stopping tolerance of [`solve_pentagon`].
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// The hyperbolic square with all four angles `π/4`.
///
/// It splits into four trirectangles with acute angle `π/4` whose sides at
/// the center have length `t` and whose sides at the acute corner have
/// length `α`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SquareData {
    /// `sinh²(t) = cos(π/4)`.
    pub t: f64,
    /// Distance between opposite sides, `2t`.
    pub opposite_side_distance: f64,
    /// Half a side, `tanh²(α) = cos(π/4)`.
    pub side_half: f64,
    /// Side length `2α`.
    pub side: f64,
    /// Distance realized by a basic pair of cone points (one side).
    pub basic_pair_distance: f64,
    /// Twice the basic-pair distance.
    pub systole_length: f64,
    /// `sinh²(t) - cos(π/4)`.
    pub residual_t: f64,
    /// `tanh²(α) - cos(π/4)`.
    pub residual_alpha: f64,
}

/// ```
/// let sq = systolic_atlas::hypgeom::square_data();
/// assert!((sq.t - 0.7642854597).abs() < 1e-9);
/// assert!(8.0 * sq.t > 6.0);
/// ```
pub fn square_data() -> SquareData {
    let c = FRAC_PI_4.cos();
    let t = 2f64.powf(-0.25).asinh();
    let alpha = 2f64.powf(-0.25).atanh();
    SquareData {
        t,
        opposite_side_distance: 2.0 * t,
        side_half: alpha,
        side: 2.0 * alpha,
        basic_pair_distance: 2.0 * alpha,
        systole_length: 4.0 * alpha,
        residual_t: t.sinh().powi(2) - c,
        residual_alpha: alpha.tanh().powi(2) - c,
    }
}

/// The right-angled pentagon with sides `s/2, s/6, s/4, b/4, c` in cyclic order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PentagonData {
    pub s: f64,
    pub b: f64,
    pub c: f64,
    /// `sides[i]` in cyclic order.
    pub sides: [f64; 5],
    /// `sinh(sides[i]) sinh(sides[i+1]) - cosh(sides[i+3])`. Entries 0 and 2
    /// are the two relations that determine `s` and `b`.
    pub residuals: [f64; 5],
}

impl PentagonData {
    /// Pentagon data for given `s` and `b`, with `c = s/12`.
    pub fn from_lengths(s: f64, b: f64) -> Self {
        let c = s / 12.0;
        let sides = [s / 2.0, s / 6.0, s / 4.0, b / 4.0, c];
        let residuals = std::array::from_fn(|i| {
            sides[i].sinh() * sides[(i + 1) % 5].sinh() - sides[(i + 3) % 5].cosh()
        });
        PentagonData {
            s,
            b,
            c,
            sides,
            residuals,
        }
    }

    /// Largest absolute residual among the two defining relations.
    pub fn defining_residual(&self) -> f64 {
        self.residuals[0].abs().max(self.residuals[2].abs())
    }

    /// Largest absolute residual among the other three relations.
    pub fn companion_residual(&self) -> f64 {
        [1, 3, 4]
            .iter()
            .map(|&i| self.residuals[i].abs())
            .fold(0.0, f64::max)
    }
}

/// `b(s) = 4 acosh(sinh(s/2) sinh(s/6))`, when defined.
fn b_of_s(s: f64) -> Option<f64> {
    let p = (s / 2.0).sinh() * (s / 6.0).sinh();
    (p >= 1.0).then(|| 4.0 * p.acosh())
}

/// `sinh(s/4) sinh(b(s)/4) - cosh(s/2)` and its derivative.
fn reduced(s: f64) -> Option<(f64, f64)> {
    let p = (s / 2.0).sinh() * (s / 6.0).sinh();
    if p <= 1.0 {
        return None;
    }
    let q = p.acosh();
    let dp = 0.5 * (s / 2.0).cosh() * (s / 6.0).sinh() + (s / 2.0).sinh() * (s / 6.0).cosh() / 6.0;
    let dq = dp / (p * p - 1.0).sqrt();
    let f = (s / 4.0).sinh() * q.sinh() - (s / 2.0).cosh();
    let df = 0.25 * (s / 4.0).cosh() * q.sinh() + (s / 4.0).sinh() * q.cosh() * dq
        - 0.5 * (s / 2.0).sinh();
    Some((f, df))
}

/// Solves `sinh(s/2) sinh(s/6) = cosh(b/4)` and `sinh(s/4) sinh(b/4) = cosh(s/2)`.
///
/// `b` is eliminated, a sign change of the remaining function of `s` is
/// located by scanning `[0.1, 20]` in steps of `0.1`, and the root is
/// polished by damped Newton steps that fall back to bisection.
///
/// ```
/// let p = systolic_atlas::hypgeom::solve_pentagon(1e-12).unwrap();
/// assert!((p.s - 4.39).abs() < 0.01 && (p.b - 7.77).abs() < 0.01);
/// ```
pub fn solve_pentagon(tolerance: f64) -> Result<PentagonData> {
    if !(tolerance > 0.0) {
        return Err(Error::Param(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let grid: Vec<f64> = (1..=200).map(|i| i as f64 / 10.0).collect();
    let (mut lo, mut hi) = grid
        .windows(2)
        .find_map(|w| match (reduced(w[0]), reduced(w[1])) {
            (Some((f0, _)), Some((f1, _))) if f0 <= 0.0 && f1 > 0.0 => Some((w[0], w[1])),
            _ => None,
        })
        .ok_or_else(|| Error::Convergence("no sign change in [0.1, 20]".into()))?;

    let mut s = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (f, df) =
            reduced(s).ok_or_else(|| Error::Convergence(format!("left the domain at s = {s}")))?;
        if f.abs() < tolerance * 1e-2 {
            break;
        }
        if f > 0.0 {
            hi = s;
        } else {
            lo = s;
        }
        let mut next = s - f / df;
        let mut damping = 1.0;
        while !(next > lo && next < hi) && damping > 1e-3 {
            damping *= 0.5;
            next = s - damping * f / df;
        }
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - s).abs();
        s = next;
        if step < tolerance * s.max(1.0) {
            break;
        }
        if hi - lo < f64::EPSILON * hi {
            break;
        }
    }
    let b = b_of_s(s).ok_or_else(|| Error::Convergence(format!("b undefined at s = {s}")))?;
    let p = PentagonData::from_lengths(s, b);
    if !(p.defining_residual() < 1e-9) {
        return Err(Error::Convergence(format!(
            "residual {} after iteration",
            p.defining_residual()
        )));
    }
    Ok(p)
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!(
            "{name} must be positive and finite, got {x}"
        )));
    }
    Ok(())
}

/// Distance between the cuffs of lengths `l1` and `l2` in the pair of pants
/// with cuffs `l1, l2, l3`:
/// `cosh d = (cosh(l3/2) + cosh(l1/2) cosh(l2/2)) / (sinh(l1/2) sinh(l2/2))`.
pub fn pants_cuff_distance(l1: f64, l2: f64, l3: f64) -> Result<f64> {
    check_positive("l1", l1)?;
    check_positive("l2", l2)?;
    check_positive("l3", l3)?;
    let (h1, h2, h3) = (l1 / 2.0, l2 / 2.0, l3 / 2.0);
    Ok(((h3.cosh() + h1.cosh() * h2.cosh()) / (h1.sinh() * h2.sinh())).acosh())
}

/// Half-width `asinh(1 / sinh(l/2))` of the standard collar about a closed
/// geodesic of length `l`.
pub fn collar_width(l: f64) -> Result<f64> {
    check_positive("l", l)?;
    Ok((1.0 / (l / 2.0).sinh()).asinh())
}

/// `2 asinh(1)`, the pants-curve length of the net surfaces.
pub fn epsilon0() -> f64 {
    2.0 * 1f64.asinh()
}
