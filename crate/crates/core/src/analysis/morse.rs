use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use super::{nelder_mead, BindingCurve};
use crate::error::{QdoError, Result};

/// Morse model `f(d) = −E_b` at `d_b`, written with the decay rate `s`:
/// `f(d) = E_b (e^{−2s(d−d_b)} − 2e^{−s(d−d_b)})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MorseFit {
    pub e_b: f64,
    pub d_b: f64,
    pub s: f64,
    /// `√Σ (f(dᵢ) − E_b,ᵢ)²` over the fitted points.
    pub residual_l2: f64,
    pub converged: bool,
    pub n_points: usize,
}

pub fn morse(d: f64, e_b: f64, d_b: f64, s: f64) -> f64 {
    let u = (-s * (d - d_b)).exp();
    e_b * (u * u - 2.0 * u)
}

/// `d⋆ = d_b + ln 2 / s`, where `f″` changes sign.
pub fn inflection_point(fit: &MorseFit) -> f64 {
    fit.d_b + std::f64::consts::LN_2 / fit.s
}

const MAX_ITER: usize = 500;

fn sum_sq(points: &[(f64, f64)], x: &[f64]) -> f64 {
    points
        .iter()
        .map(|&(d, e)| (morse(d, x[0], x[1], x[2]) - e).powi(2))
        .sum()
}

fn initial_guess(points: &[(f64, f64)]) -> Result<[f64; 3]> {
    let (imin, &(d_min, e_min)) = points
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .expect("nonempty");
    if e_min >= 0.0 {
        return Err(QdoError::FitFailed(format!(
            "curve has no negative minimum (smallest value {e_min:.3e} at d = {d_min})"
        )));
    }
    let half = 0.5 * e_min;
    let mut delta = None;
    for w in points[imin..].windows(2) {
        let ((d0, e0), (d1, e1)) = (w[0], w[1]);
        if e0 <= half && e1 >= half {
            let t = if e1 == e0 {
                0.0
            } else {
                (half - e0) / (e1 - e0)
            };
            delta = Some(d0 + t * (d1 - d0) - d_min);
            break;
        }
    }
    let span = points.last().expect("nonempty").0 - d_min;
    let delta = delta.unwrap_or(span.max(1e-3)).max(1e-6);
    // Half depth of the model sits at e^{−sΔ} = 1 − 1/√2.
    let s = (2.0 + std::f64::consts::SQRT_2).ln() / delta;
    Ok([-e_min, d_min, s])
}

/// Least-squares Morse fit to `(d, E_b)` pairs sorted by `d`.
///
/// Starts from the sampled minimum and the half-depth distance, descends with
/// Nelder–Mead and finishes with damped Gauss–Newton steps.
pub fn fit_morse_points(points: &[(f64, f64)]) -> Result<MorseFit> {
    if points.len() < 10 {
        return Err(QdoError::FitFailed(format!(
            "need at least 10 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|(d, e)| !d.is_finite() || !e.is_finite()) {
        return Err(QdoError::FitFailed("non-finite point in curve".into()));
    }
    let x0 = initial_guess(points)?;
    let step = [0.1 * x0[0], 0.05, 0.1 * x0[2]];
    let nm = nelder_mead(|x| sum_sq(points, x), &x0, &step, MAX_ITER, 1e-14);

    let mut x = Vector3::new(nm.x[0], nm.x[1], nm.x[2]);
    let mut lambda = 1e-3;
    let mut cost = sum_sq(points, x.as_slice());
    let mut last_rel = f64::INFINITY;
    let mut stationary = false;
    for _ in 0..MAX_ITER {
        let mut jtj = Matrix3::zeros();
        let mut jtr = Vector3::zeros();
        for &(d, e) in points {
            let (eb, db, s) = (x[0], x[1], x[2]);
            let u = (-s * (d - db)).exp();
            let r = eb * (u * u - 2.0 * u) - e;
            let j = Vector3::new(
                u * u - 2.0 * u,
                2.0 * eb * s * u * (u - 1.0),
                -2.0 * eb * (d - db) * u * (u - 1.0),
            );
            jtj += j * j.transpose();
            jtr += j * r;
        }
        let mut accepted = false;
        for _ in 0..20 {
            let mut a = jtj;
            for k in 0..3 {
                a[(k, k)] *= 1.0 + lambda;
            }
            let Some(delta) = a.lu().solve(&(-jtr)) else {
                break;
            };
            let trial = x + delta;
            let trial_cost = sum_sq(points, trial.as_slice());
            if trial_cost.is_finite() && trial_cost <= cost {
                let rel = delta
                    .iter()
                    .zip(x.iter())
                    .map(|(dx, v)| (dx / v.abs().max(1e-12)).abs())
                    .fold(0.0, f64::max);
                x = trial;
                cost = trial_cost;
                lambda = (lambda * 0.3).max(1e-12);
                accepted = true;
                last_rel = rel;
                break;
            }
            lambda *= 10.0;
        }
        if last_rel <= 1e-12 {
            break;
        }
        if !accepted {
            // No descent direction left: at a stationary point to working precision.
            stationary = jtr.norm() <= 1e-6 * (1.0 + cost.sqrt());
            break;
        }
    }
    let converged = last_rel <= 1e-6 || stationary;
    if x[0] <= 0.0 || x[2] <= 0.0 {
        return Err(QdoError::FitFailed(format!(
            "fit left the admissible region: E_b = {}, s = {}",
            x[0], x[2]
        )));
    }
    Ok(MorseFit {
        e_b: x[0],
        d_b: x[1],
        s: x[2],
        residual_l2: cost.sqrt(),
        converged,
        n_points: points.len(),
    })
}

/// Morse fit of a binding curve.
///
/// Uses the `ok` points from the smallest `d` whose norm is at least 0.95 onward.
pub fn fit_morse(curve: &BindingCurve) -> Result<MorseFit> {
    let start = curve
        .points
        .iter()
        .position(|p| p.status.is_ok() && p.e_b.is_finite() && p.norm >= 0.95)
        .ok_or_else(|| QdoError::FitFailed("no usable points in curve".into()))?;
    let pts: Vec<(f64, f64)> = curve.points[start..]
        .iter()
        .filter(|p| p.status.is_ok() && p.e_b.is_finite())
        .map(|p| (p.d, p.e_b))
        .collect();
    fit_morse_points(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::d_grid;

    fn synthetic(e_b: f64, d_b: f64, s: f64) -> Vec<(f64, f64)> {
        d_grid(0.3, 3.5, 40)
            .into_iter()
            .map(|d| (d, morse(d, e_b, d_b, s)))
            .collect()
    }

    #[test]
    fn exact_recovery() {
        let fit = fit_morse_points(&synthetic(0.46, 0.54, 2.75)).unwrap();
        assert!((fit.e_b - 0.46).abs() < 1e-6);
        assert!((fit.d_b - 0.54).abs() < 1e-6);
        assert!((fit.s - 2.75).abs() < 1e-6);
        assert!(fit.residual_l2 < 1e-9);
        assert!(fit.converged);
    }

    #[test]
    fn model_minimum() {
        assert!((morse(0.54, 0.46, 0.54, 2.75) + 0.46).abs() < 1e-15);
    }

    #[test]
    fn inflection_matches_second_derivative_root() {
        let (e_b, d_b, s) = (0.46, 0.54, 2.75);
        let fit = MorseFit {
            e_b,
            d_b,
            s,
            residual_l2: 0.0,
            converged: true,
            n_points: 0,
        };
        let f2 = |d: f64| {
            let u = (-s * (d - d_b)).exp();
            e_b * s * s * (4.0 * u * u - 2.0 * u)
        };
        let (mut lo, mut hi) = (d_b, d_b + 5.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f2(lo) * f2(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        assert!((inflection_point(&fit) - 0.5 * (lo + hi)).abs() < 1e-9);
        let sharp = MorseFit { s: 1e12, ..fit };
        assert!((inflection_point(&sharp) - d_b).abs() < 1e-9);
    }

    #[test]
    fn rejects_curves_without_binding() {
        let pts: Vec<(f64, f64)> = d_grid(0.3, 3.5, 20)
            .into_iter()
            .map(|d| (d, 0.1 / d))
            .collect();
        assert!(matches!(
            fit_morse_points(&pts),
            Err(QdoError::FitFailed(_))
        ));
        assert!(fit_morse_points(&pts[..5]).is_err());
    }
}
