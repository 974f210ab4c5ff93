use serde::{Deserialize, Serialize};

use super::BindingCurve;

pub const DEFAULT_BANDWIDTH: f64 = 0.12;

/// Per-point entanglement entropy with a kernel-smoothed overlay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyProfile {
    pub bandwidth: f64,
    /// `(d, S)` at every successful sweep point.
    pub points: Vec<(f64, f64)>,
    /// `(d, S̃)` on a uniform 200-point grid spanning the sweep.
    pub smooth: Vec<(f64, f64)>,
}

impl EntropyProfile {
    /// Sweep point of largest entropy.
    pub fn peak(&self) -> Option<(f64, f64)> {
        self.points
            .iter()
            .copied()
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }

    pub fn smooth_peak(&self) -> Option<(f64, f64)> {
        self.smooth
            .iter()
            .copied()
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// Nadaraya–Watson estimate with a Gaussian kernel, reflected at both ends
/// of the data range.
pub fn kernel_smooth(points: &[(f64, f64)], at: &[f64], bandwidth: f64) -> Vec<f64> {
    if points.is_empty() {
        return vec![f64::NAN; at.len()];
    }
    let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let k = |u: f64| (-0.5 * (u / bandwidth).powi(2)).exp();
    at.iter()
        .map(|&x| {
            let mut num = 0.0;
            let mut den = 0.0;
            for &(d, y) in points {
                let w = k(x - d) + k(x - (2.0 * lo - d)) + k(x - (2.0 * hi - d));
                num += w * y;
                den += w;
            }
            num / den
        })
        .collect()
}

pub fn entropy_profile(curve: &BindingCurve, bandwidth: f64) -> EntropyProfile {
    let points: Vec<(f64, f64)> = curve
        .ok_points()
        .filter(|p| p.entropy.is_finite())
        .map(|p| (p.d, p.entropy))
        .collect();
    let smooth = match (points.first(), points.last()) {
        (Some(&(lo, _)), Some(&(hi, _))) if hi > lo => {
            let xs: Vec<f64> = (0..200)
                .map(|i| lo + (hi - lo) * i as f64 / 199.0)
                .collect();
            let ys = kernel_smooth(&points, &xs, bandwidth);
            xs.into_iter().zip(ys).collect()
        }
        _ => points.clone(),
    };
    EntropyProfile {
        bandwidth,
        points,
        smooth,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_data_stays_constant() {
        let pts: Vec<(f64, f64)> = (0..20).map(|i| (0.1 * i as f64, 0.7)).collect();
        let ys = kernel_smooth(&pts, &[0.0, 0.55, 1.9], 0.12);
        assert!(ys.iter().all(|y| (y - 0.7).abs() < 1e-14));
    }

    #[test]
    fn reflection_removes_edge_bias_for_linear_data() {
        // With reflection, a slope is flattened at the edges but the interior is exact.
        let pts: Vec<(f64, f64)> = (0..101)
            .map(|i| (0.01 * i as f64, 2.0 * 0.01 * i as f64))
            .collect();
        let y = kernel_smooth(&pts, &[0.5], 0.05);
        assert!((y[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn smoothed_peak_follows_bump() {
        let pts: Vec<(f64, f64)> = (0..40)
            .map(|i| {
                let d = 0.3 + 0.08 * (i + 1) as f64;
                (d, (-(d - 0.82f64).powi(2) / 0.05).exp())
            })
            .collect();
        let curve_like = EntropyProfile {
            bandwidth: 0.12,
            points: pts.clone(),
            smooth: {
                let xs: Vec<f64> = (0..200).map(|i| 0.38 + 3.12 * i as f64 / 199.0).collect();
                let ys = kernel_smooth(&pts, &xs, 0.12);
                xs.into_iter().zip(ys).collect()
            },
        };
        let (d, _) = curve_like.smooth_peak().unwrap();
        assert!((d - 0.82).abs() < 0.05);
        assert!((curve_like.peak().unwrap().0 - 0.82).abs() <= 0.04 + 1e-12);
    }
}
