use serde::{Deserialize, Serialize};

use crate::fock::JointDensity;

/// Two separated maxima of a joint density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bimodality {
    /// `(x₁, x₂, ρ)` of the two peaks, higher first.
    pub peaks: [(f64, f64, f64); 2],
    /// Lowest density on the segment between the peaks.
    pub saddle: f64,
    /// `1 − saddle / min(peak heights)`.
    pub relative_dip: f64,
}

/// Finds two local maxima whose connecting segment dips by at least
/// `min_dip` relative to the lower peak; returns the deepest such pair.
///
/// Maxima below 5% of the global maximum are ignored.
pub fn find_bimodality(density: &JointDensity, min_dip: f64) -> Option<Bimodality> {
    let n = density.side();
    let nodes = density.grid.nodes();
    let global = density.values.iter().copied().fold(0.0, f64::max);
    let mut maxima: Vec<(usize, usize, f64)> = Vec::new();
    for i in 1..n - 1 {
        for j in 1..n - 1 {
            let v = density.get(i, j);
            if v < 0.05 * global {
                continue;
            }
            let is_max = (-1i64..=1).all(|di| {
                (-1i64..=1).all(|dj| {
                    (di == 0 && dj == 0)
                        || density.get((i as i64 + di) as usize, (j as i64 + dj) as usize) <= v
                })
            });
            if is_max {
                maxima.push((i, j, v));
            }
        }
    }
    maxima.sort_by(|a, b| b.2.total_cmp(&a.2));
    maxima.truncate(16);

    let mut best: Option<Bimodality> = None;
    for a in 0..maxima.len() {
        for b in a + 1..maxima.len() {
            let (i0, j0, v0) = maxima[a];
            let (i1, j1, v1) = maxima[b];
            let steps = (i0.abs_diff(i1).max(j0.abs_diff(j1))).max(1);
            let saddle = (0..=steps)
                .map(|k| {
                    let t = k as f64 / steps as f64;
                    let i = (i0 as f64 + t * (i1 as f64 - i0 as f64)).round() as usize;
                    let j = (j0 as f64 + t * (j1 as f64 - j0 as f64)).round() as usize;
                    density.get(i, j)
                })
                .fold(f64::INFINITY, f64::min);
            let dip = 1.0 - saddle / v1.min(v0);
            if dip >= min_dip && best.is_none_or(|bm| dip > bm.relative_dip) {
                best = Some(Bimodality {
                    peaks: [(nodes[i0], nodes[j0], v0), (nodes[i1], nodes[j1], v1)],
                    saddle,
                    relative_dip: dip,
                });
            }
        }
    }
    best
}
