use serde::{Deserialize, Serialize};

use super::nelder_mead;
use crate::error::{QdoError, Result};
use crate::fock::{fidelity, FockConfig, FockVector};
use crate::C64;

pub const MAX_CAT_ALPHA: f64 = 3.0;

/// Truncated coherent amplitudes `e^{−|α|²/2} αⁿ/√n!`, `n < dim`.
pub fn coherent_amplitudes(alpha: C64, dim: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(dim);
    let mut c = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 0..dim {
        if n > 0 {
            c = c * alpha / (n as f64).sqrt();
        }
        out.push(c);
    }
    out
}

fn unnormalized_cat(alpha: C64, config: FockConfig) -> Result<FockVector> {
    if !(alpha.norm() <= MAX_CAT_ALPHA) {
        return Err(QdoError::ParameterOutOfRange {
            name: "cat |alpha|",
            value: alpha.norm(),
            allowed: "<= 3",
        });
    }
    let dim = config.dim_per_mode();
    let plus = coherent_amplitudes(alpha, dim);
    let minus = coherent_amplitudes(-alpha, dim);
    let mut s = FockVector::product(config, &plus, &minus)?;
    s.amplitudes_mut()[0] += C64::new(1.0, 0.0);
    Ok(s)
}

/// `𝒩²` of `|0,0⟩ + |α,−α⟩` with both branches truncated to the cutoff.
pub fn cat_normalization(alpha: C64, config: FockConfig) -> Result<f64> {
    Ok(unnormalized_cat(alpha, config)?.norm_sqr())
}

/// `(|0⟩⊗|0⟩ + |α⟩⊗|−α⟩)/𝒩` on the truncated space.
pub fn cat_state(alpha: C64, config: FockConfig) -> Result<FockVector> {
    unnormalized_cat(alpha, config)?.normalized()
}

/// Rectangular search domain for the cat amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CatSearch {
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub step: f64,
}

impl Default for CatSearch {
    fn default() -> Self {
        CatSearch {
            re: (-2.0, 2.0),
            im: (-2.0, 2.0),
            step: 0.1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatFit {
    pub alpha: C64,
    pub fidelity: f64,
}

pub fn fit_cat(state: &FockVector) -> Result<CatFit> {
    fit_cat_in(state, &CatSearch::default())
}

/// Maximizes `F(state, cat(α))`: a grid scan of the box, then a simplex
/// refinement clamped to it.
pub fn fit_cat_in(state: &FockVector, search: &CatSearch) -> Result<CatFit> {
    let target = state.normalized()?;
    let config = target.config();
    let clamp = |x: &[f64]| {
        C64::new(
            x[0].clamp(search.re.0, search.re.1),
            x[1].clamp(search.im.0, search.im.1),
        )
    };
    let fid = |alpha: C64| -> f64 {
        match cat_state(alpha, config) {
            Ok(c) => fidelity(&target, &c).unwrap_or(0.0),
            Err(_) => 0.0,
        }
    };

    let steps = |(lo, hi): (f64, f64)| ((hi - lo) / search.step).round() as usize;
    let (nr, ni) = (steps(search.re), steps(search.im));
    let mut best = (C64::new(0.0, 0.0), f64::NEG_INFINITY);
    for i in 0..=nr {
        for j in 0..=ni {
            let alpha = C64::new(
                (search.re.0 + i as f64 * search.step).min(search.re.1),
                (search.im.0 + j as f64 * search.step).min(search.im.1),
            );
            let f = fid(alpha);
            if f > best.1 {
                best = (alpha, f);
            }
        }
    }

    let r = nelder_mead(
        |x| -fid(clamp(x)),
        &[best.0.re, best.0.im],
        &[0.5 * search.step, 0.5 * search.step],
        2000,
        1e-13,
    );
    let refined = clamp(&r.x);
    let f = fid(refined);
    let (alpha, fidelity) = if f >= best.1 { (refined, f) } else { best };
    Ok(CatFit {
        alpha,
        fidelity: fidelity.min(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> FockConfig {
        FockConfig::default()
    }

    #[test]
    fn zero_alpha_is_vacuum() {
        assert_eq!(
            cat_state(C64::new(0.0, 0.0), cfg()).unwrap(),
            FockVector::vacuum(cfg())
        );
    }

    #[test]
    fn normalized_at_cutoff() {
        for a in [0.3, 0.9, 1.5] {
            for phase in [0.0, 1.1] {
                let s = cat_state(C64::from_polar(a, phase), cfg()).unwrap();
                assert!((s.norm() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn wide_branches_are_orthogonal() {
        let big = FockConfig::new(40).unwrap();
        let n2 = cat_normalization(C64::new(3.0, 0.0), big).unwrap();
        assert!((n2 - 2.0).abs() < 1e-3);
        // Untruncated closed form 2 + 2e^{−|α|²}.
        let n2 = cat_normalization(C64::new(0.8, 0.0), big).unwrap();
        assert!((n2 - (2.0 + 2.0 * (-0.64f64).exp())).abs() < 1e-12);
    }

    #[test]
    fn out_of_range() {
        assert!(cat_state(C64::new(3.1, 0.0), cfg()).is_err());
    }

    #[test]
    fn self_recovery() {
        for alpha in [
            C64::new(0.7, 0.0),
            C64::new(-0.53, 0.0),
            C64::new(0.4, 0.35),
        ] {
            let fit = fit_cat(&cat_state(alpha, cfg()).unwrap()).unwrap();
            assert!(fit.fidelity >= 1.0 - 1e-8, "{alpha}: {}", fit.fidelity);
            assert!((fit.alpha - alpha).norm() < 1e-3);
        }
        let v = fit_cat(&FockVector::vacuum(cfg())).unwrap();
        assert!((v.fidelity - 1.0).abs() < 1e-12 && v.alpha.norm() < 1e-6);
    }

    #[test]
    fn global_phase_invariance() {
        let s = cat_state(C64::new(0.6, 0.2), cfg()).unwrap();
        let a = fit_cat(&s).unwrap();
        let b = fit_cat(&s.scaled(C64::from_polar(1.0, 2.3))).unwrap();
        assert!((a.fidelity - b.fidelity).abs() < 1e-10);
    }
}
