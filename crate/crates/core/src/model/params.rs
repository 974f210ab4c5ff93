use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{QdoError, Result};

/// Physical parameters of the coupled pair, in units with `ħ = 4πε₀ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelParams {
    /// Angle between the oscillation axis and the interatomic axis, in `[0, π/2]`.
    pub theta: f64,
    /// Interatomic distance.
    pub d: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub m1: f64,
    pub m2: f64,
    pub q1: f64,
    pub q2: f64,
    /// Added as `ε²` under every Coulomb square root.
    pub softening: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            theta: 0.58,
            d: 1.0,
            omega1: 1.0,
            omega2: 1.0,
            m1: 1.0,
            m2: 1.0,
            q1: 1.0,
            q2: 1.0,
            softening: 0.0,
        }
    }
}

impl ModelParams {
    /// Default oscillators at the given geometry.
    pub fn new(theta: f64, d: f64) -> Result<Self> {
        let p = ModelParams {
            theta,
            d,
            ..Default::default()
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_geometry(&self, theta: f64, d: f64) -> Result<Self> {
        let p = ModelParams { theta, d, ..*self };
        p.validate()?;
        Ok(p)
    }

    /// Same oscillators with both charges set to zero.
    pub fn uncharged(&self) -> Self {
        ModelParams {
            q1: 0.0,
            q2: 0.0,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        let out = |name, value, allowed| {
            Err(QdoError::ParameterOutOfRange {
                name,
                value,
                allowed,
            })
        };
        if !(0.0..=FRAC_PI_2 + 1e-12).contains(&self.theta) {
            return out("theta", self.theta, "[0, pi/2]");
        }
        if !(self.d > 0.0 && self.d.is_finite()) {
            return out("d", self.d, "> 0");
        }
        for (name, v) in [
            ("omega1", self.omega1),
            ("omega2", self.omega2),
            ("m1", self.m1),
            ("m2", self.m2),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return out(name, v, "> 0");
            }
        }
        for (name, v) in [("q1", self.q1), ("q2", self.q2)] {
            if !v.is_finite() {
                return out(name, v, "finite");
            }
        }
        if !(self.softening >= 0.0 && self.softening.is_finite()) {
            return out("softening", self.softening, ">= 0");
        }
        Ok(())
    }

    /// Swap-and-parity symmetry holds when both oscillators are identical.
    pub fn is_symmetric(&self) -> bool {
        self.omega1 == self.omega2 && self.m1 == self.m2 && self.q1 == self.q2
    }

    pub(crate) fn bits(&self) -> [u64; 9] {
        [
            self.theta,
            self.d,
            self.omega1,
            self.omega2,
            self.m1,
            self.m2,
            self.q1,
            self.q2,
            self.softening,
        ]
        .map(f64::to_bits)
    }
}
