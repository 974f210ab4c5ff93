use serde::{Deserialize, Serialize};

use crate::error::{QdoError, Result};

/// Per-mode truncation of the two-mode bosonic space.
///
/// `dim_per_mode` counts levels, so the default of 5 keeps `|0⟩..|4⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FockConfig {
    dim_per_mode: usize,
}

impl FockConfig {
    pub const MODES: usize = 2;

    pub fn new(dim_per_mode: usize) -> Result<Self> {
        if dim_per_mode < 2 {
            return Err(QdoError::ParameterOutOfRange {
                name: "dim_per_mode",
                value: dim_per_mode as f64,
                allowed: ">= 2",
            });
        }
        Ok(FockConfig { dim_per_mode })
    }

    pub fn dim_per_mode(&self) -> usize {
        self.dim_per_mode
    }

    pub fn modes(&self) -> usize {
        Self::MODES
    }

    /// Dimension of the joint space, `dim_per_mode²`.
    pub fn total_dim(&self) -> usize {
        self.dim_per_mode * self.dim_per_mode
    }

    /// Flat index of `|n1, n2⟩` (mode 1 is the slow index).
    pub fn index(&self, n1: usize, n2: usize) -> usize {
        n1 * self.dim_per_mode + n2
    }
}

impl Default for FockConfig {
    fn default() -> Self {
        FockConfig { dim_per_mode: 5 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    One,
    Two,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_single_level() {
        assert!(FockConfig::new(1).is_err());
        assert_eq!(FockConfig::new(2).unwrap().total_dim(), 4);
    }

    #[test]
    fn lexicographic_index() {
        let c = FockConfig::default();
        assert_eq!(c.index(0, 0), 0);
        assert_eq!(c.index(0, 4), 4);
        assert_eq!(c.index(1, 0), 5);
        assert_eq!(c.index(4, 4), 24);
    }
}
