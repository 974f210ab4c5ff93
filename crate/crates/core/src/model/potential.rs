use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{scale_factors, ModelParams};
use crate::error::{QdoError, Result};
use crate::fock::QuadratureGrid;

const SINGULAR: f64 = 1e-12;

/// The four squared separations entering the potential, each with `ε²` added.
fn radicands(p: &ModelParams, x1: f64, x2: f64) -> [f64; 3] {
    let c = p.theta.cos();
    let d = p.d;
    let e2 = p.softening * p.softening;
    let x21 = x2 - x1;
    [
        d * d + 2.0 * d * c * x1 + x1 * x1 + e2,
        d * d - 2.0 * d * c * x2 + x2 * x2 + e2,
        d * d - 2.0 * d * c * x21 + x21 * x21 + e2,
    ]
}

fn value_unchecked(p: &ModelParams, r: [f64; 3]) -> f64 {
    p.q1 * p.q2 * (1.0 / p.d - 1.0 / r[0].sqrt() - 1.0 / r[1].sqrt() + 1.0 / r[2].sqrt())
}

/// Coulomb interaction of the two drudons at physical displacements `x1`, `x2`.
pub fn coulomb_potential(p: &ModelParams, x1: f64, x2: f64) -> Result<f64> {
    p.validate()?;
    let r = radicands(p, x1, x2);
    if r.iter().any(|&v| !(v > SINGULAR)) {
        return Err(QdoError::SingularConfiguration {
            count: 1,
            first: None,
        });
    }
    Ok(value_unchecked(p, r))
}

/// Potential sampled at `(λ₁x₁, λ₂x₂)` for every pair of grid nodes, row-major in `(i1, i2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialField {
    pub grid: QuadratureGrid,
    pub values: Vec<f64>,
}

impl PotentialField {
    pub fn get(&self, i1: usize, i2: usize) -> f64 {
        self.values[i1 * self.grid.len() + i2]
    }
}

type FieldKey = ([u64; 9], [u64; 2], usize);

/// Evaluates the potential on `grid × grid`.
///
/// Fields are cached per `(params, grid)` and shared; a singular node yields
/// an error naming how many nodes are singular and the first one.
pub fn potential_on_grid(p: &ModelParams, grid: &QuadratureGrid) -> Result<Arc<PotentialField>> {
    static CACHE: OnceLock<Mutex<HashMap<FieldKey, Arc<PotentialField>>>> = OnceLock::new();
    p.validate()?;
    let key = (
        p.bits(),
        [grid.min().to_bits(), grid.max().to_bits()],
        grid.len(),
    );
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().expect("potential cache poisoned").get(&key) {
        return Ok(f.clone());
    }

    let (l1, l2) = scale_factors(p);
    let nodes = grid.nodes();
    let n = nodes.len();
    let mut values = Vec::with_capacity(n * n);
    let mut count = 0;
    let mut first = None;
    for (i1, &x1) in nodes.iter().enumerate() {
        for (i2, &x2) in nodes.iter().enumerate() {
            let r = radicands(p, l1 * x1, l2 * x2);
            if r.iter().any(|&v| !(v > SINGULAR)) {
                count += 1;
                first.get_or_insert((i1, i2));
                values.push(f64::NAN);
            } else {
                values.push(value_unchecked(p, r));
            }
        }
    }
    if count > 0 {
        return Err(QdoError::SingularConfiguration { count, first });
    }
    let field = Arc::new(PotentialField {
        grid: *grid,
        values,
    });
    let mut map = cache.lock().expect("potential cache poisoned");
    if map.len() > 512 {
        map.clear();
    }
    map.insert(key, field.clone());
    Ok(field)
}
