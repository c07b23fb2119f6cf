//! The two path relaxations, solved by cutting planes over a dense simplex.

mod relaxation;
mod separation;
mod simplex;

pub use relaxation::{
    separate, solve_relaxation, to_lp_format, CuttingPlaneOptions, Lp2Oracle, RelaxationResult,
};
pub use separation::{
    check_gadget, min_weight_path_lp1, min_weight_path_lp2_gadget, min_weight_path_lp2_generic,
    separate_lp1, separate_lp2_gadget, separate_lp2_generic, PathConstraint, Relaxation,
    WeightedPath, DEFAULT_NODE_LIMIT,
};
pub use simplex::{lp_solve_dense, Constraint, LpSolution};

use serde::Serialize;

use crate::error::{Error, Result};

/// A nonnegative weight per label.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct FractionalLabeling(Vec<f64>);

impl FractionalLabeling {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if let Some(v) = x.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::input(format!("label weight {v} is not a finite nonnegative number")));
        }
        Ok(FractionalLabeling(x))
    }

    pub fn zeros(q: usize) -> Self {
        FractionalLabeling(vec![0.0; q])
    }

    pub fn uniform(q: usize, value: f64) -> Self {
        assert!(value.is_finite() && value >= 0.0);
        FractionalLabeling(vec![value; q])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `sum_l x_l`
    pub fn objective(&self) -> f64 {
        self.0.iter().sum()
    }
}
