//! Tolerances shared by the floating-point code paths.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Identities that hold exactly in theory (skewness, table lookups).
    pub identity: f64,
    /// Quantities produced by a chain of floating operations.
    pub derived: f64,
    /// Numeric residual above which a search reports no flat plane.
    pub positivity: f64,
    /// Residual below which a frame counts as a flat witness.
    pub witness: f64,
    /// Frames whose Gram determinant falls below this are resampled.
    pub min_gram_det: f64,
}

pub const TOLERANCES: Tolerances = Tolerances {
    identity: 1e-12,
    derived: 1e-9,
    positivity: 1e-6,
    witness: 1e-10,
    min_gram_det: 1e-8,
};

impl Default for Tolerances {
    fn default() -> Self {
        TOLERANCES
    }
}
