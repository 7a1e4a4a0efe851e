//! Exact computations with weight modules over the Virasoro algebra.
//!
//! * [`scalar`]: the coefficient field ℚ(i).
//! * [`algebra`]: the Lie bracket, PBW normal ordering in the enveloping
//!   algebra, the grading and the anti-involution ω.
//! * [`modules`]: window-truncated realizations of intermediate series,
//!   Verma and anti-Verma modules, direct sums, contragredient duals,
//!   generated submodules and quotients.
//! * [`analysis`]: axiom checks, primitive vectors, simplicity, module maps,
//!   trivial composition factors and the four-way classification.

pub mod algebra;
pub mod analysis;
pub mod error;
pub mod linalg;
pub mod modules;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use scalar::{GaussianRational, Rational, Scalar};
