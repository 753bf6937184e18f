//! Exact arithmetic of the extremal elliptic K3 surface with singular fibers
//! I1, I1, I1, I12 and I3*.
//!
//! Modules:
//! - [`algebra`]: finite fields, Q, polynomials, rational functions, Z[ω];
//! - [`hecke`]: the weight-3 CM newform of level 27 and its twists;
//! - [`surfaces`]: Weierstrass models, Tate's algorithm, point counting;
//! - [`lattices`]: Gram matrices, discriminants, binary forms;
//! - [`mordell_weil`]: sections, heights, Néron–Severi computations;
//! - [`zeta`]: local zeta functions and Tate-conjecture checks.

pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod hecke;
pub mod lattices;
pub mod mordell_weil;
pub mod surfaces;
pub mod zeta;

pub use error::{Error, Result};
