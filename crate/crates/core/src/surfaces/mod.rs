//! Elliptic surfaces: Weierstrass models, fiber configurations, point counts.

pub mod config;
pub mod count;
pub mod fiber;
pub mod model;
pub mod parse;
pub mod tate;

pub use fiber::{ComponentLabel, FrobeniusAction, Kodaira, RootType};
pub use model::Weierstrass;
pub use config::Configuration;
pub use count::{count_surface, frobenius_trace, SurfaceCount, TraceContext};
pub use tate::{tate, Fiber, Place, RawHit, SectionCoords};
