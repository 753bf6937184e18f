//! Mordell-Weil lattices: group law, component hits, heights and the
//! Néron-Severi lattice.

pub mod height;
pub mod ns;
pub mod section;
pub mod surface;

pub use height::{Correction, HeightBreakdown, HeightRoute};
pub use ns::{component_orbits, invariant_rank, orbit_lengths, lower_hnf, torsion_closure, Complement, NsBasis, NsDiscriminant, NsFrame, QDivisor};
pub use section::{GroupLaw, Section};
pub use surface::{EllipticSurface, HitTable};
