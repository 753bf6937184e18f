//! Exact arithmetic: fields, polynomials, factorization, Eisenstein integers.

pub mod eisenstein;
pub mod expr;
pub mod factor;
pub mod finite;
pub mod intpoly;
pub mod poly;
pub mod primes;
pub mod ratfunc;
pub mod rational;
pub mod residue;
pub mod scalar;

pub use eisenstein::{cubic_residue_symbol, primary_prime, splitting, Eisenstein, PrimeSplitting};
pub use factor::{factor, factor_rational, is_irreducible, squarefree_decomposition, Factorization};
pub use finite::{FieldElem, Gf};
pub use intpoly::IntPoly;
pub use poly::Poly;
pub use primes::{is_prime, kronecker, primes_up_to};
pub use ratfunc::RatFunc;
pub use rational::{Rat, Rationals};
pub use residue::{ResElem, ResidueField};
pub use scalar::{Scalar, ScalarField};
