//! Configuration of singular fibers of a Weierstrass model.

use std::fmt;

use num_bigint::BigInt;

use super::fiber::RootType;
use super::model::Weierstrass;
use super::tate::{tate, Fiber, Place};
use crate::algebra::scalar::{Scalar, ScalarField};
use crate::error::Result;
use crate::lattices::root_discriminant;

#[derive(Clone, Debug)]
pub struct Configuration<K: Scalar> {
    /// All singular fibers, finite places first in factor order, then infinity.
    pub fibers: Vec<Fiber<K>>,
    pub chi: u32,
}

impl<K: Scalar> Configuration<K> {
    pub fn compute(model: &Weierstrass<K>) -> Result<Self> {
        let disc = model.discriminant();
        let mut fibers = Vec::new();
        for (p, _) in model.field().factor_poly(&disc)? {
            if p.deg() < 1 {
                continue;
            }
            fibers.push(tate(model, &Place::Finite(p), &[])?.0);
        }
        if model.disc_valuation_inf() > 0 {
            fibers.push(tate(model, &Place::Infinity, &[])?.0);
        }
        Ok(Configuration { fibers, chi: model.chi })
    }

    pub fn reducible(&self) -> impl Iterator<Item = &Fiber<K>> {
        self.fibers.iter().filter(|f| f.kodaira.is_reducible())
    }

    /// Rank of the trivial lattice over the algebraic closure.
    pub fn trivial_rank(&self) -> u32 {
        2 + self.reducible().map(|f| f.residue_degree as u32 * (f.kodaira.component_count() - 1)).sum::<u32>()
    }

    /// Root lattices over the algebraic closure, with multiplicity from place degrees.
    pub fn root_types(&self) -> Vec<RootType> {
        let mut v = Vec::new();
        for f in self.reducible() {
            for _ in 0..f.residue_degree {
                v.push(f.kodaira.root_type().unwrap());
            }
        }
        v
    }

    /// Discriminant of the trivial lattice U ⊕ (⊕ roots).
    pub fn trivial_discriminant(&self) -> BigInt {
        let mut d = BigInt::from(-1);
        for t in self.root_types() {
            d *= root_discriminant(t);
        }
        d
    }

    /// Σ deg(v) e(F_v) over singular fibers, with e the Euler number of the fiber type.
    pub fn euler_sum(&self) -> u32 {
        self.fibers.iter().map(|f| f.residue_degree as u32 * f.kodaira.euler_number()).sum()
    }

    /// Total wild excess of the discriminant.
    pub fn wild_excess(&self) -> u32 {
        self.fibers.iter().map(|f| f.residue_degree as u32 * f.wild_excess()).sum()
    }

    pub fn find(&self, place: &Place<K>) -> Option<&Fiber<K>> {
        self.fibers.iter().find(|f| &f.place == place)
    }
}

impl<K: Scalar> fmt::Display for Configuration<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.fibers.iter().map(|fb| format!("{} at {}", fb.kodaira, fb.place)).collect();
        write!(f, "{}", parts.join(", "))
    }
}
