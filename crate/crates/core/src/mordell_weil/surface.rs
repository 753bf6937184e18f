//! An elliptic surface with its fiber configuration, and where sections meet
//! the reducible fibers.

use serde::Serialize;

use super::section::{GroupLaw, Section};
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};
use crate::surfaces::config::Configuration;
use crate::surfaces::fiber::{ComponentLabel, Kodaira};
use crate::surfaces::model::Weierstrass;
use crate::surfaces::tate::{tate, Fiber, Place, RawHit, SectionCoords};

#[derive(Clone, Debug)]
pub struct EllipticSurface<K: Scalar> {
    pub model: Weierstrass<K>,
    pub config: Configuration<K>,
}

/// Components met by a list of sections at each reducible fiber, with a
/// consistent labeling across the list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HitTable {
    /// Place descriptions, one per reducible fiber.
    pub places: Vec<String>,
    pub kodaira: Vec<Kodaira>,
    pub residue_degree: Vec<usize>,
    /// `labels[fiber][section]`.
    pub labels: Vec<Vec<ComponentLabel>>,
}

impl HitTable {
    /// Label of section `j` at the fiber of type `k` (first match).
    pub fn at(&self, k: Kodaira, j: usize) -> Option<ComponentLabel> {
        self.kodaira.iter().position(|&x| x == k).map(|f| self.labels[f][j])
    }
    /// Column for one section: (place, type, label).
    pub fn column(&self, j: usize) -> Vec<(String, Kodaira, ComponentLabel)> {
        (0..self.places.len()).map(|f| (self.places[f].clone(), self.kodaira[f], self.labels[f][j])).collect()
    }
}

impl<K: Scalar> EllipticSurface<K> {
    pub fn new(model: Weierstrass<K>) -> Result<Self> {
        let config = Configuration::compute(&model)?;
        Ok(EllipticSurface { model, config })
    }

    pub fn chi(&self) -> u32 {
        self.model.chi
    }

    pub fn law(&self) -> GroupLaw<'_, K> {
        GroupLaw::new(&self.model)
    }

    pub fn check(&self, p: &Section<K>) -> Result<()> {
        if self.law().contains(p) {
            Ok(())
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn reducible_fibers(&self) -> Vec<&Fiber<K>> {
        self.config.reducible().collect()
    }

    fn raw_at(&self, place: &Place<K>, sections: &[Section<K>]) -> Result<Vec<RawHit>> {
        let coords: Vec<SectionCoords<K>> = sections.iter().map(|s| s.coords()).collect();
        Ok(tate(&self.model, place, &coords)?.1)
    }

    /// Raw hits `[fiber][section]` at the reducible fibers.
    pub fn raw_hits(&self, sections: &[Section<K>]) -> Result<Vec<Vec<RawHit>>> {
        self.reducible_fibers().iter().map(|f| self.raw_at(&f.place, sections)).collect()
    }

    /// Consistently labeled hits. For I_n the first section off the symmetry axis
    /// is put on Θ_{n-α} (α ≤ n/2 its distance from Θ0) and the others are placed
    /// using the component of their sum with it; for I_n^* and IV, IV^* the first
    /// section on the mirrored pair is put on C3 (resp. Θ1).
    pub fn hits(&self, sections: &[Section<K>]) -> Result<HitTable> {
        let law = self.law();
        let mut table = HitTable { places: Vec::new(), kodaira: Vec::new(), residue_degree: Vec::new(), labels: Vec::new() };
        for fiber in self.reducible_fibers() {
            let k = fiber.kodaira;
            let raw = self.raw_at(&fiber.place, sections)?;
            let mut labels: Vec<ComponentLabel> = raw
                .iter()
                .map(|h| match *h {
                    RawHit::Identity => ComponentLabel::identity(k),
                    RawHit::Cycle(a) => ComponentLabel::Theta(a),
                    RawHit::Component(c) => c,
                })
                .collect();
            if let Kodaira::I(n) = k {
                let asym = |a: u32| a != 0 && 2 * a != n;
                let alpha: Vec<u32> = raw.iter().map(|h| if let RawHit::Cycle(a) = h { *a } else { 0 }).collect();
                if let Some(r) = (0..sections.len()).find(|&j| asym(alpha[j])) {
                    let a_ref = n - alpha[r];
                    labels[r] = ComponentLabel::Theta(a_ref);
                    let others: Vec<usize> = (0..sections.len()).filter(|&j| j != r && asym(alpha[j])).collect();
                    let sums: Vec<Section<K>> = others.iter().map(|&j| law.add(&sections[r], &sections[j])).collect();
                    let raw_sums = self.raw_at(&fiber.place, &sums)?;
                    for (idx, &j) in others.iter().enumerate() {
                        let a_sum = match raw_sums[idx] {
                            RawHit::Cycle(a) => a,
                            _ => 0,
                        };
                        let ok = |a: u32| {
                            let t = (a_ref + a) % n;
                            t == a_sum || t == (n - a_sum) % n
                        };
                        let cands: Vec<u32> = [alpha[j], n - alpha[j]].into_iter().filter(|&a| ok(a)).collect();
                        if cands.len() != 1 {
                            return Err(Error::Unresolved(format!("orientation of sections at the {} fiber at {}", k, fiber.place)));
                        }
                        labels[j] = ComponentLabel::Theta(cands[0]);
                    }
                }
            } else {
                let pair = match k {
                    Kodaira::IStar(_) => Some((ComponentLabel::C(2), ComponentLabel::C(3))),
                    Kodaira::IV | Kodaira::IVStar => Some((ComponentLabel::Theta(2), ComponentLabel::Theta(1))),
                    _ => None,
                };
                if let Some((wrong, right)) = pair {
                    if let Some(first) = labels.iter().find(|&&l| l == wrong || l == right) {
                        if *first == wrong {
                            labels = labels.iter().map(|&l| k.mirror(l)).collect();
                        }
                    }
                }
            }
            table.places.push(fiber.place.to_string());
            table.kodaira.push(k);
            table.residue_degree.push(fiber.residue_degree);
            table.labels.push(labels);
        }
        Ok(table)
    }
}
