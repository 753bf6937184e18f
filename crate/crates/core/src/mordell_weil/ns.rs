//! Néron-Severi lattice generated by the trivial lattice and given sections.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::section::Section;
use super::surface::{EllipticSurface, HitTable};
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};
use crate::lattices::hnf::{hnf, lattice_basis_rational, left_kernel};
use crate::lattices::matrix::fmt_rat;
use crate::lattices::{BinaryForm, QMatrix};
use crate::surfaces::fiber::{ComponentLabel, FrobeniusAction, Kodaira};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Basis element of the ambient rational space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NsBasis {
    Zero,
    Fiber,
    Component { fiber: usize, label: ComponentLabel },
    Section(usize),
}

/// A Q-divisor in the ambient basis of a frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDivisor {
    pub coeffs: Vec<BigRational>,
    names: Vec<String>,
}

impl QDivisor {
    pub fn coeff(&self, name: &str) -> Option<&BigRational> {
        self.names.iter().position(|n| n == name).map(|i| &self.coeffs[i])
    }
}

impl fmt::Display for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (c, n) in self.coeffs.iter().zip(&self.names) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let term = if a.is_one() { n.clone() } else { format!("{}·{}", fmt_rat(&a), n) };
            if s.is_empty() {
                s = if neg { format!("−{}", term) } else { term };
            } else {
                s += &format!(" {} {}", if neg { "−" } else { "+" }, term);
            }
        }
        if s.is_empty() {
            s = "0".into();
        }
        write!(f, "{}", s)
    }
}

/// Ambient space spanned by O, F, the non-identity components of the reducible
/// fibers and the free sections, with its intersection form.
#[derive(Clone, Debug)]
pub struct NsFrame<K: Scalar> {
    pub basis: Vec<NsBasis>,
    pub names: Vec<String>,
    pub gram: QMatrix,
    pub free: Vec<Section<K>>,
    pub torsion: Vec<Section<K>>,
    /// Hits of free sections followed by torsion sections.
    pub hits: HitTable,
    pub chi: u32,
}

/// Discriminant of the Néron-Severi lattice by two independent routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NsDiscriminant {
    #[serde(serialize_with = "super::height::ser_rat")]
    pub by_formula: BigRational,
    #[serde(serialize_with = "super::height::ser_rat")]
    pub by_gram: BigRational,
    pub rank: usize,
    pub torsion_order: usize,
}

/// Orthogonal complement of a sublattice, in a basis normalized by a lower
/// Hermite form of its coordinates along the new directions.
#[derive(Clone, Debug)]
pub struct Complement {
    pub gram: QMatrix,
    pub basis: Vec<QDivisor>,
    /// Coordinates of the basis along the new directions.
    pub coordinates: Vec<Vec<BigInt>>,
    pub directions: Vec<String>,
}

impl Complement {
    pub fn binary_form(&self) -> Option<BinaryForm> {
        let m = self.gram.to_int_rows()?;
        if m.len() != 2 {
            return None;
        }
        Some(BinaryForm { a: m[0][0].clone(), b: m[0][1].clone(), c: m[1][1].clone() })
    }
}

/// Subgroup generated by torsion sections.
pub fn torsion_closure<K: Scalar>(surface: &EllipticSurface<K>, gens: &[Section<K>], bound: usize) -> Result<Vec<Section<K>>> {
    let law = surface.law();
    let mut set: HashSet<Section<K>> = HashSet::new();
    let mut elems = vec![Section::Zero];
    set.insert(Section::Zero);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let s = law.add(&elems[i], g);
            if set.insert(s.clone()) {
                elems.push(s);
                if elems.len() > bound {
                    return Err(Error::Invalid("torsion generators generate a large or infinite group".into()));
                }
            }
        }
        i += 1;
    }
    Ok(elems)
}

fn label_name(fiber: usize, label: ComponentLabel, multi: bool) -> String {
    if multi {
        format!("{}[{}]", label, fiber)
    } else {
        format!("{}", label)
    }
}

impl<K: Scalar> NsFrame<K> {
    /// Frame for the given free sections and the torsion subgroup generated by `torsion`.
    pub fn new(surface: &EllipticSurface<K>, free: &[Section<K>], torsion: &[Section<K>]) -> Result<Self> {
        for f in surface.reducible_fibers() {
            if f.residue_degree != 1 {
                return Err(Error::Unsupported(format!("reducible fiber at a place of degree {}", f.residue_degree)));
            }
        }
        for s in free.iter().chain(torsion) {
            surface.check(s)?;
        }
        let tors: Vec<Section<K>> = torsion_closure(surface, torsion, 64)?.into_iter().filter(|s| !s.is_zero()).collect();
        let mut all: Vec<Section<K>> = free.to_vec();
        all.extend(tors.iter().cloned());
        let hits = surface.hits(&all)?;
        let chi = surface.chi();
        let mut basis = vec![NsBasis::Zero, NsBasis::Fiber];
        let mut names = vec!["O".to_string(), "F".to_string()];
        let nfib = hits.kodaira.len();
        for (f, &k) in hits.kodaira.iter().enumerate() {
            for label in k.non_identity() {
                basis.push(NsBasis::Component { fiber: f, label });
                names.push(label_name(f, label, nfib > 1));
            }
        }
        for i in 0..free.len() {
            basis.push(NsBasis::Section(i));
            names.push(format!("P{}", i + 1));
        }
        let n = basis.len();
        let mut gram = QMatrix::zeros(n, n);
        let mut po = Vec::new();
        for s in free {
            po.push(surface.zero_intersection(s)?);
        }
        for i in 0..n {
            for j in 0..n {
                let v: BigRational = match (&basis[i], &basis[j]) {
                    (NsBasis::Zero, NsBasis::Zero) => rat(-(chi as i64)),
                    (NsBasis::Zero, NsBasis::Fiber) | (NsBasis::Fiber, NsBasis::Zero) => rat(1),
                    (NsBasis::Fiber, NsBasis::Fiber) => rat(0),
                    (NsBasis::Zero, NsBasis::Component { .. }) | (NsBasis::Component { .. }, NsBasis::Zero) => rat(0),
                    (NsBasis::Fiber, NsBasis::Component { .. }) | (NsBasis::Component { .. }, NsBasis::Fiber) => rat(0),
                    (NsBasis::Fiber, NsBasis::Section(_)) | (NsBasis::Section(_), NsBasis::Fiber) => rat(1),
                    (NsBasis::Zero, NsBasis::Section(a)) | (NsBasis::Section(a), NsBasis::Zero) => rat(po[*a]),
                    (NsBasis::Component { fiber: f1, label: l1 }, NsBasis::Component { fiber: f2, label: l2 }) => {
                        if f1 != f2 {
                            rat(0)
                        } else {
                            let k = hits.kodaira[*f1];
                            let comps = k.non_identity();
                            let m = k.intersection_matrix();
                            let a = comps.iter().position(|c| c == l1).unwrap();
                            let b = comps.iter().position(|c| c == l2).unwrap();
                            m.get(a, b).clone()
                        }
                    }
                    (NsBasis::Component { fiber, label }, NsBasis::Section(a)) | (NsBasis::Section(a), NsBasis::Component { fiber, label }) => {
                        rat(if hits.labels[*fiber][*a] == *label { 1 } else { 0 })
                    }
                    (NsBasis::Section(a), NsBasis::Section(b)) => {
                        if a == b {
                            rat(-(chi as i64))
                        } else if a < b {
                            surface.intersection_via_height(&free[*a], &free[*b])?
                        } else {
                            continue;
                        }
                    }
                };
                gram.set(i, j, v);
            }
        }
        for i in 0..n {
            for j in 0..i {
                if let (NsBasis::Section(_), NsBasis::Section(_)) = (&basis[i], &basis[j]) {
                    let v = gram.get(j, i).clone();
                    gram.set(i, j, v);
                }
            }
        }
        Ok(NsFrame { basis, names, gram, free: free.to_vec(), torsion: tors, hits, chi })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn div(&self, coeffs: Vec<BigRational>) -> QDivisor {
        QDivisor { coeffs, names: self.names.clone() }
    }

    fn index(&self, b: &NsBasis) -> usize {
        self.basis.iter().position(|x| x == b).unwrap()
    }

    /// Hit vector of section column `col` of the hit table and the correction
    /// Σ (−A⁻¹)Θ that makes a divisor orthogonal to all components.
    fn component_part(&self, col: usize) -> Vec<BigRational> {
        let mut v = vec![rat(0); self.dim()];
        for (f, &k) in self.hits.kodaira.iter().enumerate() {
            let comps = k.non_identity();
            let Some(h) = comps.iter().position(|&c| c == self.hits.labels[f][col]) else { continue };
            let inv = k.intersection_matrix().inverse().unwrap();
            for (i, &c) in comps.iter().enumerate() {
                let idx = self.index(&NsBasis::Component { fiber: f, label: c });
                v[idx] = -inv.get(i, h).clone();
            }
        }
        v
    }

    /// φ(P) for the i-th free section: P − O − (χ + (P.O))F + Σ (−A⁻¹)Θ.
    pub fn phi(&self, i: usize) -> QDivisor {
        let mut v = self.component_part(i);
        let si = self.index(&NsBasis::Section(i));
        let po = self.gram.get(0, si).clone();
        v[si] = rat(1);
        v[0] = rat(-1);
        v[1] = -(rat(self.chi as i64) + po);
        self.div(v)
    }

    /// A torsion section as a divisor class: O + (χ + (T.O))F − Σ (−A⁻¹)Θ.
    pub fn torsion_class(&self, t_index: usize, surface: &EllipticSurface<K>) -> Result<QDivisor> {
        let col = self.free.len() + t_index;
        let t = &self.torsion[t_index];
        let po = surface.zero_intersection(t)?;
        let mut v: Vec<BigRational> = self.component_part(col).into_iter().map(|x| -x).collect();
        v[0] = rat(1);
        v[1] = rat(self.chi as i64 + po);
        Ok(self.div(v))
    }

    pub fn pair(&self, a: &QDivisor, b: &QDivisor) -> BigRational {
        self.gram.bilinear(&a.coeffs, &b.coeffs)
    }

    /// Intersection of two Q-divisors; both must be expressed in this frame.
    pub fn intersect(&self, a: &QDivisor, b: &QDivisor) -> Result<BigRational> {
        for d in [a, b] {
            if d.names != self.names {
                return Err(Error::IncompletePairing(format!("divisor over basis {{{}}} is not in this frame", d.names.join(", "))));
            }
        }
        Ok(self.pair(a, b))
    }

    /// φ of a section: the zero divisor for O, φ(P_i) for a free section P_i.
    pub fn phi_section(&self, p: &Section<K>) -> Result<QDivisor> {
        if p.is_zero() {
            return Ok(self.div(vec![rat(0); self.dim()]));
        }
        if self.torsion.contains(p) {
            return Ok(self.div(vec![rat(0); self.dim()]));
        }
        match self.free.iter().position(|s| s == p) {
            Some(i) => Ok(self.phi(i)),
            None => Err(Error::IncompletePairing(format!("section {} is not among the frame generators", p))),
        }
    }

    /// Σ_i (−A⁻¹)_{i,c} Θ_i at one fiber: the fiber part of φ for a section meeting `label`.
    pub fn component_correction(&self, fiber: usize, label: ComponentLabel) -> Result<QDivisor> {
        let k = *self.hits.kodaira.get(fiber).ok_or_else(|| Error::Invalid(format!("no reducible fiber {}", fiber)))?;
        let comps = k.non_identity();
        let h = comps.iter().position(|&c| c == label).ok_or_else(|| Error::Invalid(format!("{} is not a non-identity component of {}", label, k)))?;
        let inv = k.intersection_matrix().inverse().unwrap();
        let mut v = vec![rat(0); self.dim()];
        for (i, &c) in comps.iter().enumerate() {
            v[self.index(&NsBasis::Component { fiber, label: c })] = -inv.get(i, h).clone();
        }
        Ok(self.div(v))
    }

    pub fn unit(&self, b: &NsBasis) -> QDivisor {
        let mut v = vec![rat(0); self.dim()];
        v[self.index(b)] = rat(1);
        self.div(v)
    }

    /// Classes of the trivial lattice: O, F and the non-identity components,
    /// optionally restricted to some fibers.
    pub fn trivial_generators(&self, fibers: Option<&[usize]>) -> Vec<QDivisor> {
        self.basis
            .iter()
            .filter(|b| match b {
                NsBasis::Zero | NsBasis::Fiber => true,
                NsBasis::Component { fiber, .. } => fibers.map(|fs| fs.contains(fiber)).unwrap_or(true),
                NsBasis::Section(_) => false,
            })
            .map(|b| self.unit(b))
            .collect()
    }

    /// All torsion classes.
    pub fn torsion_classes(&self, surface: &EllipticSurface<K>) -> Result<Vec<QDivisor>> {
        (0..self.torsion.len()).map(|i| self.torsion_class(i, surface)).collect()
    }

    /// Generators of the lattice: trivial lattice, torsion and free sections.
    pub fn generators(&self, surface: &EllipticSurface<K>) -> Result<Vec<QDivisor>> {
        let mut g = self.trivial_generators(None);
        g.extend(self.torsion_classes(surface)?);
        for i in 0..self.free.len() {
            g.push(self.unit(&NsBasis::Section(i)));
        }
        Ok(g)
    }

    /// Z-basis of the lattice spanned by `gens`.
    pub fn lattice_basis(&self, gens: &[QDivisor]) -> Vec<QDivisor> {
        let rows: Vec<Vec<BigRational>> = gens.iter().map(|g| g.coeffs.clone()).collect();
        lattice_basis_rational(&rows).into_iter().map(|r| self.div(r)).collect()
    }

    pub fn gram_of(&self, basis: &[QDivisor]) -> QMatrix {
        let rows: Vec<Vec<BigRational>> = basis.iter().map(|g| g.coeffs.clone()).collect();
        self.gram.gram_of(&rows)
    }

    /// Discriminant as d(trivial) · det(heights) / |torsion|², and as the
    /// determinant of a Gram matrix of a lattice basis.
    pub fn discriminant(&self, surface: &EllipticSurface<K>) -> Result<NsDiscriminant> {
        let mut d_triv = BigInt::from(-1);
        for k in &self.hits.kodaira {
            d_triv *= crate::lattices::root_discriminant(k.root_type().unwrap());
        }
        let heights = surface.height_gram(&self.free)?;
        let tors = self.torsion.len() + 1;
        let by_formula = BigRational::from_integer(d_triv) * heights.det() / rat((tors * tors) as i64);
        let basis = self.lattice_basis(&self.generators(surface)?);
        let g = self.gram_of(&basis);
        if !g.is_integral() {
            return Err(Error::Invalid("lattice Gram matrix is not integral".into()));
        }
        Ok(NsDiscriminant { by_formula, by_gram: g.det(), rank: basis.len(), torsion_order: tors })
    }

    /// Orthogonal complement in the full lattice of the sublattice spanned by
    /// `sub`. The new directions are the ambient axes outside `old_axes`.
    pub fn complement(&self, surface: &EllipticSurface<K>, sub: &[QDivisor], old_axes: &[NsBasis]) -> Result<Complement> {
        let basis = self.lattice_basis(&self.generators(surface)?);
        let pair_rows: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|b| sub.iter().map(|m| self.pair(b, m)).collect::<Vec<_>>())
            .map(|r| r.into_iter().map(|x| if x.is_integer() { Ok(x.to_integer()) } else { Err(Error::Invalid("non-integral pairing".into())) }).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let ker = left_kernel(&pair_rows);
        let vecs: Vec<Vec<BigRational>> = ker
            .iter()
            .map(|k| {
                let mut v = vec![rat(0); self.dim()];
                for (c, b) in k.iter().zip(&basis) {
                    for (x, y) in v.iter_mut().zip(&b.coeffs) {
                        *x += BigRational::from_integer(c.clone()) * y;
                    }
                }
                v
            })
            .collect();
        let new_axes: Vec<usize> = (0..self.dim()).filter(|&i| !old_axes.contains(&self.basis[i])).collect();
        let c = vecs.len();
        if c == 0 {
            return Err(Error::Invalid("the sublattice has finite index: no new classes in characteristic p".into()));
        }
        if new_axes.len() != c {
            return Err(Error::Invalid(format!("complement of rank {} but {} new directions", c, new_axes.len())));
        }
        let coords: Vec<Vec<BigRational>> = vecs.iter().map(|v| new_axes.iter().map(|&i| v[i].clone()).collect()).collect();
        let nmat = QMatrix::from_rows(coords.clone());
        let ninv = nmat.inverse().ok_or_else(|| Error::Invalid("complement not determined by the new directions".into()))?;
        let int_coords: Vec<Vec<BigInt>> = coords
            .iter()
            .map(|r| r.iter().map(|x| if x.is_integer() { Ok(x.to_integer()) } else { Err(Error::Invalid("non-integral coordinates".into())) }).collect())
            .collect::<Result<_>>()?;
        let h = lower_hnf(&int_coords);
        let hq = QMatrix::from_rows(h.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect());
        let comb = hq.mul(&ninv);
        let vm = QMatrix::from_rows(vecs);
        let w = comb.mul(&vm);
        let wdivs: Vec<QDivisor> = w.to_rows().into_iter().map(|r| self.div(r)).collect();
        let gram = self.gram_of(&wdivs);
        Ok(Complement { gram, basis: wdivs, coordinates: h, directions: new_axes.iter().map(|&i| self.names[i].clone()).collect() })
    }
}

/// Lower-triangular Hermite form: rows (h11, 0, ...), (h21, h22, 0, ...), ...
/// with 0 ≤ h_ij < h_jj below the diagonal.
pub fn lower_hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let rev: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().rev().cloned().collect()).collect();
    let mut h: Vec<Vec<BigInt>> = hnf(&rev).into_iter().map(|r| r.into_iter().rev().collect()).collect();
    h.reverse();
    h
}

/// Rank of the Frobenius-invariant part of the lattice generated by the
/// trivial lattice and free sections, with the Frobenius-conjugate of a
/// section given by `frob`. `orbits` counts the Frobenius orbits on the
/// non-identity components of all reducible fibers over the ground field.
pub fn invariant_rank<K: Scalar>(surface: &EllipticSurface<K>, free: &[Section<K>], orbits: u32, frob: impl Fn(&Section<K>) -> Section<K>) -> Result<u32> {
    let r = free.len();
    if r == 0 {
        return Ok(2 + orbits);
    }
    let h = surface.height_gram(free)?;
    let hinv = h.inverse().ok_or(Error::SingularGram)?;
    let mut phi = QMatrix::zeros(r, r);
    for i in 0..r {
        let fi = frob(&free[i]);
        surface.check(&fi)?;
        let hv: Vec<BigRational> = free.iter().map(|p| surface.height_pairing(&fi, p).map(|b| b.value)).collect::<Result<_>>()?;
        let c: Vec<BigRational> = (0..r).map(|a| (0..r).map(|b| hinv.get(a, b) * &hv[b]).sum()).collect();
        let self_h = surface.height(&fi)?.value;
        if h.bilinear(&c, &c) != self_h {
            return Err(Error::Unresolved("Frobenius image outside the span of the given sections".into()));
        }
        for (j, x) in c.into_iter().enumerate() {
            phi.set(i, j, x);
        }
    }
    let mut d = phi;
    for i in 0..r {
        let v = d.get(i, i) - BigRational::one();
        d.set(i, i, v);
    }
    Ok(2 + orbits + (r - d.rank()) as u32)
}

/// Lengths of the Frobenius orbits on the non-identity components of a fiber.
pub fn orbit_lengths(k: Kodaira, frob: &FrobeniusAction) -> Vec<u32> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for c in k.non_identity() {
        if seen.contains(&c) {
            continue;
        }
        let mut len = 0;
        let mut d = c;
        while seen.insert(d) {
            len += 1;
            d = frob.apply(k, d);
        }
        out.push(len);
    }
    out
}

/// Number of Frobenius orbits on the non-identity components of a fiber.
pub fn component_orbits(k: Kodaira, frob: &FrobeniusAction) -> u32 {
    orbit_lengths(k, frob).len() as u32
}
