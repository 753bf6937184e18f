//! Sections of an elliptic surface and the group law over K(s).

use std::fmt;

use crate::algebra::ratfunc::RatFunc;
use crate::algebra::scalar::{Scalar, ScalarField};
use crate::surfaces::model::Weierstrass;
use crate::surfaces::tate::SectionCoords;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Section<K: Scalar> {
    Zero,
    Affine { x: RatFunc<K>, y: RatFunc<K> },
}

impl<K: Scalar> Section<K> {
    pub fn new(x: RatFunc<K>, y: RatFunc<K>) -> Self {
        Section::Affine { x, y }
    }
    pub fn is_zero(&self) -> bool {
        matches!(self, Section::Zero)
    }
    pub fn coords(&self) -> SectionCoords<K> {
        match self {
            Section::Zero => None,
            Section::Affine { x, y } => Some((x.clone(), y.clone())),
        }
    }
    pub fn x(&self) -> Option<&RatFunc<K>> {
        match self {
            Section::Zero => None,
            Section::Affine { x, .. } => Some(x),
        }
    }
    /// Apply a map to all coefficients (e.g. Frobenius).
    pub fn map_coeffs(&self, f: impl Fn(&K) -> K) -> Self {
        match self {
            Section::Zero => Section::Zero,
            Section::Affine { x, y } => Section::Affine { x: x.map_coeffs(&f), y: y.map_coeffs(&f) },
        }
    }
}

impl<K: Scalar> fmt::Display for Section<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Section::Zero => write!(f, "O"),
            Section::Affine { x, y } => write!(f, "({}, {})", x, y),
        }
    }
}
impl<K: Scalar> fmt::Debug for Section<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Group law of the generic fiber.
pub struct GroupLaw<'a, K: Scalar> {
    a: [RatFunc<K>; 5],
    model: &'a Weierstrass<K>,
}

impl<'a, K: Scalar> GroupLaw<'a, K> {
    pub fn new(model: &'a Weierstrass<K>) -> Self {
        GroupLaw { a: std::array::from_fn(|i| RatFunc::from_poly(model.a[i].clone())), model }
    }

    fn c(&self, n: i64) -> RatFunc<K> {
        RatFunc::constant(self.model.field().from_i64(n))
    }

    pub fn contains(&self, p: &Section<K>) -> bool {
        match p {
            Section::Zero => true,
            Section::Affine { x, y } => self.model.contains(x, y),
        }
    }

    pub fn neg(&self, p: &Section<K>) -> Section<K> {
        match p {
            Section::Zero => Section::Zero,
            Section::Affine { x, y } => {
                let ny = &(&(-y) - &(&self.a[0] * x)) - &self.a[2];
                Section::Affine { x: x.clone(), y: ny }
            }
        }
    }

    pub fn add(&self, p: &Section<K>, q: &Section<K>) -> Section<K> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Section::Zero, _) => return q.clone(),
            (_, Section::Zero) => return p.clone(),
            (Section::Affine { x: x1, y: y1 }, Section::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, a6] = &self.a;
        let (lambda, nu) = if x1 != x2 {
            let dx = x2 - x1;
            let l = (y2 - y1).div(&dx).unwrap();
            let n = (&(y1 * x2) - &(y2 * x1)).div(&dx).unwrap();
            (l, n)
        } else {
            let den = &(&(&self.c(2) * y1) + &(a1 * x1)) + a3;
            if den.is_zero() || (y1 != y2) {
                return Section::Zero;
            }
            let x1sq = x1 * x1;
            let num_l = &(&(&(&self.c(3) * &x1sq) + &(&(&self.c(2) * a2) * x1)) + a4) - &(a1 * y1);
            let num_n = &(&(&(&(-&(&x1sq * x1)) + &(a4 * x1)) + &(&self.c(2) * a6)) - &(a3 * y1));
            (num_l.div(&den).unwrap(), num_n.div(&den).unwrap())
        };
        let x3 = &(&(&(&(&lambda * &lambda) + &(a1 * &lambda)) - a2) - x1) - x2;
        let y3 = &(&(-&(&(&lambda + a1) * &x3)) - &nu) - a3;
        Section::Affine { x: x3, y: y3 }
    }

    pub fn sub(&self, p: &Section<K>, q: &Section<K>) -> Section<K> {
        self.add(p, &self.neg(q))
    }

    pub fn mul(&self, n: i64, p: &Section<K>) -> Section<K> {
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut acc = Section::Zero;
        let mut b = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &b);
            }
            b = self.add(&b, &b);
            k >>= 1;
        }
        acc
    }

    /// Default search bound for torsion orders.
    pub const TORSION_BOUND: u32 = 12;

    /// Order of a torsion section, searched up to `bound`.
    pub fn order(&self, p: &Section<K>, bound: u32) -> Option<u32> {
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_zero() {
                return Some(n);
            }
            acc = self.add(&acc, p);
        }
        None
    }

    /// Multiples P, 2P, ... up to and including O (for torsion sections).
    pub fn multiples(&self, p: &Section<K>, bound: u32) -> Vec<Section<K>> {
        let mut out = Vec::new();
        let mut acc = p.clone();
        for _ in 0..bound {
            out.push(acc.clone());
            if acc.is_zero() {
                break;
            }
            acc = self.add(&acc, p);
        }
        out
    }
}
