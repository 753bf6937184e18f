//! Intersection numbers of sections and the height pairing.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::section::Section;
use super::surface::{EllipticSurface, HitTable};
use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};
use crate::lattices::matrix::fmt_rat;
use crate::lattices::QMatrix;
use crate::surfaces::fiber::{ComponentLabel, Kodaira};
use crate::surfaces::tate::{sections_at_infinity, Place};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Correction term of one reducible fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Correction {
    pub place: String,
    pub kodaira: Kodaira,
    pub components: (ComponentLabel, ComponentLabel),
    #[serde(serialize_with = "ser_rat")]
    pub value: BigRational,
}

impl Correction {
    /// The value written over the order of the component group, e.g. 32/12 for I12.
    pub fn unreduced(&self) -> String {
        if self.value.is_integer() {
            return self.value.to_integer().to_string();
        }
        let d = self.kodaira.component_group_order() as i64;
        let num = &self.value * rat(d);
        if num.is_integer() {
            format!("{}/{}", num.to_integer(), d)
        } else {
            fmt_rat(&self.value)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HeightRoute {
    Direct,
    /// (h(P+Q) - h(P) - h(Q)) / 2, used when (P.Q) is not determined locally.
    Polarization,
}

/// ⟨P,Q⟩ = constant - (P.Q) - Σ corrections, with constant = χ + (P.O) + (Q.O).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightBreakdown {
    #[serde(serialize_with = "ser_rat")]
    pub value: BigRational,
    pub constant: i64,
    /// (P.Q), or None for the polarization route or P = Q.
    pub intersection: Option<i64>,
    pub corrections: Vec<Correction>,
    pub route: HeightRoute,
}

pub(crate) fn ser_rat<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(x))
}

impl HeightBreakdown {
    /// The sum as written term by term, e.g. "4 − 7/4 − 11/12".
    pub fn expression(&self) -> String {
        let mut s = self.constant.to_string();
        if let Some(i) = self.intersection {
            if i != 0 {
                s += &format!(" − {}", i);
            }
        }
        for c in &self.corrections {
            if !c.value.is_zero() {
                s += &format!(" − {}", c.unreduced());
            }
        }
        s
    }
}

impl fmt::Display for HeightBreakdown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.route {
            HeightRoute::Direct => write!(f, "{} = {}", self.expression(), fmt_rat(&self.value)),
            HeightRoute::Polarization => write!(f, "{} (by polarization)", fmt_rat(&self.value)),
        }
    }
}

fn strip<K: Scalar>(mut g: Poly<K>, d: &Poly<K>) -> Poly<K> {
    if d.is_zero() {
        return g;
    }
    loop {
        let c = g.gcd(d);
        if c.deg() < 1 {
            return g;
        }
        g = g.exact_div(&c).unwrap();
    }
}

fn part_supported_on<K: Scalar>(mut g: Poly<K>, d: &Poly<K>) -> Poly<K> {
    let mut acc = Poly::one(g.field());
    loop {
        let c = g.gcd(d);
        if c.deg() < 1 {
            return acc;
        }
        g = g.exact_div(&c).unwrap();
        acc = &acc * &c;
    }
}

impl<K: Scalar> EllipticSurface<K> {
    /// (P.O) for a section P ≠ O.
    pub fn zero_intersection(&self, p: &Section<K>) -> Result<i64> {
        let x = p.x().ok_or_else(|| Error::Invalid("(O.O) is -χ, not a section intersection".into()))?;
        let fin = x.den().deg();
        let chart = &sections_at_infinity(self.chi(), &[p.coords()])[0];
        let (xc, _) = chart.as_ref().unwrap();
        let vinf = xc.valuation(&Poly::x(self.model.field()));
        let inf = if vinf < 0 { -vinf } else { 0 };
        if fin % 2 != 0 || inf % 2 != 0 {
            return Err(Error::Invalid("pole orders of x must be even".into()));
        }
        Ok((fin + inf) / 2)
    }

    /// (P.Q) for distinct sections P, Q ≠ O; `hits` must label [P, Q].
    pub fn section_intersection(&self, p: &Section<K>, q: &Section<K>, hits: &HitTable) -> Result<i64> {
        let (Some((xp, yp)), Some((xq, yq))) = (p.coords(), q.coords()) else {
            return Err(Error::Invalid("intersection with the zero section uses zero_intersection".into()));
        };
        if p == q {
            return Err(Error::Invalid("self-intersection of a section is -χ".into()));
        }
        let field = self.model.field().clone();
        let finite = {
            let poles = xp.den() * xq.den();
            let dx = &xp - &xq;
            let dy = &yp - &yq;
            let mut g = if dx.is_zero() { dy.num().clone() } else if dy.is_zero() { dx.num().clone() } else { dx.num().gcd(dy.num()) };
            g = strip(g, &poles);
            for (f, fiber) in self.reducible_fibers().iter().enumerate() {
                let Place::Finite(pl) = &fiber.place else { continue };
                let (lp, lq) = (hits.labels[f][0], hits.labels[f][1]);
                let id = ComponentLabel::identity(fiber.kodaira);
                if lp == id && lq == id {
                    continue;
                }
                if lp == lq {
                    return Err(Error::Unresolved(format!("both sections meet {} of the {} fiber at {}", lp, fiber.kodaira, fiber.place)));
                }
                g = strip(g, pl);
            }
            let common = xp.den().gcd(xq.den());
            let mut near_zero = 0;
            if common.deg() > 0 {
                let zp = xp.div(&yp).unwrap();
                let zq = xq.div(&yq).unwrap();
                near_zero = part_supported_on((&zp - &zq).num().clone(), &common).deg();
            }
            g.deg() + near_zero
        };
        let infinite = {
            let chart = sections_at_infinity(self.chi(), &[p.coords(), q.coords()]);
            let (xp, yp) = chart[0].clone().unwrap();
            let (xq, yq) = chart[1].clone().unwrap();
            let u = Poly::x(&field);
            let (vp, vq) = (xp.valuation(&u), xq.valuation(&u));
            if vp < 0 && vq < 0 {
                let zp = xp.div(&yp).unwrap();
                let zq = xq.div(&yq).unwrap();
                (&zp - &zq).valuation(&u)
            } else if vp < 0 || vq < 0 {
                0
            } else {
                let at_inf = self.reducible_fibers().iter().position(|f| f.place == Place::Infinity);
                let mut skip = false;
                if let Some(f) = at_inf {
                    let k = hits.kodaira[f];
                    let (lp, lq) = (hits.labels[f][0], hits.labels[f][1]);
                    let id = ComponentLabel::identity(k);
                    if !(lp == id && lq == id) {
                        if lp == lq {
                            return Err(Error::Unresolved(format!("both sections meet {} of the {} fiber at infinity", lp, k)));
                        }
                        skip = true;
                    }
                }
                if skip {
                    0
                } else {
                    let v = |f: RatFunc<K>| if f.is_zero() { i64::MAX } else { f.valuation(&u) };
                    v(&xp - &xq).min(v(&yp - &yq)).max(0)
                }
            }
        };
        Ok(finite + infinite)
    }

    fn corrections(&self, hits: &HitTable, i: usize, j: usize) -> Vec<Correction> {
        (0..hits.places.len())
            .map(|f| {
                let k = hits.kodaira[f];
                let (a, b) = (hits.labels[f][i], hits.labels[f][j]);
                let value = k.contribution(a, b) * rat(hits.residue_degree[f] as i64);
                Correction { place: hits.places[f].clone(), kodaira: k, components: (a, b), value }
            })
            .collect()
    }

    /// Self-height ⟨P,P⟩ with its breakdown.
    pub fn height(&self, p: &Section<K>) -> Result<HeightBreakdown> {
        if p.is_zero() {
            return Ok(HeightBreakdown { value: rat(0), constant: 0, intersection: None, corrections: Vec::new(), route: HeightRoute::Direct });
        }
        let hits = self.hits(std::slice::from_ref(p))?;
        let constant = 2 * self.chi() as i64 + 2 * self.zero_intersection(p)?;
        let corrections = self.corrections(&hits, 0, 0);
        let value = corrections.iter().fold(rat(constant), |acc, c| acc - &c.value);
        Ok(HeightBreakdown { value, constant, intersection: None, corrections, route: HeightRoute::Direct })
    }

    /// Height pairing ⟨P,Q⟩, directly when the intersection is determined
    /// locally and by polarization otherwise.
    pub fn height_pairing(&self, p: &Section<K>, q: &Section<K>) -> Result<HeightBreakdown> {
        if p == q {
            return self.height(p);
        }
        if p.is_zero() || q.is_zero() {
            return Ok(HeightBreakdown { value: rat(0), constant: 0, intersection: None, corrections: Vec::new(), route: HeightRoute::Direct });
        }
        let hits = self.hits(&[p.clone(), q.clone()])?;
        match self.section_intersection(p, q, &hits) {
            Ok(pq) => {
                let constant = self.chi() as i64 + self.zero_intersection(p)? + self.zero_intersection(q)?;
                let corrections = self.corrections(&hits, 0, 1);
                let value = corrections.iter().fold(rat(constant - pq), |acc, c| acc - &c.value);
                Ok(HeightBreakdown { value, constant, intersection: Some(pq), corrections, route: HeightRoute::Direct })
            }
            Err(Error::Unresolved(_)) => {
                let sum = self.law().add(p, q);
                let v = (self.height(&sum)?.value - self.height(p)?.value - self.height(q)?.value) / rat(2);
                Ok(HeightBreakdown { value: v, constant: 0, intersection: None, corrections: Vec::new(), route: HeightRoute::Polarization })
            }
            Err(e) => Err(e),
        }
    }

    /// Gram matrix of the height pairing.
    pub fn height_gram(&self, sections: &[Section<K>]) -> Result<QMatrix> {
        let n = sections.len();
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.height_pairing(&sections[i], &sections[j])?.value;
                m.set(i, j, v.clone());
                m.set(j, i, v);
            }
        }
        Ok(m)
    }

    /// (P.Q) recovered from the height pairing, valid also when it is not
    /// determined locally.
    pub fn intersection_via_height(&self, p: &Section<K>, q: &Section<K>) -> Result<BigRational> {
        let hits = self.hits(&[p.clone(), q.clone()])?;
        let constant = self.chi() as i64 + self.zero_intersection(p)? + self.zero_intersection(q)?;
        let corr: BigRational = self.corrections(&hits, 0, 1).iter().map(|c| c.value.clone()).sum();
        let h = self.height_pairing(p, q)?.value;
        let r = rat(constant) - corr - h;
        if r.is_negative() {
            return Err(Error::Invalid("negative intersection number".into()));
        }
        Ok(r)
    }
}
