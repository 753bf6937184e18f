//! Tate's algorithm over K[s] at a place, in all residue characteristics,
//! tracking where given sections meet the special fiber.

use std::fmt;

use serde::Serialize;

use super::fiber::{ComponentLabel, FrobeniusAction, Kodaira};
use super::model::{invariants, Weierstrass};
use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::residue::{ResElem, ResidueField};
use crate::algebra::scalar::{Scalar, ScalarField};
use crate::error::{Error, Result};

/// A place of K(s): a monic irreducible polynomial or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place<K: Scalar> {
    Finite(Poly<K>),
    Infinity,
}

impl<K: Scalar> Place<K> {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap(),
            Place::Infinity => 1,
        }
    }
    /// The value of s at a degree-one place.
    pub fn rational_point(&self) -> Option<K> {
        match self {
            Place::Finite(p) if p.degree() == Some(1) => Some(-p.coeff(0)),
            _ => None,
        }
    }
}

impl<K: Scalar> fmt::Display for Place<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "s = ∞"),
            Place::Finite(p) => match self.rational_point() {
                Some(a) => write!(f, "s = {}", a),
                None => write!(f, "{} = 0", p),
            },
        }
    }
}

/// A section in affine coordinates; `None` is the zero section.
pub type SectionCoords<K> = Option<(RatFunc<K>, RatFunc<K>)>;

/// Where a section meets a fiber, before any orientation choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RawHit {
    Identity,
    /// I_n: the component at distance α from Θ0, side undetermined.
    Cycle(u32),
    Component(ComponentLabel),
}

/// Result of Tate's algorithm at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber<K: Scalar> {
    pub place: Place<K>,
    pub kodaira: Kodaira,
    /// Valuation of the discriminant of the input model.
    pub disc_valuation: u32,
    /// Number of non-minimal rescalings performed.
    pub rescalings: u32,
    /// Whether all components are defined over the residue field (None if undecidable or not applicable).
    pub split: Option<bool>,
    pub frobenius: FrobeniusAction,
    pub residue_degree: usize,
}

impl<K: Scalar> Fiber<K> {
    /// Discriminant valuation of the minimal model at this place.
    pub fn minimal_disc_valuation(&self) -> u32 {
        self.disc_valuation - 12 * self.rescalings
    }
    /// Wild part of the discriminant: excess over the Euler number.
    pub fn wild_excess(&self) -> u32 {
        self.minimal_disc_valuation() - self.kodaira.euler_number()
    }
    pub fn fixed_non_identity(&self) -> u32 {
        self.frobenius.fixed_non_identity(self.kodaira)
    }
    /// Degree over the residue field of the field of definition of all components.
    pub fn component_field_degree(&self) -> u32 {
        self.frobenius.order(self.kodaira)
    }
}

struct Local<K: Scalar> {
    a: [Poly<K>; 5],
    p: Poly<K>,
    rf: ResidueField<K>,
    secs: Vec<SectionCoords<K>>,
    rescalings: u32,
}

fn tate_err(msg: &str) -> Error {
    Error::Tate(msg.to_string())
}

impl<K: Scalar> Local<K> {
    fn field(&self) -> K::Field {
        self.p.field().clone()
    }
    fn v(&self, f: &Poly<K>) -> usize {
        f.valuation(&self.p)
    }
    fn red(&self, f: &Poly<K>) -> ResElem<K> {
        self.rf.reduce(f)
    }
    fn redk(&self, f: &Poly<K>, k: u32) -> Result<ResElem<K>> {
        let pk = self.p.pow(k);
        f.exact_div(&pk).map(|g| self.red(&g)).ok_or_else(|| tate_err("expected divisibility failed"))
    }
    fn lift(&self, r: &ResElem<K>) -> Poly<K> {
        r.lift().clone()
    }
    /// Reduction of f / P^k for a rational function with v(f) ≥ k.
    fn red_rat(&self, f: &RatFunc<K>, k: i64) -> Option<ResElem<K>> {
        if k < 0 || f.valuation(&self.p) < k {
            return None;
        }
        let num = f.num().exact_div(&self.p.pow(k as u32))?;
        Some(self.red(&num) * self.red(f.den()).inv()?)
    }
    fn k(&self, n: i64) -> Poly<K> {
        Poly::constant(self.field().from_i64(n))
    }

    /// x = x' + r, y = y' + s x' + t.
    fn change(&mut self, r: &Poly<K>, s: &Poly<K>, t: &Poly<K>) {
        let [a1, a2, a3, a4, a6] = self.a.clone();
        let c = |n| self.k(n);
        let n1 = &a1 + &(&c(2) * s);
        let n2 = &(&(&a2 - &(s * &a1)) + &(&c(3) * r)) - &(s * s);
        let n3 = &(&a3 + &(r * &a1)) + &(&c(2) * t);
        let n4 = &(&(&(&(&a4 - &(s * &a3)) + &(&(&c(2) * r) * &a2)) - &(&(t + &(r * s)) * &a1)) + &(&(&c(3) * r) * r))
            - &(&(&c(2) * s) * t);
        let n6 = &(&(&(&(&(&a6 + &(r * &a4)) + &(&(r * r) * &a2)) + &(&(r * r) * r)) - &(t * &a3)) - &(t * t)) - &(&(r * t) * &a1);
        self.a = [n1, n2, n3, n4, n6];
        let (rr, ss, tt) = (RatFunc::from_poly(r.clone()), RatFunc::from_poly(s.clone()), RatFunc::from_poly(t.clone()));
        for sec in self.secs.iter_mut().flatten() {
            let x1 = &sec.0 - &rr;
            let y1 = &(&sec.1 - &(&ss * &x1)) - &tt;
            *sec = (x1, y1);
        }
    }

    fn rescale(&mut self) -> Result<()> {
        let w = [1u32, 2, 3, 4, 6];
        for i in 0..5 {
            self.a[i] = self.a[i].exact_div(&self.p.pow(w[i])).ok_or_else(|| tate_err("non-minimal rescaling failed"))?;
        }
        let p2 = RatFunc::from_poly(self.p.pow(2));
        let p3 = RatFunc::from_poly(self.p.pow(3));
        for sec in self.secs.iter_mut().flatten() {
            *sec = (sec.0.div(&p2).unwrap(), sec.1.div(&p3).unwrap());
        }
        self.rescalings += 1;
        Ok(())
    }

    fn disc(&self) -> Poly<K> {
        invariants(&self.a)[6].clone()
    }

    fn rpoly(&self, c: Vec<ResElem<K>>) -> Poly<ResElem<K>> {
        Poly::from_coeffs(&self.rf, c)
    }

    fn roots(&self, f: &Poly<ResElem<K>>) -> Result<Vec<(ResElem<K>, usize)>> {
        self.rf.roots(f).ok_or_else(|| Error::Unsupported(format!("root finding over the residue field at {}", self.p)))
    }

    /// Singular point of the reduced cubic.
    fn singular_point(&self) -> Result<(ResElem<K>, ResElem<K>)> {
        let a: Vec<ResElem<K>> = self.a.iter().map(|x| self.red(x)).collect();
        let rf = &self.rf;
        let ch = rf.characteristic();
        let k = |n: i64| rf.from_i64(n);
        let (x0, y0) = if ch != 2 {
            let inv = invariants(&self.a);
            let (b2, b4, b6) = (self.red(&inv[0]), self.red(&inv[1]), self.red(&inv[2]));
            let g = self.rpoly(vec![b6.clone(), k(2) * &b4, b2, k(4)]);
            let gd = g.derivative();
            let x0 = if gd.is_zero() {
                let c = (-b6).div(&k(4)).unwrap();
                rf.pth_root(&c).ok_or_else(|| Error::Unsupported("cube root in the residue field".into()))?
            } else {
                let h = g.gcd(&gd);
                match h.degree() {
                    Some(1) => -h.coeff(0),
                    Some(2) => (-h.coeff(1)).div(&k(2)).unwrap(),
                    _ => return Err(tate_err("reduced curve is not singular")),
                }
            };
            let y0 = (-(a[0].clone() * &x0 + &a[2])).div(&k(2)).unwrap();
            (x0, y0)
        } else if !a[0].is_zero() {
            let x0 = a[2].div(&a[0]).unwrap();
            let y0 = (x0.clone() * &x0 + &a[3]).div(&a[0]).unwrap();
            (x0, y0)
        } else {
            let x0 = rf.pth_root(&a[3]).ok_or_else(|| Error::Unsupported("square root in the residue field".into()))?;
            let rhs = x0.clone() * &x0 * &x0 + a[1].clone() * &x0 * &x0 + a[3].clone() * &x0 + &a[4];
            let y0 = rf.pth_root(&rhs).ok_or_else(|| Error::Unsupported("square root in the residue field".into()))?;
            (x0, y0)
        };
        let f = y0.clone() * &y0 + a[0].clone() * &x0 * &y0 + a[2].clone() * &y0
            - (x0.clone() * &x0 * &x0 + a[1].clone() * &x0 * &x0 + a[3].clone() * &x0 + &a[4]);
        if !f.is_zero() {
            return Err(tate_err("singular point is not on the reduced curve"));
        }
        Ok((x0, y0))
    }

    /// Whether the section passes through (0,0) of the reduction.
    fn at_origin(&self, sec: &SectionCoords<K>) -> bool {
        match sec {
            None => false,
            Some((x, y)) => x.valuation(&self.p) >= 1 && y.valuation(&self.p) >= 1,
        }
    }
}

fn sorted_rational_roots<K: Scalar>(roots: &[(ResElem<K>, usize)]) -> Vec<ResElem<K>> {
    let mut v: Vec<_> = roots.iter().map(|(r, _)| r.clone()).collect();
    v.sort();
    v
}

/// Run Tate's algorithm at a finite place `p` (monic irreducible) of the model with
/// coefficients `a`, reporting for each section the component it meets.
pub fn tate_local<K: Scalar>(
    a: &[Poly<K>; 5],
    p: &Poly<K>,
    sections: &[SectionCoords<K>],
) -> Result<(Kodaira, u32, u32, Option<bool>, FrobeniusAction, Vec<RawHit>)> {
    let p = p.monic();
    let mut st = Local { a: a.clone(), p: p.clone(), rf: ResidueField::new(p.clone()), secs: sections.to_vec(), rescalings: 0 };
    let disc0 = st.v(&st.disc());
    if disc0 == usize::MAX {
        return Err(Error::SingularModel);
    }
    let ident = vec![RawHit::Identity; sections.len()];
    let ch = st.rf.characteristic();
    for _ in 0..=disc0 / 12 + 1 {
        let n = st.v(&st.disc()) as u32;
        if n == 0 {
            return Ok((Kodaira::I(0), disc0 as u32, st.rescalings, None, FrobeniusAction::Trivial, ident));
        }
        let (x0, y0) = st.singular_point()?;
        let (r, t) = (st.lift(&x0), st.lift(&y0));
        let zero = Poly::zero(&st.field());
        st.change(&r, &zero, &t);
        let b2 = invariants(&st.a)[0].clone();
        if st.v(&b2) == 0 {
            // multiplicative
            let tan = st.rpoly(vec![-st.red(&st.a[1]), st.red(&st.a[0]), st.rf.one()]);
            let split = st.rf.roots(&tan).map(|r| !r.is_empty());
            let frob = if split == Some(false) { FrobeniusAction::Mirror } else { FrobeniusAction::Trivial };
            let mut hits = Vec::new();
            for sec in &st.secs {
                if n >= 2 && st.at_origin(sec) {
                    let (x, y) = sec.as_ref().unwrap();
                    let a1 = RatFunc::from_poly(st.a[0].clone());
                    let a3 = RatFunc::from_poly(st.a[2].clone());
                    let two = RatFunc::constant(st.field().from_i64(2));
                    let psi = &(&(&two * y) + &(&a1 * x)) + &a3;
                    let v = psi.valuation(&st.p).max(0) as u32;
                    hits.push(RawHit::Cycle(v.min(n / 2)));
                } else {
                    hits.push(RawHit::Identity);
                }
            }
            return Ok((Kodaira::I(n), disc0 as u32, st.rescalings, split, frob, hits));
        }
        // additive: arrange P | a1, a2
        let s = if ch != 2 {
            let inv2 = st.field().from_i64(2).inv().unwrap();
            (-&st.a[0]).scale(&inv2)
        } else {
            let root = st.rf.pth_root(&st.red(&st.a[1])).ok_or_else(|| Error::Unsupported("square root in residue field".into()))?;
            st.lift(&root)
        };
        st.change(&zero, &s, &zero);
        if st.v(&st.a[4]) < 2 {
            return Ok((Kodaira::II, disc0 as u32, st.rescalings, None, FrobeniusAction::Trivial, ident));
        }
        let inv = invariants(&st.a);
        if st.v(&inv[3]) < 3 {
            let hits = st.secs.iter().map(|sec| if st.at_origin(sec) { RawHit::Component(ComponentLabel::Theta(1)) } else { RawHit::Identity }).collect();
            return Ok((Kodaira::III, disc0 as u32, st.rescalings, None, FrobeniusAction::Trivial, hits));
        }
        if st.v(&inv[2]) < 3 {
            let q = st.rpoly(vec![-st.redk(&st.a[4], 2)?, st.redk(&st.a[2], 1)?, st.rf.one()]);
            let roots = st.roots(&q)?;
            let split = !roots.is_empty();
            let rr = sorted_rational_roots(&roots);
            let mut hits = Vec::new();
            for sec in &st.secs {
                if st.at_origin(sec) {
                    let y0 = st.red_rat(&sec.as_ref().unwrap().1, 1).unwrap();
                    let idx = rr.iter().position(|r| *r == y0).ok_or_else(|| tate_err("section misses the IV components"))?;
                    hits.push(RawHit::Component(ComponentLabel::Theta(1 + idx as u32)));
                } else {
                    hits.push(RawHit::Identity);
                }
            }
            let frob = if split { FrobeniusAction::Trivial } else { FrobeniusAction::Mirror };
            return Ok((Kodaira::IV, disc0 as u32, st.rescalings, Some(split), frob, hits));
        }
        // P | a1, a2; P² | a3, a4; P³ | a6
        let t = if ch != 2 {
            let inv2 = st.field().from_i64(2).inv().unwrap();
            (-&st.a[2]).scale(&inv2)
        } else {
            let c = st.redk(&st.a[4], 2)?;
            let root = st.rf.pth_root(&c).ok_or_else(|| Error::Unsupported("square root in residue field".into()))?;
            &st.lift(&root) * &st.p
        };
        st.change(&zero, &zero, &t);
        let cubic = st.rpoly(vec![st.redk(&st.a[4], 3)?, st.redk(&st.a[3], 2)?, st.redk(&st.a[1], 1)?, st.rf.one()]);
        let cd = cubic.derivative();
        let distinct = !cd.is_zero() && cubic.gcd(&cd).is_one();
        if distinct {
            let roots = st.roots(&cubic)?;
            let rr = sorted_rational_roots(&roots);
            let frob = match rr.len() {
                3 => FrobeniusAction::Trivial,
                1 => FrobeniusAction::Cycle(vec![2, 3]),
                _ => FrobeniusAction::Cycle(vec![1, 2, 3]),
            };
            let mut hits = Vec::new();
            for sec in &st.secs {
                if st.at_origin(sec) {
                    let t0 = st.red_rat(&sec.as_ref().unwrap().0, 1).unwrap();
                    let idx = rr.iter().position(|r| *r == t0).ok_or_else(|| tate_err("section misses the I0* components"))?;
                    hits.push(RawHit::Component(ComponentLabel::C(1 + idx as u8)));
                } else {
                    hits.push(RawHit::Identity);
                }
            }
            return Ok((Kodaira::IStar(0), disc0 as u32, st.rescalings, Some(rr.len() == 3), frob, hits));
        }
        let roots = st.roots(&cubic)?;
        let multiple = roots.iter().find(|(_, m)| *m >= 2).cloned().ok_or_else(|| tate_err("multiple root not rational"))?;
        if multiple.1 == 2 {
            let simple = roots.iter().find(|(_, m)| *m == 1).map(|(r, _)| r.clone()).ok_or_else(|| tate_err("simple root missing"))?;
            let double = multiple.0;
            // None = still tracking along the chain
            let mut hits: Vec<Option<RawHit>> = Vec::new();
            for sec in &st.secs {
                if st.at_origin(sec) {
                    let t0 = st.red_rat(&sec.as_ref().unwrap().0, 1).unwrap();
                    if t0 == simple {
                        hits.push(Some(RawHit::Component(ComponentLabel::C(1))));
                    } else if t0 == double {
                        hits.push(None);
                    } else {
                        return Err(tate_err("section meets a non-reduced component"));
                    }
                } else {
                    hits.push(Some(RawHit::Identity));
                }
            }
            let r = &st.lift(&double) * &st.p;
            st.change(&r, &zero, &zero);
            let mut m = 1u32;
            loop {
                if m as usize > disc0 {
                    return Err(tate_err("I_n* subprocedure did not terminate"));
                }
                let odd = m % 2 == 1;
                let quad = if odd {
                    let k = (m + 3) / 2;
                    st.rpoly(vec![-st.redk(&st.a[4], m + 3)?, st.redk(&st.a[2], k)?, st.rf.one()])
                } else {
                    st.rpoly(vec![st.redk(&st.a[4], m + 3)?, st.redk(&st.a[3], (m + 4) / 2)?, st.redk(&st.a[1], 1)?])
                };
                let qd = quad.derivative();
                let qdistinct = !qd.is_zero() && quad.gcd(&qd).is_one();
                // coordinate of a tracked section in this chart
                let chart = |st: &Local<K>, sec: &SectionCoords<K>| -> Option<ResElem<K>> {
                    let (x, y) = sec.as_ref()?;
                    if odd {
                        st.red_rat(y, ((m + 3) / 2) as i64)
                    } else {
                        st.red_rat(x, ((m + 2) / 2) as i64)
                    }
                };
                if qdistinct {
                    let roots = st.roots(&quad)?;
                    let rr = sorted_rational_roots(&roots);
                    let split = rr.len() == 2;
                    let mut out = Vec::new();
                    for (h, sec) in hits.iter().zip(&st.secs) {
                        out.push(match h {
                            Some(h) => *h,
                            None => {
                                let c = chart(&st, sec).ok_or_else(|| tate_err("section meets a non-reduced component"))?;
                                let idx = rr.iter().position(|r| *r == c).ok_or_else(|| tate_err("section meets a non-reduced component"))?;
                                RawHit::Component(ComponentLabel::C(2 + idx as u8))
                            }
                        });
                    }
                    let frob = if split { FrobeniusAction::Trivial } else { FrobeniusAction::Mirror };
                    return Ok((Kodaira::IStar(m), disc0 as u32, st.rescalings, Some(split), frob, out));
                }
                let roots = st.roots(&quad)?;
                let rho = roots.first().map(|(r, _)| r.clone()).ok_or_else(|| tate_err("double root not rational"))?;
                for (h, sec) in hits.iter().zip(&st.secs) {
                    if h.is_none() && chart(&st, sec) != Some(rho.clone()) {
                        return Err(tate_err("section meets a non-reduced component"));
                    }
                }
                if odd {
                    let t = &st.lift(&rho) * &st.p.pow((m + 3) / 2);
                    st.change(&zero, &zero, &t);
                } else {
                    let r = &st.lift(&rho) * &st.p.pow((m + 2) / 2);
                    st.change(&r, &zero, &zero);
                }
                m += 1;
            }
        }
        // triple root
        let r = &st.lift(&multiple.0) * &st.p;
        st.change(&r, &zero, &zero);
        let q = st.rpoly(vec![-st.redk(&st.a[4], 4)?, st.redk(&st.a[2], 2)?, st.rf.one()]);
        let qd = q.derivative();
        if !qd.is_zero() && q.gcd(&qd).is_one() {
            let roots = st.roots(&q)?;
            let rr = sorted_rational_roots(&roots);
            let split = rr.len() == 2;
            let mut hits = Vec::new();
            for sec in &st.secs {
                if st.at_origin(sec) {
                    let y0 = st.red_rat(&sec.as_ref().unwrap().1, 2).ok_or_else(|| tate_err("section meets a non-reduced component"))?;
                    let idx = rr.iter().position(|r| *r == y0).ok_or_else(|| tate_err("section meets a non-reduced component"))?;
                    hits.push(RawHit::Component(ComponentLabel::Theta(1 + idx as u32)));
                } else {
                    hits.push(RawHit::Identity);
                }
            }
            let frob = if split { FrobeniusAction::Trivial } else { FrobeniusAction::Mirror };
            return Ok((Kodaira::IVStar, disc0 as u32, st.rescalings, Some(split), frob, hits));
        }
        let roots = st.roots(&q)?;
        let rho = roots.first().map(|(r, _)| r.clone()).ok_or_else(|| tate_err("double root not rational"))?;
        let t = &st.lift(&rho) * &st.p.pow(2);
        st.change(&zero, &zero, &t);
        if st.v(&st.a[3]) < 4 {
            let hits = st.secs.iter().map(|sec| if st.at_origin(sec) { RawHit::Component(ComponentLabel::Theta(1)) } else { RawHit::Identity }).collect();
            return Ok((Kodaira::IIIStar, disc0 as u32, st.rescalings, None, FrobeniusAction::Trivial, hits));
        }
        if st.v(&st.a[4]) < 6 {
            return Ok((Kodaira::IIStar, disc0 as u32, st.rescalings, None, FrobeniusAction::Trivial, ident));
        }
        st.rescale()?;
    }
    Err(tate_err("too many non-minimal rescalings"))
}

/// Sections in the chart at infinity.
pub fn sections_at_infinity<K: Scalar>(chi: u32, sections: &[SectionCoords<K>]) -> Vec<SectionCoords<K>> {
    sections
        .iter()
        .map(|s| {
            s.as_ref().map(|(x, y)| {
                (x.invert_variable().mul_var_pow(2 * chi as i64), y.invert_variable().mul_var_pow(3 * chi as i64))
            })
        })
        .collect()
}

/// Tate's algorithm at a place of a global model.
pub fn tate<K: Scalar>(model: &Weierstrass<K>, place: &Place<K>, sections: &[SectionCoords<K>]) -> Result<(Fiber<K>, Vec<RawHit>)> {
    let (kod, dv, resc, split, frob, hits) = match place {
        Place::Finite(p) => tate_local(&model.a, p, sections)?,
        Place::Infinity => {
            let chart = model.infinity_chart();
            let u = Poly::x(model.field());
            tate_local(&chart.a, &u, &sections_at_infinity(model.chi, sections))?
        }
    };
    let fiber = Fiber { place: place.clone(), kodaira: kod, disc_valuation: dv, rescalings: resc, split, frobenius: frob, residue_degree: place.degree() };
    Ok((fiber, hits))
}
