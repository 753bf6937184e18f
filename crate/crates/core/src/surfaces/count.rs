//! Point counts of the smooth (or partially resolved) surface over F_q.
//!
//! `#X(F_q) = Σ_{s ∈ P¹(F_q)} #W_s(F_q) + q · Σ_v (Frobenius-fixed non-identity components)`,
//! where W_s is the Weierstrass fiber and v runs over rational places with reducible fibers.

use rayon::prelude::*;
use serde::Serialize;

use super::config::Configuration;
use super::model::Weierstrass;
use super::tate::{tate, Place};
use crate::algebra::finite::{FieldElem, Gf};
use crate::algebra::poly::Poly;
use crate::algebra::rational::Rat;
use crate::algebra::scalar::{Scalar, ScalarField};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCorrection {
    pub place: String,
    pub kodaira: String,
    pub fixed_components: u32,
    pub points: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceCount {
    pub q: u64,
    /// Points on the Weierstrass model, including the zero section.
    pub weierstrass: u64,
    /// Points of the zero section.
    pub zero_section: u64,
    pub corrections: Vec<FiberCorrection>,
    pub total: u64,
}

impl SurfaceCount {
    /// Trace of Frobenius on the transcendental part and the non-fixed components:
    /// `#X - 1 - q² - q·(2 + Σ fixed)`.
    pub fn trace(&self) -> i64 {
        let fixed: u64 = self.corrections.iter().map(|c| c.fixed_components as u64).sum();
        self.total as i64 - 1 - (self.q * self.q) as i64 - (self.q * (2 + fixed)) as i64
    }
}

struct Kernel {
    f: Gf,
    trace2: Option<Vec<u8>>,
}

impl Kernel {
    fn new(f: &Gf) -> Self {
        let trace2 = (f.p() == 2).then(|| (0..f.q()).map(|v| f.abs_trace_raw(v) as u8).collect());
        Kernel { f: f.clone(), trace2 }
    }

    fn eval(&self, c: &[u32], x: u32) -> u32 {
        c.iter().rev().fold(0, |acc, &ci| self.f.add_raw(self.f.mul_raw(acc, x), ci))
    }

    /// Affine points of y² + a1 xy + a3 y = x³ + a2 x² + a4 x + a6.
    fn affine(&self, a: [u32; 5]) -> u64 {
        let f = &self.f;
        let [a1, a2, a3, a4, a6] = a;
        let mut n = 0u64;
        for x in 0..f.q() {
            let b = f.add_raw(f.mul_raw(a1, x), a3);
            let c = self.eval(&[a6, a4, a2, 1], x);
            match &self.trace2 {
                Some(tr) => {
                    if b == 0 {
                        n += 1;
                    } else {
                        let binv = f.inv_raw(b).unwrap();
                        let z = f.mul_raw(c, f.mul_raw(binv, binv));
                        if tr[z as usize] == 0 {
                            n += 2;
                        }
                    }
                }
                None => {
                    let d = f.add_raw(f.mul_raw(b, b), f.mul_raw(4 % f.p(), c));
                    n += (1 + f.chi_raw(d)) as u64;
                }
            }
        }
        n
    }
}

fn raw_coeffs(model: &Weierstrass<FieldElem>) -> Vec<Vec<u32>> {
    model.a.iter().map(|p| p.coeffs().iter().map(|c| c.index()).collect()).collect()
}

/// Points on the Weierstrass model (one point at infinity per fiber).
pub fn count_weierstrass(model: &Weierstrass<FieldElem>) -> u64 {
    let f = model.field().clone();
    let k = Kernel::new(&f);
    let coeffs = raw_coeffs(model);
    let finite: u64 = (0..f.q())
        .into_par_iter()
        .map(|s| {
            let a = std::array::from_fn(|i| k.eval(&coeffs[i], s));
            k.affine(a) + 1
        })
        .sum();
    let chart = model.infinity_chart();
    let a_inf = std::array::from_fn(|i| chart.a[i].coeff(0).index());
    finite + k.affine(a_inf) + 1
}

/// Rational places of P¹(F_q) where the fiber is singular.
pub fn rational_bad_places(model: &Weierstrass<FieldElem>) -> Vec<Place<FieldElem>> {
    let f = model.field().clone();
    let d = model.discriminant();
    let mut out: Vec<Place<FieldElem>> = f
        .elements()
        .unwrap()
        .into_iter()
        .filter(|s| d.eval(s).is_zero())
        .map(|s| Place::Finite(Poly::linear_root(&s)))
        .collect();
    if model.disc_valuation_inf() > 0 {
        out.push(Place::Infinity);
    }
    out
}

fn count_with(model: &Weierstrass<FieldElem>, resolve: impl Fn(&Place<FieldElem>) -> bool) -> Result<SurfaceCount> {
    let q = model.field().q() as u64;
    let weierstrass = count_weierstrass(model);
    let mut corrections = Vec::new();
    for place in rational_bad_places(model) {
        if !resolve(&place) {
            continue;
        }
        let (fiber, _) = tate(model, &place, &[])?;
        if !fiber.kodaira.is_reducible() {
            continue;
        }
        let fixed = fiber.fixed_non_identity();
        corrections.push(FiberCorrection {
            place: place.to_string(),
            kodaira: fiber.kodaira.to_string(),
            fixed_components: fixed,
            points: q * fixed as u64,
        });
    }
    let total = weierstrass + corrections.iter().map(|c| c.points).sum::<u64>();
    Ok(SurfaceCount { q, weierstrass, zero_section: q + 1, corrections, total })
}

/// `#X(F_q)` for the smooth elliptic surface of a model over F_q.
pub fn count_surface(model: &Weierstrass<FieldElem>) -> Result<SurfaceCount> {
    count_with(model, |_| true)
}

/// Count on the partial resolution that only resolves the reductions of
/// reducible fibers of the characteristic-zero model.
pub fn count_singular_model(model: &Weierstrass<Rat>, field: &Gf) -> Result<SurfaceCount> {
    let conf0 = Configuration::compute(model)?;
    let red = model.reduce_mod(field)?;
    let mut marked: Vec<Place<FieldElem>> = Vec::new();
    for fb in conf0.reducible() {
        match &fb.place {
            Place::Infinity => marked.push(Place::Infinity),
            Place::Finite(p) => {
                let pm = super::model::reduce_poly(p, field)?;
                for (r, _) in field.roots(&pm).unwrap_or_default() {
                    marked.push(Place::Finite(Poly::linear_root(&r)));
                }
            }
        }
    }
    count_with(&red, |pl| marked.contains(pl))
}

/// Exhaustive count over all (s, x, y), for testing the kernel.
pub fn count_brute_force(model: &Weierstrass<FieldElem>) -> Result<SurfaceCount> {
    let f = model.field().clone();
    let elems = f.elements().unwrap();
    let count_fiber = |a: &[FieldElem; 5]| -> u64 {
        let mut n = 1;
        for x in &elems {
            for y in &elems {
                let lhs = y.clone() * y + a[0].clone() * x * y + a[2].clone() * y;
                let rhs = x.clone() * x * x + a[1].clone() * x * x + a[3].clone() * x + &a[4];
                if lhs == rhs {
                    n += 1;
                }
            }
        }
        n
    };
    let mut w: u64 = elems.iter().map(|s| count_fiber(&model.fiber_coeffs(s))).sum();
    let chart = model.infinity_chart();
    w += count_fiber(&chart.fiber_coeffs(&f.zero()));
    let mut c = count_surface(model)?;
    c.total = c.total - c.weierstrass + w;
    c.weierstrass = w;
    Ok(c)
}

/// Good-reduction data of a model over Q, cached for repeated trace computations.
pub struct TraceContext {
    model: Weierstrass<Rat>,
    trivial_rank0: u32,
}

impl TraceContext {
    pub fn new(model: &Weierstrass<Rat>) -> Result<Self> {
        let conf = Configuration::compute(model)?;
        Ok(TraceContext { model: model.clone(), trivial_rank0: conf.trivial_rank() })
    }

    pub fn model(&self) -> &Weierstrass<Rat> {
        &self.model
    }

    /// Reduction at p, or an error describing why p is bad.
    pub fn reduce(&self, field: &Gf) -> Result<Weierstrass<FieldElem>> {
        let p = field.p() as u64;
        let red = self.model.reduce_mod(&Gf::new(p, 1)?).map_err(|e| match e {
            Error::BadPrime { p, reason } => Error::BadReduction { p, detail: reason },
            e => e,
        })?;
        let conf = Configuration::compute(&red)?;
        if conf.trivial_rank() != self.trivial_rank0 {
            let new: Vec<String> = conf.reducible().map(|f| format!("{} at {}", f.kodaira, f.place)).collect();
            return Err(Error::BadReduction {
                p,
                detail: format!(
                    "new singularities: trivial lattice rank {} instead of {} (fibers {})",
                    conf.trivial_rank(),
                    self.trivial_rank0,
                    new.join(", ")
                ),
            });
        }
        if field.r() == 1 {
            Ok(red)
        } else {
            self.model.reduce_mod(field)
        }
    }

    /// Count over F_q for a good prime.
    pub fn count(&self, field: &Gf) -> Result<SurfaceCount> {
        count_surface(&self.reduce(field)?)
    }

    /// Trace of Frobenius on the transcendental part at a good prime p.
    pub fn frobenius_trace(&self, p: u64) -> Result<i64> {
        Ok(self.count(&Gf::new(p, 1)?)?.trace())
    }
}

/// Convenience wrapper: trace at a good prime.
pub fn frobenius_trace(model: &Weierstrass<Rat>, p: u64) -> Result<i64> {
    TraceContext::new(model)?.frobenius_trace(p)
}
