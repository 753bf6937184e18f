//! Weierstrass models y² + a1 xy + a3 y = x³ + a2 x² + a4 x + a6 over K[s].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::finite::{FieldElem, Gf};
use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::rational::{Rat, Rationals};
use crate::algebra::scalar::{Scalar, ScalarField};
use crate::error::{Error, Result};

/// Weights of a1, a2, a3, a4, a6.
pub const WEIGHTS: [usize; 5] = [1, 2, 3, 4, 6];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weierstrass<K: Scalar> {
    /// a1, a2, a3, a4, a6.
    pub a: [Poly<K>; 5],
    pub chi: u32,
}

/// The b- and c-invariants and the discriminant of coefficients in any ring of polynomials.
pub fn invariants<K: Scalar>(a: &[Poly<K>; 5]) -> [Poly<K>; 7] {
    let f = a[0].field().clone();
    let c = |n: i64| Poly::constant(f.from_i64(n));
    let [a1, a2, a3, a4, a6] = a;
    let b2 = &(a1 * a1) + &(&c(4) * a2);
    let b4 = &(&c(2) * a4) + &(a1 * a3);
    let b6 = &(a3 * a3) + &(&c(4) * a6);
    let b8 = &(&(&(&(&(a1 * a1) * a6) + &(&(&c(4) * a2) * a6)) - &(&(a1 * a3) * a4)) + &(&(a2 * a3) * a3)) - &(a4 * a4);
    let c4 = &(&b2 * &b2) - &(&c(24) * &b4);
    let c6 = &(&(&c(-1) * &(&b2 * &(&b2 * &b2))) + &(&(&c(36) * &b2) * &b4)) - &(&c(216) * &b6);
    let disc = &(&(&(&c(-1) * &(&(&b2 * &b2) * &b8)) - &(&c(8) * &(&b4 * &(&b4 * &b4)))) - &(&c(27) * &(&b6 * &b6)))
        + &(&(&(&c(9) * &b2) * &b4) * &b6);
    [b2, b4, b6, b8, c4, c6, disc]
}

impl<K: Scalar> Weierstrass<K> {
    pub fn new(a: [Poly<K>; 5], chi: u32) -> Result<Self> {
        for (i, ai) in a.iter().enumerate() {
            let bound = WEIGHTS[i] * chi as usize;
            if let Some(d) = ai.degree() {
                if d > bound {
                    return Err(Error::DegreeTooLarge { index: WEIGHTS[i] as u8, degree: d, bound, chi });
                }
            }
        }
        let w = Weierstrass { a, chi };
        if w.discriminant().is_zero() {
            return Err(Error::SingularModel);
        }
        Ok(w)
    }

    /// Smallest χ with deg a_i ≤ iχ.
    pub fn minimal_chi(a: &[Poly<K>; 5]) -> u32 {
        let mut chi = 1;
        for (i, ai) in a.iter().enumerate() {
            if let Some(d) = ai.degree() {
                chi = chi.max(d.div_ceil(WEIGHTS[i]) as u32);
            }
        }
        chi
    }

    pub fn field(&self) -> &K::Field {
        self.a[0].field()
    }
    pub fn b2(&self) -> Poly<K> {
        invariants(&self.a)[0].clone()
    }
    pub fn c4(&self) -> Poly<K> {
        invariants(&self.a)[4].clone()
    }
    pub fn c6(&self) -> Poly<K> {
        invariants(&self.a)[5].clone()
    }
    pub fn discriminant(&self) -> Poly<K> {
        invariants(&self.a)[6].clone()
    }
    /// Vanishing order of Δ at infinity in the weight-12χ convention.
    pub fn disc_valuation_inf(&self) -> usize {
        let d = self.discriminant();
        12 * self.chi as usize - d.degree().unwrap()
    }

    /// The model in the chart u = 1/s: a_i'(u) = u^{iχ} a_i(1/u).
    pub fn infinity_chart(&self) -> Self {
        let a = std::array::from_fn(|i| {
            let n = WEIGHTS[i] * self.chi as usize;
            self.a[i].reverse(n)
        });
        Weierstrass { a, chi: self.chi }
    }

    /// Coefficients specialized at s = t.
    pub fn fiber_coeffs(&self, t: &K) -> [K; 5] {
        std::array::from_fn(|i| self.a[i].eval(t))
    }

    /// The equation evaluated at a point with coordinates in K(s): zero iff on the curve.
    pub fn equation(&self, x: &RatFunc<K>, y: &RatFunc<K>) -> RatFunc<K> {
        let a: Vec<RatFunc<K>> = self.a.iter().map(|p| RatFunc::from_poly(p.clone())).collect();
        let lhs = &(&(y * y) + &(&(&a[0] * x) * y)) + &(&a[2] * y);
        let x2 = x * x;
        let rhs = &(&(&(&x2 * x) + &(&a[1] * &x2)) + &(&a[3] * x)) + &a[4];
        &lhs - &rhs
    }

    pub fn contains(&self, x: &RatFunc<K>, y: &RatFunc<K>) -> bool {
        self.equation(x, y).is_zero()
    }

    /// The quadratic twist-free map of coefficients into another field.
    pub fn map_field<L: Scalar>(&self, field: &L::Field, f: impl Fn(&K) -> L) -> Weierstrass<L> {
        Weierstrass { a: std::array::from_fn(|i| self.a[i].map_coeffs(field, &f)), chi: self.chi }
    }

    pub fn display_equation(&self) -> String {
        let names = ["xy", "x^2", "y", "x", ""];
        let mut lhs = "y^2".to_string();
        let mut rhs = "x^3".to_string();
        for (i, ai) in self.a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let coeff = ai.to_string();
            let wrapped = if ai.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 { format!("({})", coeff) } else { coeff };
            let term = if names[i].is_empty() {
                wrapped
            } else if ai.is_one() {
                names[i].to_string()
            } else {
                format!("{}{}", wrapped, names[i])
            };
            if i == 0 || i == 2 {
                lhs = format!("{} + {}", lhs, term);
            } else {
                rhs = format!("{} + {}", rhs, term);
            }
        }
        format!("{} = {}", lhs, rhs)
    }
}

impl<K: Scalar> fmt::Display for Weierstrass<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_equation())
    }
}

/// Reduce a rational number modulo p into F_q.
pub fn reduce_rational(x: &Rat, field: &Gf) -> Result<FieldElem> {
    let p = BigInt::from(field.p());
    if (x.denom() % &p).is_zero() {
        return Err(Error::BadPrime { p: field.p() as u64, reason: format!("{} is not p-integral", x) });
    }
    let n = field.from_int(&x.numer().mod_floor(&p));
    let d = field.from_int(&x.denom().mod_floor(&p));
    Ok(n * d.inv().unwrap())
}

pub fn reduce_poly(f: &Poly<Rat>, field: &Gf) -> Result<Poly<FieldElem>> {
    let c = f.coeffs().iter().map(|x| reduce_rational(x, field)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_coeffs(field, c))
}

impl Weierstrass<Rat> {
    /// Reduction modulo p of a model with p-integral coefficients.
    pub fn reduce_mod(&self, field: &Gf) -> Result<Weierstrass<FieldElem>> {
        let a = [0, 1, 2, 3, 4].map(|i| reduce_poly(&self.a[i], field));
        let [a1, a2, a3, a4, a6] = a;
        let w = Weierstrass { a: [a1?, a2?, a3?, a4?, a6?], chi: self.chi };
        if w.discriminant().is_zero() {
            return Err(Error::BadReduction { p: field.p() as u64, detail: "discriminant vanishes identically".into() });
        }
        Ok(w)
    }

    pub fn from_int_coeffs(c: [&[i64]; 5], chi: u32) -> Result<Self> {
        Weierstrass::new(c.map(|v| Poly::from_ints(&Rationals, v)), chi)
    }

    /// Primes dividing a denominator of some coefficient.
    pub fn has_integral_coeffs(&self) -> bool {
        self.a.iter().all(|p| p.coeffs().iter().all(|c| c.denom().is_one()))
    }

    /// Pull-back along s ↦ d s³ for cube-free d ≥ 1, made minimal at s = 0 and
    /// normalized by s ↦ d s and x ↦ d² x, y ↦ d³ y.
    pub fn base_change_cubic(&self, d: i64) -> Result<Self> {
        if d < 1 || crate::algebra::primes::factor_u64(d as u64).iter().any(|&(_, e)| e >= 3) {
            return Err(Error::Invalid(format!("{} is not a positive cube-free integer", d)));
        }
        let dq = Rat::from_big(BigInt::from(d));
        let cube = Poly::monomial(dq.clone(), 3);
        let mut a: [Poly<Rat>; 5] = std::array::from_fn(|i| self.a[i].compose(&cube));
        // u = s^k with s^{ik} | a_i
        let k = (0..5)
            .filter(|&i| !a[i].is_zero())
            .map(|i| a[i].valuation(&Poly::x(&Rationals)) / WEIGHTS[i])
            .min()
            .unwrap_or(0);
        for i in 0..5 {
            a[i] = a[i].shift_down(k * WEIGHTS[i]);
        }
        let lin = Poly::monomial(dq.clone(), 1);
        for i in 0..5 {
            let scale = dq.pow(WEIGHTS[i] as u128).inv().unwrap();
            a[i] = a[i].compose(&lin).scale(&scale);
        }
        let chi = Weierstrass::minimal_chi(&a);
        Weierstrass::new(a, chi)
    }

    /// Content of the discriminant (gcd of its integer coefficients) as a check of integrality.
    pub fn discriminant_content(&self) -> BigInt {
        let d = self.discriminant();
        let mut g = BigInt::zero();
        for c in d.coeffs() {
            g = g.gcd(c.numer());
        }
        g
    }
}
