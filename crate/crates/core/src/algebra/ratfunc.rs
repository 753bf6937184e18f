//! Rational functions K(s) in lowest terms with monic denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Poly;
use super::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<K: Scalar> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: Scalar> RatFunc<K> {
    pub fn new(num: Poly<K>, den: Poly<K>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.deg() > 0 {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        } else {
            (num, den)
        };
        let l = d.lead().inv().unwrap();
        n = n.scale(&l);
        d = d.scale(&l);
        if n.is_zero() {
            d = Poly::one(n.field());
        }
        Some(RatFunc { num: n, den: d })
    }
    pub fn from_poly(p: Poly<K>) -> Self {
        let f = p.field().clone();
        RatFunc { num: p, den: Poly::one(&f) }
    }
    pub fn zero(field: &K::Field) -> Self {
        Self::from_poly(Poly::zero(field))
    }
    pub fn one(field: &K::Field) -> Self {
        Self::from_poly(Poly::one(field))
    }
    pub fn constant(c: K) -> Self {
        Self::from_poly(Poly::constant(c))
    }
    pub fn num(&self) -> &Poly<K> {
        &self.num
    }
    pub fn den(&self) -> &Poly<K> {
        &self.den
    }
    pub fn field(&self) -> &K::Field {
        self.num.field()
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }
    pub fn as_poly(&self) -> Option<&Poly<K>> {
        self.is_poly().then_some(&self.num)
    }
    pub fn inv(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }
    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self * &i)
    }
    pub fn pow(&self, e: u32) -> Self {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }
    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).unwrap()
    }

    /// Valuation at the place of the monic irreducible `p`; `i64::MAX` for zero.
    pub fn valuation(&self, p: &Poly<K>) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        self.num.valuation(p) as i64 - self.den.valuation(p) as i64
    }
    /// Valuation at infinity: `deg den - deg num`.
    pub fn valuation_inf(&self) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        self.den.deg() - self.num.deg()
    }

    /// `f(1/u)` as a function of u.
    pub fn invert_variable(&self) -> Self {
        let n = self.num.deg().max(self.den.deg()).max(0) as usize;
        Self::new(self.num.reverse(n), self.den.reverse(n)).unwrap()
    }

    /// Multiply by `u^k` (k may be negative).
    pub fn mul_var_pow(&self, k: i64) -> Self {
        if k >= 0 {
            Self::new(self.num.shift_up(k as usize), self.den.clone()).unwrap()
        } else {
            Self::new(self.num.clone(), self.den.shift_up((-k) as usize)).unwrap()
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&K) -> K) -> Self {
        let field = self.field().clone();
        Self::new(self.num.map_coeffs(&field, &f), self.den.map_coeffs(&field, &f)).unwrap()
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den).unwrap()
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.display_in(var);
        }
        let wrap = |p: &Poly<K>| {
            let s = p.display_in(var);
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({})", s)
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl<K: Scalar> fmt::Display for RatFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("s"))
    }
}
impl<K: Scalar> fmt::Debug for RatFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self)
    }
}

impl<'a, K: Scalar> Add<&'a RatFunc<K>> for &'a RatFunc<K> {
    type Output = RatFunc<K>;
    fn add(self, o: &RatFunc<K>) -> RatFunc<K> {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).unwrap()
    }
}
impl<'a, K: Scalar> Sub<&'a RatFunc<K>> for &'a RatFunc<K> {
    type Output = RatFunc<K>;
    fn sub(self, o: &RatFunc<K>) -> RatFunc<K> {
        self + &(-o)
    }
}
impl<'a, K: Scalar> Mul<&'a RatFunc<K>> for &'a RatFunc<K> {
    type Output = RatFunc<K>;
    fn mul(self, o: &RatFunc<K>) -> RatFunc<K> {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }
}
impl<K: Scalar> Neg for &RatFunc<K> {
    type Output = RatFunc<K>;
    fn neg(self) -> RatFunc<K> {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! rf_owned {
    ($tr:ident, $m:ident) => {
        impl<K: Scalar> $tr for RatFunc<K> {
            type Output = RatFunc<K>;
            fn $m(self, o: RatFunc<K>) -> RatFunc<K> {
                (&self).$m(&o)
            }
        }
    };
}
rf_owned!(Add, add);
rf_owned!(Sub, sub);
rf_owned!(Mul, mul);

impl<K: Scalar> From<Poly<K>> for RatFunc<K> {
    fn from(p: Poly<K>) -> Self {
        Self::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{Rat, Rationals};

    #[test]
    fn lowest_terms_and_valuations() {
        let q = Rationals;
        let n = Poly::<Rat>::from_ints(&q, &[0, 0, 2]);
        let d = Poly::from_ints(&q, &[0, 3]);
        let f = RatFunc::new(n, d).unwrap();
        assert_eq!(f.den(), &Poly::one(&q));
        assert_eq!(f.valuation(&Poly::x(&q)), 1);
        assert_eq!(f.valuation_inf(), -1);
        assert_eq!(f.invert_variable().valuation(&Poly::x(&q)), -1);
    }
}
