//! The rational numbers as a [`Scalar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::scalar::{Scalar, ScalarField};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(pub BigRational);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Rat {
    pub fn new(n: i64, d: i64) -> Self {
        Rat(BigRational::new(n.into(), d.into()))
    }
    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }
    pub fn from_big(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat(self.0.$m(o.0))
            }
        }
        impl<'a> $tr<&'a Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: &'a Rat) -> Rat {
                Rat(self.0.$m(&o.0))
            }
        }
    };
}
rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Scalar for Rat {
    type Field = Rationals;
    fn parent(&self) -> Rationals {
        Rationals
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

impl ScalarField for Rationals {
    type Elem = Rat;
    fn zero(&self) -> Rat {
        Rat(BigRational::zero())
    }
    fn one(&self) -> Rat {
        Rat(BigRational::one())
    }
    fn from_int(&self, n: &BigInt) -> Rat {
        Rat(BigRational::from_integer(n.clone()))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn elements(&self) -> Option<Vec<Rat>> {
        None
    }
    fn element(&self, _idx: u64) -> Option<Rat> {
        None
    }
    fn degree(&self) -> Option<u32> {
        None
    }

    /// Rational root test on the primitive integer model.
    fn roots(&self, f: &Poly<Rat>) -> Option<Vec<(Rat, usize)>> {
        if f.is_zero() {
            return None;
        }
        let mut g = f.clone();
        let mut out = Vec::new();
        let mut m0 = 0;
        while g.degree().unwrap_or(0) > 0 && g.coeff(0).is_zero() {
            g = g.shift_down(1);
            m0 += 1;
        }
        if m0 > 0 {
            out.push((Rat::int(0), m0));
        }
        if g.degree().unwrap_or(0) == 0 {
            out.sort();
            return Some(out);
        }
        let ints = integer_coeffs(&g);
        let a0 = ints[0].clone();
        let an = ints.last().unwrap().clone();
        let dn = small_divisors(&a0)?;
        let dd = small_divisors(&an)?;
        let mut cands: Vec<Rat> = Vec::new();
        for p in &dn {
            for q in &dd {
                for sgn in [1i64, -1] {
                    let r = Rat(BigRational::new(p * sgn, q.clone()));
                    if !cands.contains(&r) {
                        cands.push(r);
                    }
                }
            }
        }
        for c in cands {
            let m = g.root_multiplicity(&c);
            if m > 0 {
                out.push((c, m));
            }
        }
        out.sort();
        Some(out)
    }

    fn factor_poly(&self, f: &Poly<Rat>) -> crate::error::Result<Vec<(Poly<Rat>, usize)>> {
        if f.is_zero() {
            return Err(crate::error::Error::Invalid("cannot factor zero".into()));
        }
        Ok(super::factor::factor_rational(f)?.factors)
    }

    fn pth_root(&self, a: &Rat) -> Option<Rat> {
        Some(a.clone())
    }
    fn frobenius(&self, a: &Rat) -> Rat {
        a.clone()
    }
}

/// Clear denominators and content; the result has a positive leading coefficient.
pub fn integer_coeffs(f: &Poly<Rat>) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in f.coeffs() {
        l = l.lcm(c.denom());
    }
    let mut v: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c.0.clone() * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if !g.is_zero() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    if v.last().map(|c| c.sign() == Sign::Minus).unwrap_or(false) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}
