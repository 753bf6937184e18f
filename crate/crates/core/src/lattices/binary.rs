//! Definite binary quadratic forms given by Gram matrices [[a, b], [b, c]].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BinaryForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.b, self.c)
    }
}

impl BinaryForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        BinaryForm { a: a.into(), b: b.into(), c: c.into() }
    }
    /// Determinant `ac - b²`.
    pub fn det(&self) -> BigInt {
        &self.a * &self.c - &self.b * &self.b
    }
    pub fn neg(&self) -> Self {
        BinaryForm { a: -&self.a, b: -&self.b, c: -&self.c }
    }
    pub fn scale(&self, m: &BigInt) -> Self {
        BinaryForm { a: &self.a * m, b: &self.b * m, c: &self.c * m }
    }
    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && self.det().is_positive()
    }
    pub fn is_negative_definite(&self) -> bool {
        self.a.is_negative() && self.det().is_positive()
    }

    /// GL₂(Z)-reduced representative: for positive forms `0 ≤ 2b ≤ a ≤ c`;
    /// negative forms are reduced through their negative.
    pub fn reduce(&self) -> Result<Self> {
        if self.is_negative_definite() {
            return Ok(self.neg().reduce()?.neg());
        }
        if !self.is_positive_definite() {
            return Err(Error::Invalid(format!("form {} is not definite", self)));
        }
        let (mut a, mut b, mut c) = (self.a.clone(), self.b.clone(), self.c.clone());
        loop {
            if c < a {
                std::mem::swap(&mut a, &mut c);
            }
            let two_b: BigInt = &b * BigInt::from(2);
            if two_b.abs() <= a {
                break;
            }
            // x ↦ x - k y with k nearest to b/a
            let k = (&two_b + &a).div_floor(&(&a * BigInt::from(2)));
            let nc = &c - &b * &k * BigInt::from(2) + &k * &k * &a;
            b -= &k * &a;
            c = nc;
        }
        Ok(BinaryForm { a, b: b.abs(), c })
    }

    pub fn is_equivalent(&self, o: &Self) -> bool {
        match (self.reduce(), o.reduce()) {
            (Ok(x), Ok(y)) => x == y,
            _ => false,
        }
    }

    /// `m > 0` with `other ≅ self(-m)`, when the two forms have opposite signs.
    pub fn similar(&self, other: &Self) -> Option<BigRational> {
        let opposite = (self.is_positive_definite() && other.is_negative_definite())
            || (self.is_negative_definite() && other.is_positive_definite());
        if !opposite {
            return None;
        }
        // det(L(m)) = m² det(L) for rank 2
        let m2 = BigRational::new(other.det(), self.det());
        let (a, b) = (m2.numer().sqrt(), m2.denom().sqrt());
        if &a * &a != *m2.numer() || &b * &b != *m2.denom() || a.is_zero() {
            return None;
        }
        self.scale(&(-&a)).is_equivalent(&other.scale(&b)).then(|| BigRational::new(a, b))
    }

    /// Like [`similar`](Self::similar) but also accepts forms of the same sign, returning ±m.
    pub fn similar_up_to_sign(&self, other: &Self) -> Option<BigRational> {
        if let Some(m) = self.similar(other) {
            return Some(m);
        }
        self.neg().similar(other).map(|m| -m)
    }
}

/// Validator for the Artin discriminant shape `-p^{2σ}`, 1 ≤ σ ≤ 10; returns σ.
pub fn artin_sigma(disc: &BigInt, p: u64) -> Option<u32> {
    if !disc.is_negative() {
        return None;
    }
    let mut n = -disc.clone();
    let p = BigInt::from(p);
    let mut e = 0u32;
    while (&n % &p).is_zero() {
        n /= &p;
        e += 1;
    }
    (n == BigInt::from(1) && e.is_multiple_of(2) && (1..=10).contains(&(e / 2))).then_some(e / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction() {
        let f = BinaryForm::new(12, 6, 4).reduce().unwrap();
        assert_eq!(f, BinaryForm::new(4, 2, 4));
        let g = BinaryForm::new(-12, -6, -4).reduce().unwrap();
        assert_eq!(g, BinaryForm::new(-4, -2, -4));
        assert!(BinaryForm::new(2, 1, 2).is_equivalent(&BinaryForm::new(2, -1, 2)));
    }

    #[test]
    fn similarity() {
        let t = BinaryForm::new(2, 1, 2);
        assert_eq!(t.similar(&BinaryForm::new(-12, -6, -4)).unwrap(), BigRational::from_integer(BigInt::from(2)));
        assert_eq!(t.similar(&BinaryForm::new(-4, -2, -4)).unwrap(), BigRational::from_integer(BigInt::from(2)));
        assert_eq!(t.similar(&BinaryForm::new(-2, -1, -2)).unwrap(), BigRational::from_integer(BigInt::from(1)));
        assert_eq!(t.similar(&BinaryForm::new(4, 2, 4)), None);
        assert_eq!(t.similar_up_to_sign(&BinaryForm::new(4, 2, 4)).unwrap(), BigRational::from_integer(BigInt::from(-2)));
        let t2 = BinaryForm::new(-12, -6, -4);
        assert_eq!(t2.similar(&t).unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(t.similar(&BinaryForm::new(-2, 0, -2)), None);
    }

    #[test]
    fn artin_shape() {
        assert_eq!(artin_sigma(&BigInt::from(-4), 2), Some(1));
        assert_eq!(artin_sigma(&BigInt::from(-9), 3), Some(1));
        assert_eq!(artin_sigma(&BigInt::from(-12), 2), None);
        assert_eq!(artin_sigma(&BigInt::from(4), 2), None);
    }
}
