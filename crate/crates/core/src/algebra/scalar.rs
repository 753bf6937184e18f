//! Field-element traits shared by the rational, finite and residue fields.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::poly::Poly;

/// An element of a field that carries a handle to its parent field.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Ord
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    type Field: ScalarField<Elem = Self>;

    fn parent(&self) -> Self::Field;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.parent().one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    fn pow(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = self.parent().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            base = base.clone() * &base;
            e >>= 1;
        }
        acc
    }
}

/// The parent field of a [`Scalar`].
pub trait ScalarField: Clone + Debug + PartialEq + Eq + Send + Sync {
    type Elem: Scalar<Field = Self>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// `None` for infinite fields.
    fn order(&self) -> Option<u64>;
    /// All elements in index order; `None` for infinite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    /// The element at position `idx` of `elements()`, without enumerating the field.
    fn element(&self, idx: u64) -> Option<Self::Elem>;
    /// Roots in the field with multiplicities, sorted; `None` if not decidable here.
    fn roots(&self, f: &Poly<Self::Elem>) -> Option<Vec<(Self::Elem, usize)>>;
    /// Inverse of the absolute Frobenius; identity in characteristic zero.
    fn pth_root(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// `a -> a^p`; identity in characteristic zero.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem;
    /// Degree over the prime field, `None` if infinite.
    fn degree(&self) -> Option<u32>;

    /// Monic irreducible factors with multiplicity, where supported.
    fn factor_poly(&self, f: &Poly<Self::Elem>) -> crate::error::Result<Vec<(Poly<Self::Elem>, usize)>> {
        let _ = f;
        Err(crate::error::Error::Unsupported("polynomial factorization over this field".into()))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }
}

/// Roots by exhaustive evaluation, usable for any finite field.
pub fn roots_by_enumeration<K: Scalar>(f: &Poly<K>) -> Option<Vec<(K, usize)>> {
    let field = f.field().clone();
    let elems = field.elements()?;
    if f.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    for e in elems {
        let m = f.root_multiplicity(&e);
        if m > 0 {
            out.push((e, m));
        }
    }
    out.sort();
    Some(out)
}
