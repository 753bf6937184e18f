//! Dense univariate polynomials over a [`Scalar`] field.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{Scalar, ScalarField};

#[derive(Clone)]
pub struct Poly<K: Scalar> {
    field: K::Field,
    /// Lowest degree first, no trailing zeros.
    coeffs: Vec<K>,
}

impl<K: Scalar> Poly<K> {
    pub fn from_coeffs(field: &K::Field, mut coeffs: Vec<K>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }
    pub fn from_ints(field: &K::Field, c: &[i64]) -> Self {
        Self::from_coeffs(field, c.iter().map(|&x| field.from_i64(x)).collect())
    }
    pub fn zero(field: &K::Field) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }
    pub fn one(field: &K::Field) -> Self {
        Self::constant(field.one())
    }
    pub fn constant(c: K) -> Self {
        let f = c.parent();
        Self::from_coeffs(&f, vec![c])
    }
    /// The variable.
    pub fn x(field: &K::Field) -> Self {
        Self::from_coeffs(field, vec![field.zero(), field.one()])
    }
    pub fn monomial(c: K, k: usize) -> Self {
        let f = c.parent();
        let mut v = vec![f.zero(); k];
        v.push(c);
        Self::from_coeffs(&f, v)
    }
    /// `x - a`.
    pub fn linear_root(a: &K) -> Self {
        let f = a.parent();
        Self::from_coeffs(&f, vec![-a.clone(), f.one()])
    }

    pub fn field(&self) -> &K::Field {
        &self.field
    }
    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    /// Degree with `-1` for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }
    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }
    pub fn lead(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }
    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn eval(&self, a: &K) -> K {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c;
        }
        acc
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::from_coeffs(&self.field, self.coeffs.iter().map(|x| x.clone() * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let i = self.lead().inv().unwrap();
        self.scale(&i)
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(&self.field, v)
    }
    /// Drop the k lowest coefficients (exact division by x^k when they vanish).
    pub fn shift_down(&self, k: usize) -> Self {
        Self::from_coeffs(&self.field, self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(&self.field), self.clone());
        }
        let li = d.lead().inv().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * &li;
            if !c.is_zero() {
                for (i, di) in d.coeffs.iter().enumerate() {
                    r[k + i] = r[k + i].clone() - c.clone() * di;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(&self.field, q), Self::from_coeffs(&self.field, r))
    }
    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }
    /// Exact quotient, `None` if the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, u, v)` with `u a + v b = g` and `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s = &s0 - &(&q * &s1);
            s0 = s1;
            s1 = s;
            let t = &t0 - &(&q * &t1);
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let li = r0.lead().inv().unwrap();
        (r0.scale(&li), s0.scale(&li), t0.scale(&li))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::from_coeffs(
            f,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.from_i64(i as i64) * c).collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }

    /// Multiplicity of the root `a`.
    pub fn root_multiplicity(&self, a: &K) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut m = 0;
        let lin = Self::linear_root(a);
        let mut g = self.clone();
        loop {
            if !g.eval(a).is_zero() {
                return m;
            }
            g = g.div_rem(&lin).0;
            m += 1;
        }
    }

    /// Multiplicity of the (non-constant) factor `p` in `self`; `usize::MAX` for zero.
    pub fn valuation(&self, p: &Self) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut m = 0;
        let mut g = self.clone();
        loop {
            let (q, r) = g.div_rem(p);
            if !r.is_zero() {
                return m;
            }
            g = q;
            m += 1;
        }
    }

    /// `x^n self(1/x)`.
    pub fn reverse(&self, n: usize) -> Self {
        let mut v = vec![self.field.zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            assert!(i <= n, "reverse: degree exceeds n");
            v[n - i] = c.clone();
        }
        Self::from_coeffs(&self.field, v)
    }

    pub fn map_coeffs<L: Scalar>(&self, field: &L::Field, f: impl Fn(&K) -> L) -> Poly<L> {
        Poly::from_coeffs(field, self.coeffs.iter().map(f).collect())
    }

    /// Apply the field Frobenius to every coefficient.
    pub fn frobenius_coeffs(&self) -> Self {
        Self::from_coeffs(&self.field, self.coeffs.iter().map(|c| self.field.frobenius(c)).collect())
    }

    /// Render in the given variable name.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let compound = body.contains(['+', '-']) || (body.contains('/') && i > 0);
            let mon = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            let term = if i == 0 {
                body.clone()
            } else if body == "1" {
                mon
            } else if compound {
                format!("({}){}", body, mon)
            } else {
                format!("{}{}", body, mon)
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

impl<K: Scalar> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("s"))
    }
}
impl<K: Scalar> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl<K: Scalar> PartialEq for Poly<K> {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs
    }
}
impl<K: Scalar> Eq for Poly<K> {}
impl<K: Scalar> Hash for Poly<K> {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.coeffs.hash(h)
    }
}
impl<K: Scalar> PartialOrd for Poly<K> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
/// Degree first, then coefficients from the top down.
impl<K: Scalar> Ord for Poly<K> {
    fn cmp(&self, o: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&o.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(o.coeffs.iter().rev()))
    }
}

impl<'a, K: Scalar> Add<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn add(self, o: &Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Poly::from_coeffs(&self.field, v)
    }
}
impl<'a, K: Scalar> Sub<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn sub(self, o: &Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        Poly::from_coeffs(&self.field, v)
    }
}
impl<'a, K: Scalar> Mul<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn mul(self, o: &Poly<K>) -> Poly<K> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut v = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b;
            }
        }
        Poly::from_coeffs(&self.field, v)
    }
}
impl<K: Scalar> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly::from_coeffs(&self.field, self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! poly_owned {
    ($tr:ident, $m:ident) => {
        impl<K: Scalar> $tr for Poly<K> {
            type Output = Poly<K>;
            fn $m(self, o: Poly<K>) -> Poly<K> {
                (&self).$m(&o)
            }
        }
    };
}
poly_owned!(Add, add);
poly_owned!(Sub, sub);
poly_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{Rat, Rationals};

    fn q(c: &[i64]) -> Poly<Rat> {
        Poly::from_ints(&Rationals, c)
    }

    #[test]
    fn division_and_gcd() {
        let a = &q(&[-1, 0, 1]) * &q(&[2, 1]);
        let b = &q(&[-1, 0, 1]) * &q(&[5, 0, 1]);
        assert_eq!(a.gcd(&b), q(&[-1, 0, 1]));
        let (g, u, v) = a.xgcd(&b);
        assert_eq!(&(&u * &a) + &(&v * &b), g);
        let (qq, r) = b.div_rem(&a);
        assert_eq!(&(&qq * &a) + &r, b);
    }

    #[test]
    fn display() {
        assert_eq!(q(&[16, 0, 0, 1]).to_string(), "s^3 + 16");
        assert_eq!(q(&[0, -3, 1]).to_string(), "s^2 - 3s");
        assert_eq!(q(&[-1]).to_string(), "-1");
    }

    #[test]
    fn multiplicity() {
        let f = &q(&[-2, 1]).pow(7) * &q(&[2, 1]);
        assert_eq!(f.root_multiplicity(&Rat::int(2)), 7);
        assert_eq!(f.valuation(&q(&[2, 1])), 1);
    }
}
