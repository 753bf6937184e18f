//! Residue fields K[s]/(P) for a monic irreducible P.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;

use super::poly::Poly;
use super::scalar::{roots_by_enumeration, Scalar, ScalarField};

#[derive(Clone)]
pub struct ResidueField<K: Scalar> {
    modulus: Arc<Poly<K>>,
}

impl<K: Scalar> ResidueField<K> {
    /// `modulus` must be monic irreducible of positive degree.
    pub fn new(modulus: Poly<K>) -> Self {
        assert!(modulus.deg() > 0, "residue field needs a non-constant modulus");
        ResidueField { modulus: Arc::new(modulus.monic()) }
    }
    pub fn modulus(&self) -> &Poly<K> {
        &self.modulus
    }
    pub fn base(&self) -> &K::Field {
        self.modulus.field()
    }
    pub fn reduce(&self, f: &Poly<K>) -> ResElem<K> {
        ResElem { field: self.clone(), rep: f.rem(&self.modulus) }
    }
    pub fn embed(&self, c: &K) -> ResElem<K> {
        self.reduce(&Poly::constant(c.clone()))
    }
    /// Residue-field degree over K.
    pub fn relative_degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }
}

impl<K: Scalar> fmt::Debug for ResidueField<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K[s]/({})", self.modulus)
    }
}
impl<K: Scalar> PartialEq for ResidueField<K> {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.modulus, &o.modulus) || *self.modulus == *o.modulus
    }
}
impl<K: Scalar> Eq for ResidueField<K> {}

#[derive(Clone)]
pub struct ResElem<K: Scalar> {
    field: ResidueField<K>,
    rep: Poly<K>,
}

impl<K: Scalar> ResElem<K> {
    /// Canonical representative of degree below the modulus degree.
    pub fn lift(&self) -> &Poly<K> {
        &self.rep
    }
    /// The element as a base-field constant, if it is one.
    pub fn as_base(&self) -> Option<K> {
        (self.rep.deg() <= 0).then(|| self.rep.coeff(0))
    }
}

impl<K: Scalar> fmt::Display for ResElem<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rep.deg() <= 0 {
            write!(f, "{}", self.rep.coeff(0))
        } else {
            write!(f, "[{}]", self.rep.display_in("θ"))
        }
    }
}
impl<K: Scalar> fmt::Debug for ResElem<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
impl<K: Scalar> PartialEq for ResElem<K> {
    fn eq(&self, o: &Self) -> bool {
        self.rep == o.rep
    }
}
impl<K: Scalar> Eq for ResElem<K> {}
impl<K: Scalar> Hash for ResElem<K> {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.rep.hash(h)
    }
}
impl<K: Scalar> PartialOrd for ResElem<K> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
/// Coefficient-wise from the constant term up.
impl<K: Scalar> Ord for ResElem<K> {
    fn cmp(&self, o: &Self) -> Ordering {
        let n = self.rep.coeffs().len().max(o.rep.coeffs().len());
        for i in 0..n {
            let c = self.rep.coeff(i).cmp(&o.rep.coeff(i));
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    }
}

macro_rules! res_binop {
    ($tr:ident, $m:ident) => {
        impl<K: Scalar> $tr for ResElem<K> {
            type Output = ResElem<K>;
            fn $m(self, o: ResElem<K>) -> ResElem<K> {
                let r = (&self.rep).$m(&o.rep);
                self.field.reduce(&r)
            }
        }
        impl<'a, K: Scalar> $tr<&'a ResElem<K>> for ResElem<K> {
            type Output = ResElem<K>;
            fn $m(self, o: &'a ResElem<K>) -> ResElem<K> {
                let r = (&self.rep).$m(&o.rep);
                self.field.reduce(&r)
            }
        }
    };
}
res_binop!(Add, add);
res_binop!(Sub, sub);
res_binop!(Mul, mul);

impl<K: Scalar> Neg for ResElem<K> {
    type Output = ResElem<K>;
    fn neg(self) -> ResElem<K> {
        ResElem { rep: -&self.rep, field: self.field }
    }
}

impl<K: Scalar> Scalar for ResElem<K> {
    type Field = ResidueField<K>;
    fn parent(&self) -> ResidueField<K> {
        self.field.clone()
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        if self.rep.is_zero() {
            return None;
        }
        let (g, u, _) = self.rep.xgcd(&self.field.modulus);
        debug_assert!(g.is_one());
        Some(self.field.reduce(&u))
    }
}

impl<K: Scalar> ScalarField for ResidueField<K> {
    type Elem = ResElem<K>;
    fn zero(&self) -> ResElem<K> {
        ResElem { field: self.clone(), rep: Poly::zero(self.base()) }
    }
    fn one(&self) -> ResElem<K> {
        self.reduce(&Poly::one(self.base()))
    }
    fn from_int(&self, n: &BigInt) -> ResElem<K> {
        self.embed(&self.base().from_int(n))
    }
    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }
    fn order(&self) -> Option<u64> {
        let q = self.base().order()?;
        q.checked_pow(self.relative_degree() as u32)
    }
    fn degree(&self) -> Option<u32> {
        Some(self.base().degree()? * self.relative_degree() as u32)
    }
    fn elements(&self) -> Option<Vec<ResElem<K>>> {
        let base = self.base().elements()?;
        let d = self.relative_degree();
        let q = base.len();
        let total = q.checked_pow(d as u32)?;
        if total > 1 << 20 {
            return None;
        }
        let mut out = Vec::with_capacity(total);
        for mut idx in 0..total {
            let mut c = Vec::with_capacity(d);
            for _ in 0..d {
                c.push(base[idx % q].clone());
                idx /= q;
            }
            out.push(self.reduce(&Poly::from_coeffs(self.base(), c)));
        }
        Some(out)
    }
    fn element(&self, mut idx: u64) -> Option<ResElem<K>> {
        let q = self.base().order()?;
        if idx >= self.order()? {
            return None;
        }
        let mut c = Vec::with_capacity(self.relative_degree());
        for _ in 0..self.relative_degree() {
            c.push(self.base().element(idx % q)?);
            idx /= q;
        }
        Some(self.reduce(&Poly::from_coeffs(self.base(), c)))
    }
    fn roots(&self, f: &Poly<ResElem<K>>) -> Option<Vec<(ResElem<K>, usize)>> {
        if self.relative_degree() == 1 {
            // K[s]/(s - a) is K itself
            let base = self.base().clone();
            let g = f.map_coeffs(&base, |c| c.rep.coeff(0));
            let r = base.roots(&g)?;
            return Some(r.into_iter().map(|(x, m)| (self.embed(&x), m)).collect());
        }
        if f.is_zero() {
            return None;
        }
        if self.order()? <= 4096 || f.degree().unwrap_or(0) == 0 {
            return roots_by_enumeration(f);
        }
        let mut out: Vec<(ResElem<K>, usize)> = crate::algebra::factor::factor(f)
            .factors
            .into_iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, m)| (-(g.coeff(0)), m))
            .collect();
        out.sort();
        Some(out)
    }
    fn pth_root(&self, a: &ResElem<K>) -> Option<ResElem<K>> {
        let q = self.order()?;
        let p = self.characteristic();
        Some(a.pow((q / p) as u128))
    }
    fn frobenius(&self, a: &ResElem<K>) -> ResElem<K> {
        let p = self.characteristic();
        if p == 0 {
            a.clone()
        } else {
            a.pow(p as u128)
        }
    }
}
