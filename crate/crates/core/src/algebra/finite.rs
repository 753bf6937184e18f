//! Finite fields F_{p^r} with log/exp and Zech tables.
//!
//! Elements are indexed by `v = c_0 + c_1 p + ... + c_{r-1} p^{r-1}` where
//! `c_0 + c_1 α + ...` is the polynomial representative modulo the defining
//! polynomial, which is the lexicographically first monic irreducible of degree r.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::poly::Poly;
use super::primes::{factor_u64, is_prime};
use super::scalar::{roots_by_enumeration, Scalar, ScalarField};
use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 22;

const NONE: u32 = u32::MAX;

#[derive(Debug)]
pub struct GfInner {
    p: u32,
    r: u32,
    q: u32,
    /// Monic defining polynomial, low degree first, length r + 1.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)` or NONE when `1 + g^k = 0`.
    zech: Vec<u32>,
}

/// A finite field handle; cheap to clone.
#[derive(Clone)]
pub struct Gf(Arc<GfInner>);

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

impl PartialEq for Gf {
    fn eq(&self, o: &Gf) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.0.q == o.0.q && self.0.modulus == o.0.modulus)
    }
}
impl Eq for Gf {}

fn digits(mut v: u32, p: u32, r: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(r as usize);
    for _ in 0..r {
        d.push(v % p);
        v /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiply two residues modulo a monic polynomial over F_p (slow path for table setup).
fn slow_mul(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let r = m.len() - 1;
    let mut prod = vec![0u64; 2 * r];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for k in (r..2 * r).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..r {
            let sub = c * m[i] as u64 % p as u64;
            prod[k - r + i] = (prod[k - r + i] + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(r);
    prod.into_iter().map(|x| x as u32).collect()
}

fn cache() -> &'static Mutex<HashMap<(u32, u32), Gf>> {
    static C: OnceLock<Mutex<HashMap<(u32, u32), Gf>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Gf {
    /// F_{p^r}; fields are cached so repeated construction is cheap.
    pub fn new(p: u64, r: u32) -> Result<Gf> {
        if !is_prime(p) || r == 0 {
            return Err(Error::NotPrimePower(p.saturating_pow(r.max(1))));
        }
        let q = p.checked_pow(r).ok_or(Error::FieldTooLarge(u64::MAX))?;
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let key = (p as u32, r);
        if let Some(f) = cache().lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let f = Gf::build(p as u32, r)?;
        cache().lock().unwrap().insert(key, f.clone());
        Ok(f)
    }

    /// Parse `q` as a prime power.
    pub fn with_order(q: u64) -> Result<Gf> {
        let fac = factor_u64(q);
        if fac.len() != 1 {
            return Err(Error::NotPrimePower(q));
        }
        Gf::new(fac[0].0, fac[0].1)
    }

    fn build(p: u32, r: u32) -> Result<Gf> {
        let q = p.pow(r);
        let modulus = if r == 1 {
            vec![0, 1]
        } else {
            let prime = Gf::new(p as u64, 1)?;
            let mut found = None;
            for n in 0..q {
                let mut c: Vec<FieldElem> = digits(n, p, r).into_iter().map(|d| prime.elem(d)).collect();
                c.push(prime.one());
                let f = Poly::from_coeffs(&prime, c);
                if super::factor::is_irreducible(&f) {
                    let mut m = digits(n, p, r);
                    m.push(1);
                    found = Some(m);
                    break;
                }
            }
            found.expect("an irreducible polynomial exists in every degree")
        };
        // find a primitive element by increasing index
        let one = {
            let mut v = vec![0u32; r as usize];
            v[0] = 1;
            v
        };
        let mut exp = Vec::new();
        for g in 2..q.max(3) {
            if q == 2 {
                exp = vec![1];
                break;
            }
            let gd = digits(g, p, r);
            let mut cur = one.clone();
            let mut seq = Vec::with_capacity(q as usize - 1);
            let mut ok = true;
            for k in 0..q - 1 {
                let idx = undigits(&cur, p);
                if k > 0 && idx == 1 {
                    ok = false;
                    break;
                }
                seq.push(idx);
                cur = slow_mul(&cur, &gd, &modulus, p);
            }
            if ok {
                exp = seq;
                break;
            }
        }
        let n = (q - 1) as usize;
        let mut log = vec![NONE; q as usize];
        for (k, &v) in exp.iter().enumerate() {
            log[v as usize] = k as u32;
        }
        let mut exp2 = exp.clone();
        exp2.extend_from_slice(&exp);
        let mut zech = vec![NONE; n];
        for k in 0..n {
            let mut d = digits(exp[k], p, r);
            d[0] = (d[0] + 1) % p;
            let v = undigits(&d, p);
            zech[k] = if v == 0 { NONE } else { log[v as usize] };
        }
        Ok(Gf(Arc::new(GfInner { p, r, q, modulus, exp: exp2, log, zech })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn r(&self) -> u32 {
        self.0.r
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    /// Defining polynomial coefficients, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn elem(&self, v: u32) -> FieldElem {
        assert!(v < self.0.q, "element index out of range");
        FieldElem { field: self.clone(), v }
    }

    /// Element from polynomial coefficients in α (lowest first), reduced mod p.
    pub fn from_coeffs(&self, c: &[i64]) -> FieldElem {
        let p = self.0.p as i64;
        let mut acc = self.zero();
        let a = self.alpha().unwrap_or_else(|| self.one());
        let mut pw = self.one();
        for &ci in c {
            acc = acc + self.elem(ci.rem_euclid(p) as u32) * &pw;
            pw = pw * &a;
        }
        acc
    }

    /// The class of x modulo the defining polynomial; `None` for prime fields.
    pub fn alpha(&self) -> Option<FieldElem> {
        if self.0.r == 1 {
            None
        } else {
            Some(self.elem(self.0.p))
        }
    }

    pub fn generator(&self) -> FieldElem {
        self.elem(self.0.exp[if self.0.q == 2 { 0 } else { 1 }])
    }

    // raw index arithmetic, used by the counting kernels

    #[inline]
    pub fn add_raw(&self, a: u32, b: u32) -> u32 {
        let f = &*self.0;
        if f.r == 1 {
            let s = a + b;
            return if s >= f.p { s - f.p } else { s };
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = f.q - 1;
        let la = f.log[a as usize];
        let lb = f.log[b as usize];
        let k = if lb >= la { lb - la } else { lb + n - la };
        let z = f.zech[k as usize];
        if z == NONE {
            0
        } else {
            f.exp[(la + z) as usize]
        }
    }

    #[inline]
    pub fn neg_raw(&self, a: u32) -> u32 {
        let f = &*self.0;
        if a == 0 || f.p == 2 {
            return a;
        }
        if f.r == 1 {
            return f.p - a;
        }
        let n = f.q - 1;
        let l = f.log[a as usize] + n / 2;
        f.exp[l as usize]
    }

    #[inline]
    pub fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let f = &*self.0;
        if a == 0 || b == 0 {
            return 0;
        }
        if f.r == 1 {
            return ((a as u64 * b as u64) % f.p as u64) as u32;
        }
        f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
    }

    #[inline]
    pub fn inv_raw(&self, a: u32) -> Option<u32> {
        let f = &*self.0;
        if a == 0 {
            return None;
        }
        let n = f.q - 1;
        let l = f.log[a as usize];
        Some(f.exp[((n - l) % n) as usize])
    }

    /// Discrete log to the table generator; `None` at zero.
    #[inline]
    pub fn log_raw(&self, a: u32) -> Option<u32> {
        let l = self.0.log[a as usize];
        (l != NONE).then_some(l)
    }

    #[inline]
    pub fn exp_raw(&self, k: u64) -> u32 {
        let n = (self.0.q - 1) as u64;
        self.0.exp[(k % n) as usize]
    }

    /// Quadratic character: 0, 1 or -1 (odd q only; in characteristic 2 every element is a square).
    #[inline]
    pub fn chi_raw(&self, a: u32) -> i32 {
        if a == 0 {
            0
        } else if self.0.p == 2 || self.0.log[a as usize].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn from_int_raw(&self, n: &BigInt) -> u32 {
        let p = BigInt::from(self.0.p);
        n.mod_floor(&p).to_u32().unwrap()
    }

    /// Absolute trace to F_p of an element (as an integer mod p).
    pub fn abs_trace_raw(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut cur = a;
        for _ in 0..self.0.r {
            acc = self.add_raw(acc, cur);
            cur = self.pow_raw(cur, self.0.p as u64);
        }
        acc
    }

    pub fn pow_raw(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a as usize] as u64;
        self.0.exp[((l * (e % n)) % n) as usize]
    }
}

/// An element of a [`Gf`].
#[derive(Clone)]
pub struct FieldElem {
    field: Gf,
    v: u32,
}

impl FieldElem {
    pub fn index(&self) -> u32 {
        self.v
    }
    pub fn field(&self) -> &Gf {
        &self.field
    }
    /// Polynomial representative in α, lowest degree first.
    pub fn coeffs(&self) -> Vec<u32> {
        digits(self.v, self.field.0.p, self.field.0.r)
    }
    pub fn is_square(&self) -> bool {
        self.field.chi_raw(self.v) >= 0
    }
    pub fn sqrt(&self) -> Option<FieldElem> {
        let f = &self.field;
        if self.v == 0 {
            return Some(self.clone());
        }
        let n = f.0.q - 1;
        let l = f.0.log[self.v as usize];
        if f.0.p == 2 {
            // squaring is a bijection; halve the log modulo the odd group order
            let half = (l as u64 * (n as u64).div_ceil(2)) % n as u64;
            return Some(f.elem(f.exp_raw(half)));
        }
        if l % 2 == 1 {
            return None;
        }
        Some(f.elem(f.exp_raw((l / 2) as u64)))
    }
    /// Multiplicative order.
    pub fn order(&self) -> Option<u64> {
        let l = self.field.log_raw(self.v)? as u64;
        let n = (self.field.0.q - 1) as u64;
        Some(n / l.gcd(&n))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElem {
    /// Prime-field elements print as integers; extension elements as α^k when α is
    /// primitive, otherwise as a polynomial in α.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.field;
        if g.0.r == 1 || self.v == 0 {
            return write!(f, "{}", self.v);
        }
        let a = g.alpha().unwrap();
        if a.order() == Some((g.0.q - 1) as u64) {
            // log base α
            let la = g.0.log[a.v as usize] as u64;
            let n = (g.0.q - 1) as u64;
            let lv = g.0.log[self.v as usize] as u64;
            // la is a unit mod n
            let inv = mod_inverse(la, n).unwrap();
            let k = lv * inv % n;
            return match k {
                0 => write!(f, "1"),
                1 => write!(f, "α"),
                _ => write!(f, "α^{}", k),
            };
        }
        let c = self.coeffs();
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let t = match (i, ci) {
                (0, _) => format!("{}", ci),
                (1, 1) => "α".to_string(),
                (1, _) => format!("{}α", ci),
                (_, 1) => format!("α^{}", i),
                _ => format!("{}α^{}", ci, i),
            };
            terms.push(t);
        }
        write!(f, "{}", terms.join("+"))
    }
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let e = num_integer::Integer::extended_gcd(&(a as i64), &(n as i64));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(n as i64) as u64)
}

impl PartialEq for FieldElem {
    fn eq(&self, o: &Self) -> bool {
        self.v == o.v && self.field == o.field
    }
}
impl Eq for FieldElem {}
impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.v.hash(h)
    }
}
impl PartialOrd for FieldElem {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for FieldElem {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.v.cmp(&o.v)
    }
}

macro_rules! fe_binop {
    ($tr:ident, $m:ident, $raw:ident) => {
        impl $tr for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                let v = self.field.$raw(self.v, o.v);
                FieldElem { field: self.field, v }
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &'a FieldElem) -> FieldElem {
                let v = self.field.$raw(self.v, o.v);
                FieldElem { field: self.field, v }
            }
        }
    };
}
fe_binop!(Add, add, add_raw);
fe_binop!(Sub, sub, sub_raw);
fe_binop!(Mul, mul, mul_raw);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let v = self.field.neg_raw(self.v);
        FieldElem { field: self.field, v }
    }
}

impl Scalar for FieldElem {
    type Field = Gf;
    fn parent(&self) -> Gf {
        self.field.clone()
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
    fn inv(&self) -> Option<Self> {
        self.field.inv_raw(self.v).map(|v| FieldElem { field: self.field.clone(), v })
    }
    fn pow(&self, e: u128) -> Self {
        let n = (self.field.0.q - 1) as u128;
        let e = if e == 0 { 0 } else { ((e - 1) % n + 1) as u64 };
        FieldElem { field: self.field.clone(), v: self.field.pow_raw(self.v, e) }
    }
}

impl ScalarField for Gf {
    type Elem = FieldElem;
    fn zero(&self) -> FieldElem {
        self.elem(0)
    }
    fn one(&self) -> FieldElem {
        self.elem(1)
    }
    fn from_int(&self, n: &BigInt) -> FieldElem {
        self.elem(self.from_int_raw(n))
    }
    fn characteristic(&self) -> u64 {
        self.0.p as u64
    }
    fn order(&self) -> Option<u64> {
        Some(self.0.q as u64)
    }
    fn elements(&self) -> Option<Vec<FieldElem>> {
        Some((0..self.0.q).map(|v| self.elem(v)).collect())
    }
    fn element(&self, idx: u64) -> Option<FieldElem> {
        (idx < self.0.q as u64).then(|| self.elem(idx as u32))
    }
    fn degree(&self) -> Option<u32> {
        Some(self.0.r)
    }
    fn roots(&self, f: &Poly<FieldElem>) -> Option<Vec<(FieldElem, usize)>> {
        if f.is_zero() {
            return None;
        }
        if (self.0.q as usize) <= 4096 || f.degree().unwrap_or(0) == 0 {
            return roots_by_enumeration(f);
        }
        let mut out = Vec::new();
        for (g, m) in super::factor::factor(f).factors {
            if g.degree() == Some(1) {
                let r = -(g.coeff(0));
                out.push((r, m));
            }
        }
        out.sort();
        Some(out)
    }
    fn factor_poly(&self, f: &Poly<FieldElem>) -> Result<Vec<(Poly<FieldElem>, usize)>> {
        if f.is_zero() {
            return Err(Error::Invalid("cannot factor zero".into()));
        }
        Ok(super::factor::factor(f).factors)
    }
    fn pth_root(&self, a: &FieldElem) -> Option<FieldElem> {
        // a^(q/p)
        Some(a.pow((self.0.q / self.0.p) as u128))
    }
    fn frobenius(&self, a: &FieldElem) -> FieldElem {
        a.pow(self.0.p as u128)
    }
}
