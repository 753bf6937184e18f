//! Integer polynomials used for Euler factors and zeta numerators.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().map(|x| x.is_zero()).unwrap_or(false) {
            c.pop();
        }
        IntPoly(c)
    }
    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }
    pub fn one() -> Self {
        IntPoly(vec![BigInt::one()])
    }
    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }
    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
    /// `x^n f(1/x)`.
    pub fn reverse(&self, n: usize) -> Self {
        let mut v = vec![BigInt::zero(); n + 1];
        for (i, c) in self.0.iter().enumerate() {
            v[n - i] = c.clone();
        }
        Self::new(v)
    }
    /// Exact division by `x - a`, `None` on a nonzero remainder.
    pub fn div_linear(&self, a: &BigInt) -> Option<Self> {
        if self.0.is_empty() {
            return Some(self.clone());
        }
        let n = self.0.len();
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for i in (0..n).rev() {
            let c = &self.0[i] + &carry * a;
            if i == 0 {
                if !c.is_zero() {
                    return None;
                }
            } else {
                q[i - 1] = c.clone();
            }
            carry = c;
        }
        Some(Self::new(q))
    }
    /// Multiplicity of the root `a`.
    pub fn root_multiplicity(&self, a: &BigInt) -> usize {
        let mut m = 0;
        let mut f = self.clone();
        while !f.0.is_empty() {
            match f.div_linear(a) {
                Some(g) => {
                    f = g;
                    m += 1;
                }
                None => break,
            }
        }
        m
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let mon = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            let term = if i > 0 && a.is_one() { mon } else { format!("{}{}", a, mon) };
            if out.is_empty() {
                if neg {
                    out.push('−');
                }
            } else {
                out.push_str(if neg { " − " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("T"))
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}
impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}
impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return IntPoly::default();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}
impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.0.iter().map(|c| -c).collect())
    }
}
