//! Eisenstein integers Z[ω], ω^2 + ω + 1 = 0, and the cubic residue symbol.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::primes::is_prime;
use crate::error::{Error, Result};

/// `a + b ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Eisenstein {
    pub a: i64,
    pub b: i64,
}

impl Eisenstein {
    pub const ONE: Eisenstein = Eisenstein { a: 1, b: 0 };
    pub const OMEGA: Eisenstein = Eisenstein { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        Eisenstein { a, b }
    }
    pub fn norm(&self) -> i64 {
        self.a * self.a - self.a * self.b + self.b * self.b
    }
    /// Complex conjugate; ω maps to ω^2 = -1 - ω.
    pub fn conj(&self) -> Self {
        Eisenstein::new(self.a - self.b, -self.b)
    }
    /// Trace to Z, `2a - b`.
    pub fn trace(&self) -> i64 {
        2 * self.a - self.b
    }
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Eisenstein::ONE;
        for _ in 0..e {
            acc = acc * *self;
        }
        acc
    }
    pub fn is_primary(&self) -> bool {
        (self.a - 1).rem_euclid(3) == 0 && self.b.rem_euclid(3) == 0
    }
    /// The six units, starting at 1 and multiplying by -ω.
    pub fn units() -> [Eisenstein; 6] {
        let mut u = [Eisenstein::ONE; 6];
        let step = -Eisenstein::OMEGA;
        for i in 1..6 {
            u[i] = u[i - 1] * step;
        }
        u
    }
    /// The associate congruent to 1 mod 3, if any.
    pub fn primary_associate(&self) -> Option<Self> {
        Self::units().iter().map(|u| *u * *self).find(|z| z.is_primary())
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{}", a),
            (0, b) => write!(f, "{}ω", b),
            (a, b) if b < 0 => write!(f, "{}-{}ω", a, -b),
            (a, b) => write!(f, "{}+{}ω", a, b),
        }
    }
}

impl Add for Eisenstein {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Eisenstein::new(self.a + o.a, self.b + o.b)
    }
}
impl Sub for Eisenstein {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Eisenstein::new(self.a - o.a, self.b - o.b)
    }
}
impl Neg for Eisenstein {
    type Output = Self;
    fn neg(self) -> Self {
        Eisenstein::new(-self.a, -self.b)
    }
}
impl Mul for Eisenstein {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Eisenstein::new(self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a - self.b * o.b)
    }
}

/// Decomposition of a rational prime in Z[ω].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeSplitting {
    Inert,
    Ramified,
    /// `p = π π̄` with π primary.
    Split { pi: Eisenstein, pi_bar: Eisenstein },
}

pub fn splitting(p: u64) -> Result<PrimeSplitting> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 3 {
        return Ok(PrimeSplitting::Ramified);
    }
    if p % 3 == 2 {
        return Ok(PrimeSplitting::Inert);
    }
    let p = p as i64;
    let mut b = 1i64;
    while 3 * b * b <= 4 * p {
        let d = 4 * p - 3 * b * b;
        let s = (d as f64).sqrt().round() as i64;
        for s in [s - 1, s, s + 1] {
            if s >= 0 && s * s == d && (b + s) % 2 == 0 {
                let pi = Eisenstein::new((b + s) / 2, b).primary_associate().unwrap();
                debug_assert_eq!(pi.norm(), p);
                return Ok(PrimeSplitting::Split { pi, pi_bar: pi.conj() });
            }
        }
        b += 1;
    }
    unreachable!("every prime congruent to 1 mod 3 is a norm")
}

/// Primary prime of norm p for p ≡ 1 mod 3.
pub fn primary_prime(p: u64) -> Result<Eisenstein> {
    match splitting(p)? {
        PrimeSplitting::Split { pi, .. } => Ok(pi),
        _ => Err(Error::BadPrime { p, reason: "not split in Z[ω]".into() }),
    }
}

fn pow_mod(mut a: i64, mut e: i64, m: i64) -> i64 {
    let mut r = 1i64;
    a = a.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as i128 * a as i128) % m as i128) as i64;
        }
        a = ((a as i128 * a as i128) % m as i128) as i64;
        e >>= 1;
    }
    r
}

/// Exponent e in {0,1,2} with `(d/π)_3 = ω^e`, for π of prime norm p ≡ 1 mod 3.
pub fn cubic_residue_symbol(d: i64, pi: Eisenstein) -> Result<u8> {
    let p = pi.norm();
    if p <= 0 || !is_prime(p as u64) || p % 3 != 1 {
        return Err(Error::BadPrime { p: p.unsigned_abs(), reason: "π must have prime norm ≡ 1 mod 3".into() });
    }
    if d.rem_euclid(p) == 0 {
        return Err(Error::NotCoprime(d));
    }
    // ω ≡ -a / b mod π
    let binv = pow_mod(pi.b, p - 2, p);
    let w = (-(pi.a.rem_euclid(p)) * binv).rem_euclid(p);
    let t = pow_mod(d, (p - 1) / 3, p);
    let w2 = ((w as i128 * w as i128) % p as i128) as i64;
    if t == 1 {
        Ok(0)
    } else if t == w {
        Ok(1)
    } else if t == w2 {
        Ok(2)
    } else {
        Err(Error::Invalid("cubic residue symbol is not a cube root of unity".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primary_primes() {
        assert_eq!(primary_prime(7).unwrap(), Eisenstein::new(-2, -3));
        assert_eq!(primary_prime(13).unwrap(), Eisenstein::new(1, -3));
        assert_eq!(splitting(5).unwrap(), PrimeSplitting::Inert);
        assert_eq!(splitting(3).unwrap(), PrimeSplitting::Ramified);
    }

    #[test]
    fn omega_is_a_cube_root_of_unity() {
        let w = Eisenstein::OMEGA;
        assert_eq!(w.pow(3), Eisenstein::ONE);
        assert_eq!(w * w + w + Eisenstein::ONE, Eisenstein::new(0, 0));
    }

    #[test]
    fn cubic_symbol_at_seven() {
        let pi = primary_prime(7).unwrap();
        assert_eq!(cubic_residue_symbol(3, pi).unwrap(), 2);
        assert_eq!(cubic_residue_symbol(2, pi).unwrap(), 1);
        assert_eq!(cubic_residue_symbol(1, pi).unwrap(), 0);
        assert!(cubic_residue_symbol(7, pi).is_err());
    }
}
