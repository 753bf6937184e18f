//! The weight-3 CM newform of level 27 attached to the Grössencharacter
//! π ↦ π² on primary primes of Z[ω], and its cubic and quadratic twists.

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::eisenstein::{cubic_residue_symbol, splitting, Eisenstein, PrimeSplitting};
use crate::algebra::intpoly::IntPoly;
use crate::algebra::primes::{factor_u64, kronecker};
use crate::error::{Error, Result};

/// Which of the two cube roots of unity the cubic symbol is sent to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CubicBranch {
    First,
    Second,
}

impl CubicBranch {
    fn exponent(self) -> u32 {
        match self {
            CubicBranch::First => 1,
            CubicBranch::Second => 2,
        }
    }
}

/// A twist of the newform: cubic twist by `d` on a chosen branch, then quadratic twist by `disc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Character {
    pub cubic_d: i64,
    pub branch: CubicBranch,
    pub quad_disc: i64,
}

impl Default for Character {
    fn default() -> Self {
        Character::untwisted()
    }
}

impl Character {
    pub fn untwisted() -> Self {
        Character { cubic_d: 1, branch: CubicBranch::First, quad_disc: 1 }
    }
    pub fn cubic(d: i64, branch: CubicBranch) -> Self {
        Character { cubic_d: d, branch, quad_disc: 1 }
    }
    pub fn quadratic(disc: i64) -> Self {
        Character { cubic_d: 1, branch: CubicBranch::First, quad_disc: disc }
    }

    fn nebentypus(&self, p: u64) -> i64 {
        let ip = p as i64;
        if p == 3 || self.cubic_d % ip == 0 || self.quad_disc % ip == 0 {
            0
        } else {
            kronecker(-3, ip) as i64
        }
    }

    /// Trace of Frobenius at the prime p.
    pub fn ap(&self, p: u64) -> Result<i64> {
        match splitting(p)? {
            PrimeSplitting::Inert | PrimeSplitting::Ramified => Ok(0),
            PrimeSplitting::Split { pi, .. } => {
                if self.cubic_d % p as i64 == 0 {
                    return Err(Error::BadPrime { p, reason: "prime divides the cubic twist parameter".into() });
                }
                let mut z = pi * pi;
                if self.cubic_d != 1 {
                    let e = cubic_residue_symbol(self.cubic_d, pi)? as u32;
                    z = z * Eisenstein::OMEGA.pow((self.branch.exponent() * e) % 3);
                }
                Ok(z.trace() * kronecker(self.quad_disc, p as i64) as i64)
            }
        }
    }

    /// Coefficient a_n, multiplicative with the Hecke recursion at prime powers.
    pub fn an(&self, n: u64) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::Invalid("a_0 is undefined".into()));
        }
        let mut acc = BigInt::from(1);
        for (p, k) in factor_u64(n) {
            acc *= self.a_prime_power(p, k)?;
        }
        Ok(acc)
    }

    fn a_prime_power(&self, p: u64, k: u32) -> Result<BigInt> {
        let ap = BigInt::from(self.ap(p)?);
        let c = BigInt::from(self.nebentypus(p)) * BigInt::from(p) * BigInt::from(p);
        let (mut prev, mut cur) = (BigInt::from(1), ap.clone());
        if k == 0 {
            return Ok(prev);
        }
        for _ in 1..k {
            let next = &ap * &cur - &c * &prev;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// `1 - a_p T + χ(p) p² T²`.
    pub fn euler_factor(&self, p: u64) -> Result<IntPoly> {
        let ap = self.ap(p)?;
        let c = self.nebentypus(p) * (p * p) as i64;
        Ok(IntPoly::from_i64(&[1, -ap, c]))
    }

    /// Pairs (p, a_p) for primes p ≤ bound; bad primes of the twist are skipped.
    pub fn coefficient_table(&self, bound: u64) -> Vec<(u64, i64)> {
        crate::algebra::primes::primes_up_to(bound)
            .into_iter()
            .filter_map(|p| self.ap(p).ok().map(|a| (p, a)))
            .collect()
    }
}

/// a_p of the untwisted form.
pub fn ap(p: u64) -> Result<i64> {
    Character::untwisted().ap(p)
}

/// a_p of a twisted form.
pub fn ap_twisted(p: u64, cubic_d: i64, quad_disc: i64, branch: CubicBranch) -> Result<i64> {
    Character { cubic_d, branch, quad_disc }.ap(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coefficients() {
        let t: Vec<i64> = [2u64, 3, 5, 7, 11, 13].iter().map(|&p| ap(p).unwrap()).collect();
        assert_eq!(t, vec![0, 0, 0, -13, 0, -1]);
    }

    #[test]
    fn prime_power_recursion() {
        // a_49 = a_7^2 - 49
        assert_eq!(Character::untwisted().an(49).unwrap(), BigInt::from(169 - 49));
        // a_4 = a_2^2 + 4 since χ(2) = -1
        assert_eq!(Character::untwisted().an(4).unwrap(), BigInt::from(4));
        assert_eq!(Character::untwisted().an(9).unwrap(), BigInt::from(0));
        assert_eq!(Character::untwisted().an(91).unwrap(), BigInt::from(13));
    }

    #[test]
    fn cubic_twist_branches_at_seven() {
        assert_eq!(ap_twisted(7, 3, 1, CubicBranch::First).unwrap(), 11);
        assert_eq!(ap_twisted(7, 3, 1, CubicBranch::Second).unwrap(), 2);
        assert_eq!(ap_twisted(7, 2, 1, CubicBranch::First).unwrap(), 2);
    }
}
