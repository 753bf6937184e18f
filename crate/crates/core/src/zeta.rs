//! Zeta functions of the surfaces over finite fields, assembled from newform
//! data and fiber configurations, and order-of-zero checks against Picard numbers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::finite::FieldElem;
use crate::algebra::primes::factor_u64;
use crate::algebra::IntPoly;
use crate::error::{Error, Result};
use crate::hecke::{CubicBranch, Character};
use crate::mordell_weil::orbit_lengths;
use crate::surfaces::config::Configuration;

/// Second Betti number of a K3 surface.
pub const B2: usize = 22;

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// Power sums s_1..s_n of the inverse roots of P(T) = Π(1 − γT), by Newton's identities.
pub fn power_sums(p: &IntPoly, n: usize) -> Vec<BigInt> {
    let c = |k: usize| p.coeff(k);
    let mut s: Vec<BigInt> = Vec::with_capacity(n);
    for r in 1..=n {
        let mut v = -BigInt::from(r) * c(r);
        for k in 1..r {
            v -= c(k) * &s[r - k - 1];
        }
        s.push(v);
    }
    s
}

/// The polynomial Π(1 − γT) of degree `deg` with the given power sums.
pub fn from_power_sums(s: &[BigInt], deg: usize) -> IntPoly {
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for r in 1..=deg {
        let mut v = s[r - 1].clone();
        for k in 1..r {
            v += &c[k] * &s[r - k - 1];
        }
        let (q, rem) = (-v).div_rem(&BigInt::from(r));
        debug_assert!(rem.is_zero());
        c.push(q);
    }
    IntPoly::new(c)
}

/// Replace every inverse root γ by γ^r.
pub fn base_change(p: &IntPoly, r: u32) -> IntPoly {
    let deg = p.degree().unwrap_or(0);
    if r == 1 || deg == 0 {
        return p.clone();
    }
    let s = power_sums(p, deg * r as usize);
    let sr: Vec<BigInt> = (1..=deg).map(|k| s[k * r as usize - 1].clone()).collect();
    from_power_sums(&sr, deg)
}

/// 1 − cT.
fn linear(c: &BigInt) -> IntPoly {
    IntPoly::new(vec![BigInt::one(), -c])
}

/// ζ_q(T) = P₁P₃ / (P₀P₂P₄).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaLocal {
    pub q: u64,
    #[serde(serialize_with = "ser_polys")]
    pub factors: [IntPoly; 5],
}

fn ser_polys<S: serde::Serializer>(v: &[IntPoly; 5], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(5))?;
    for p in v {
        seq.serialize_element(&p.display_in("T"))?;
    }
    seq.end()
}

impl ZetaLocal {
    /// P₀ = 1 − T, P₁ = P₃ = 1, P₄ = 1 − q²T and the given P₂.
    pub fn k3(q: u64, p2: IntPoly) -> Self {
        let one = IntPoly::one();
        ZetaLocal { q, factors: [linear(&BigInt::one()), one.clone(), p2, one, linear(&(big(q) * big(q)))] }
    }

    pub fn p2(&self) -> &IntPoly {
        &self.factors[2]
    }

    /// #X(F_{q^r}) from the logarithmic derivative.
    pub fn count(&self, r: usize) -> BigInt {
        let s = |i: usize| power_sums(&self.factors[i], r).pop().unwrap_or_default();
        s(0) + s(2) + s(4) - s(1) - s(3)
    }

    pub fn counts(&self, n: usize) -> Vec<BigInt> {
        (1..=n).map(|r| self.count(r)).collect()
    }

    /// The zeta function over F_{q^r}.
    pub fn base_change(&self, r: u32) -> Self {
        ZetaLocal { q: self.q.pow(r), factors: self.factors.clone().map(|p| base_change(&p, r)) }
    }
}

impl fmt::Display for ZetaLocal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = |p: &IntPoly| {
            if p.degree() == Some(0) {
                return None;
            }
            let s = display_factored(p, self.q);
            Some(if s.starts_with('(') { s } else { format!("({})", s) })
        };
        let num: Vec<String> = [1, 3].iter().filter_map(|&i| d(&self.factors[i])).collect();
        let den: Vec<String> = [0, 2, 4].iter().filter_map(|&i| d(&self.factors[i])).collect();
        let num = if num.is_empty() { "1".to_string() } else { num.join("") };
        write!(f, "ζ_{}(T) = {} / ({})", self.q, num, den.join(""))
    }
}

/// Display with factors (1 − qT)^a (1 + qT)^b split off.
pub fn display_factored(p: &IntPoly, q: u64) -> String {
    let mut rest = p.clone();
    let mut parts = Vec::new();
    for (sign, c) in [("−", big(q)), ("+", -big(q))] {
        let mut k = 0;
        // 1 − cT has inverse root c, i.e. the reversed polynomial has root c.
        loop {
            let deg = rest.degree().unwrap_or(0);
            if deg == 0 {
                break;
            }
            match rest.reverse(deg).div_linear(&c) {
                Some(r) => {
                    rest = r.reverse(deg - 1);
                    k += 1;
                }
                None => break,
            }
        }
        if k > 0 {
            let f = format!("1 {} {}T", sign, q);
            parts.push(if k == 1 { format!("({})", f) } else { format!("({})^{}", f, k) });
        }
        if sign == "−" && q == 1 {
            break;
        }
    }
    if rest.degree().unwrap_or(0) > 0 || parts.is_empty() {
        let s = rest.display_in("T");
        parts.push(if parts.is_empty() { s } else { format!("({})", s) });
    }
    parts.join("")
}

/// P₂ of X over F_p at a good prime p ≠ 3: (1 − pT)^20 (1 − a_p T + χ(p)p²T²).
pub fn p2_factor(p: u64) -> Result<IntPoly> {
    p2_factor_for(&Character::untwisted(), p)
}

pub fn p2_factor_for(ch: &Character, p: u64) -> Result<IntPoly> {
    if p == 3 {
        return Err(Error::BadPrime { p, reason: "use the configuration of the smooth model at 3".into() });
    }
    let e = ch.euler_factor(p)?;
    Ok(&linear(&big(p)).pow(20) * &e)
}

/// P₂ of X over F_{p^r} at a good prime.
pub fn p2_factor_over(p: u64, r: u32) -> Result<IntPoly> {
    Ok(base_change(&p2_factor(p)?, r))
}

/// ζ of the singular reduction X₃: 1/((1 − T)(1 − 3T)^20(1 − 9T)).
pub fn zeta_bad_3() -> ZetaLocal {
    ZetaLocal::k3(3, linear(&big(3)).pow(20))
}

/// P₂ over F_q from the Frobenius action on the trivial lattice of a model over
/// F_q, completed by a transcendental factor if the trivial lattice has rank < 22.
pub fn p2_from_configuration(config: &Configuration<FieldElem>, q: u64, transcendental: Option<&IntPoly>) -> Result<IntPoly> {
    let qt = big(q);
    let mut p = linear(&qt).pow(2);
    let mut deg = 2usize;
    for f in config.reducible() {
        let d = f.residue_degree as u32;
        for len in orbit_lengths(f.kodaira, &f.frobenius) {
            let l = d * len;
            let mut c = vec![BigInt::zero(); l as usize + 1];
            c[0] = BigInt::one();
            c[l as usize] = -qt.pow(l);
            p = &p * &IntPoly::new(c);
            deg += l as usize;
        }
    }
    let rest = B2.checked_sub(deg).ok_or_else(|| Error::Invalid("trivial lattice of rank above 22".into()))?;
    if rest == 0 {
        return Ok(p);
    }
    match transcendental {
        Some(t) if t.degree() == Some(rest) => Ok(&p * t),
        _ => Err(Error::Unsupported(format!("transcendental factor of degree {} needed", rest))),
    }
}

/// Order of vanishing of P₂ at T = 1/q.
pub fn order_of_zero(p2: &IntPoly, q: u64) -> usize {
    let deg = p2.degree().unwrap_or(0);
    p2.reverse(deg).root_multiplicity(&big(q))
}

/// Sign ε with c_{22−i} = ε q^{22−2i} c_i, if the functional equation holds.
pub fn functional_equation_sign(p2: &IntPoly, q: u64) -> Option<i32> {
    let n = p2.degree()?;
    let qb = big(q);
    let lead = p2.coeff(n);
    let e = if lead == qb.pow(n as u32) {
        1
    } else if lead == -qb.pow(n as u32) {
        -1
    } else {
        return None;
    };
    for i in 0..=n {
        if p2.coeff(n - i) * qb.pow(i as u32) != BigInt::from(e) * p2.coeff(i) * qb.pow((n - i) as u32) {
            return None;
        }
    }
    Some(e)
}

/// From P₂ = (1 − qT)^20 × (rank-2 factor): the trace t and determinant D of the
/// rank-2 part, checking D = ±q² and t = 0 when D = −q².
pub fn eigenvalue_consistency(p2: &IntPoly, q: u64) -> Result<(BigInt, BigInt)> {
    let s = power_sums(p2, 2);
    eigenvalue_check(q, &s[0], &s[1])
}

/// The same check from point counts over F_q and F_{q²}.
pub fn eigenvalue_consistency_from_counts(q: u64, n1: u64, n2: u64) -> Result<(BigInt, BigInt)> {
    let qb = big(q);
    let s1 = big(n1) - 1 - qb.pow(2);
    let s2 = big(n2) - 1 - qb.pow(4);
    eigenvalue_check(q, &s1, &s2)
}

/// Given the first two power sums of the eigenvalues on H², with twenty equal to q.
pub fn eigenvalue_check(q: u64, s1: &BigInt, s2: &BigInt) -> Result<(BigInt, BigInt)> {
    let q = big(q);
    let q2 = &q * &q;
    let t = s1 - BigInt::from(20) * &q;
    let d2 = BigInt::from(20) * &q2 + &t * &t - s2;
    if d2.is_odd() {
        return Err(Error::InconsistentEigenvalues(format!("2D = {} is odd", d2)));
    }
    let d = d2 / 2;
    if d == q2 {
        Ok((t, d))
    } else if d == -q2.clone() {
        if t.is_zero() {
            Ok((t, d))
        } else {
            Err(Error::InconsistentEigenvalues(format!("D = −q² but t = {}", t)))
        }
    } else {
        Err(Error::InconsistentEigenvalues(format!("D = {} is not ±{}", d, q2)))
    }
}

/// ρ(X/F_q) as predicted in terms of p mod 3 and the degree of F_q.
pub fn proposition_rho(q: u64) -> Result<u32> {
    let f = factor_u64(q);
    if f.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let (p, r) = f[0];
    Ok(if p % 3 == 1 {
        20
    } else if r % 2 == 1 {
        21
    } else {
        22
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoSource {
    pub source: String,
    pub rho: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "OK")]
    Ok,
    #[serde(rename = "MISMATCH")]
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TateReport {
    pub q: u64,
    #[serde(rename = "P2_coefficients")]
    pub p2_coefficients: Vec<String>,
    pub u: usize,
    pub rho_sources: Vec<RhoSource>,
    pub verdict: Verdict,
}

impl TateReport {
    /// Record another source for ρ; the verdict requires agreement with all.
    pub fn with_source(mut self, source: &str, rho: u32) -> Self {
        self.rho_sources.push(RhoSource { source: source.into(), rho });
        self.verdict = if self.rho_sources.iter().all(|s| s.rho as usize == self.u) { Verdict::Ok } else { Verdict::Mismatch };
        self
    }
}

impl fmt::Display for TateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let srcs: Vec<String> = self.rho_sources.iter().map(|s| format!("{} {}", s.source, s.rho)).collect();
        write!(f, "q = {}: u = {}, ρ: {} => {:?}", self.q, self.u, srcs.join(", "), self.verdict)
    }
}

/// Compare the order of zero of P₂ at 1/q with ρ.
pub fn tate_check(q: u64, p2: &IntPoly, rho: u32) -> TateReport {
    let u = order_of_zero(p2, q);
    let report = TateReport { q, p2_coefficients: p2.coeffs().iter().map(|c| c.to_string()).collect(), u, rho_sources: Vec::new(), verdict: Verdict::Ok };
    report.with_source("given", rho)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerEntry {
    pub p: u64,
    /// None at bad primes.
    pub factor: Option<String>,
    pub bad: bool,
}

/// ζ(X^(d), s) as ζ(s) ζ(s−1)^20 L(ψ, s) ζ(s−2), with Euler factors of L up to a bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalZeta {
    pub d: i64,
    pub factors: Vec<String>,
    pub euler: Vec<EulerEntry>,
}

pub fn zeta_global_display(d: i64, bound: u64) -> Result<GlobalZeta> {
    if d < 1 {
        return Err(Error::Invalid("d must be a positive cube-free integer".into()));
    }
    if factor_u64(d as u64).iter().any(|&(_, e)| e >= 3) {
        return Err(Error::Invalid(format!("{} is not cube-free", d)));
    }
    let ch = Character::cubic(d, CubicBranch::First);
    let l = if d == 1 { "L(f, s)".to_string() } else { format!("L(ψ_f ⊗ ({}/·)₃, s)", d) };
    let mut euler = Vec::new();
    for p in crate::algebra::primes::primes_up_to(bound) {
        let bad = p == 3 || (d as u64).is_multiple_of(p);
        let factor = if bad { None } else { ch.euler_factor(p).ok().map(|e| e.display_in("T")) };
        euler.push(EulerEntry { p, bad: bad || factor.is_none(), factor });
    }
    Ok(GlobalZeta { d, factors: vec!["ζ(s)".into(), "ζ(s−1)^20".into(), l, "ζ(s−2)".into()], euler })
}

impl fmt::Display for GlobalZeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bad = if self.euler.iter().any(|e| e.bad) { " (up to bad Euler factors)" } else { "" };
        writeln!(f, "ζ(X^({}), s) = {}{}", self.d, self.factors.join(" "), bad)?;
        for e in &self.euler {
            match &e.factor {
                Some(s) => writeln!(f, "  p = {}: {}", e.p, s)?,
                None => writeln!(f, "  p = {}: bad", e.p)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_round_trip() {
        let p = IntPoly::from_i64(&[1, 13, 49]);
        let s = power_sums(&p, 2);
        assert_eq!(from_power_sums(&s, 2), p);
        assert_eq!(base_change(&IntPoly::from_i64(&[1, 0, -4]), 2), IntPoly::from_i64(&[1, -8, 16]));
    }

    #[test]
    fn supersingular_p2() {
        let p = p2_factor(2).unwrap();
        assert_eq!(display_factored(&p, 2), "(1 − 2T)^21(1 + 2T)");
        assert_eq!(order_of_zero(&p, 2), 21);
        assert_eq!(display_factored(&p2_factor(5).unwrap(), 5), "(1 − 5T)^21(1 + 5T)");
        assert_eq!(display_factored(&p2_factor(7).unwrap(), 7), "(1 − 7T)^20(1 + 13T + 49T^2)");
    }

    #[test]
    fn bad_three() {
        let z = zeta_bad_3();
        assert_eq!(z.counts(3), vec![BigInt::from(70), BigInt::from(262), BigInt::from(1270)]);
        assert!(p2_factor(3).is_err());
    }

    #[test]
    fn functional_equation() {
        assert_eq!(functional_equation_sign(&p2_factor(7).unwrap(), 7), Some(1));
        assert_eq!(functional_equation_sign(&p2_factor(2).unwrap(), 2), Some(-1));
        assert_eq!(functional_equation_sign(&IntPoly::from_i64(&[1, 1]), 2), None);
    }
}
