//! Polynomial factorization: square-free decomposition, distinct-degree and
//! equal-degree splitting over finite fields; rational roots plus low degree over Q.

use std::collections::BTreeMap;

use super::poly::Poly;
use super::rational::Rat;
use super::scalar::{Scalar, ScalarField};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<K: Scalar> {
    pub unit: K,
    /// Monic irreducible factors with multiplicity, sorted by degree then coefficients.
    pub factors: Vec<(Poly<K>, usize)>,
}

impl<K: Scalar> Factorization<K> {
    pub fn expand(&self) -> Poly<K> {
        let mut acc = Poly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m as u32);
        }
        acc
    }

    fn from_map(unit: K, map: BTreeMap<Poly<K>, usize>) -> Self {
        Factorization { unit, factors: map.into_iter().collect() }
    }
}

impl<K: Scalar> std::fmt::Display for Factorization<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut s = String::new();
        if !self.unit.is_one() || self.factors.is_empty() {
            s.push_str(&self.unit.to_string());
        }
        for (g, m) in &self.factors {
            s.push('(');
            s.push_str(&g.to_string());
            s.push(')');
            if *m > 1 {
                s.push_str(&format!("^{}", m));
            }
        }
        write!(f, "{}", s)
    }
}

fn pth_root_poly<K: Scalar>(f: &Poly<K>, p: usize) -> Poly<K> {
    let field = f.field().clone();
    let n = f.coeffs().len();
    let v = (0..n.div_ceil(p))
        .map(|i| field.pth_root(&f.coeff(i * p)).expect("finite field"))
        .collect();
    Poly::from_coeffs(&field, v)
}

/// Square-free decomposition of a monic polynomial over a perfect field:
/// pairs `(g_i, i)` with `f = prod g_i^i`, g_i square-free and pairwise coprime.
pub fn squarefree_decomposition<K: Scalar>(f: &Poly<K>) -> Vec<(Poly<K>, usize)> {
    let p = f.field().characteristic() as usize;
    let mut out = Vec::new();
    if f.deg() <= 0 {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in squarefree_decomposition(&pth_root_poly(f, p)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).unwrap();
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.exact_div(&w).unwrap();
        i += 1;
    }
    if !c.is_one() && !c.is_zero() {
        assert!(p > 0, "characteristic zero leaves no p-th power part");
        for (g, m) in squarefree_decomposition(&pth_root_poly(&c, p)) {
            out.push((g, m * p));
        }
    }
    out
}

fn x_pow_q_iter<K: Scalar>(f: &Poly<K>, q: u128, times: usize) -> Poly<K> {
    let mut h = Poly::x(f.field()).rem(f);
    for _ in 0..times {
        h = h.pow_mod(q, f);
    }
    h
}

/// Rabin's irreducibility test over a finite field.
pub fn is_irreducible<K: Scalar>(f: &Poly<K>) -> bool {
    let q = f.field().order().expect("finite field") as u128;
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = f.monic();
    let x = Poly::x(f.field());
    if x_pow_q_iter(&f, q, n) != x.rem(&f) {
        return false;
    }
    for (l, _) in super::primes::factor_u64(n as u64) {
        let h = x_pow_q_iter(&f, q, n / l as usize);
        if !f.gcd(&(&h - &x)).is_one() {
            return false;
        }
    }
    true
}

/// Distinct-degree factorization of a monic square-free polynomial.
fn ddf<K: Scalar>(f: &Poly<K>, q: u128) -> Vec<(Poly<K>, usize)> {
    let mut out = Vec::new();
    let x = Poly::x(f.field());
    let mut g = f.clone();
    let mut h = x.rem(&g);
    let mut d = 1;
    while g.deg() >= 2 * d as i64 {
        h = h.pow_mod(q, &g);
        let fac = g.gcd(&(&h - &x));
        if !fac.is_one() {
            g = g.exact_div(&fac).unwrap();
            h = h.rem(&g);
            out.push((fac, d));
        }
        d += 1;
    }
    if g.deg() > 0 {
        let dg = g.degree().unwrap();
        out.push((g, dg));
    }
    out
}

/// Deterministic sequence of splitting candidates of degree < n.
fn candidate<K: Scalar>(field: &K::Field, mut idx: u64, n: usize, q: u64) -> Poly<K> {
    let mut c = Vec::with_capacity(n);
    for _ in 0..n {
        c.push(field.element(idx % q).expect("finite field"));
        idx /= q;
    }
    Poly::from_coeffs(field, c)
}

/// Equal-degree splitting of a monic square-free product of degree-d irreducibles.
fn edf<K: Scalar>(f: &Poly<K>, d: usize, q: u64, out: &mut Vec<Poly<K>>) {
    let n = f.degree().unwrap();
    if n == d {
        out.push(f.clone());
        return;
    }
    let field = f.field().clone();
    let p = field.characteristic();
    let mut idx = q;
    loop {
        let a = candidate::<K>(&field, idx, n, q);
        idx += 1;
        if a.deg() < 1 {
            continue;
        }
        let b = if p == 2 {
            let k = (q as f64).log2().round() as usize;
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..k * d {
                t = (&t * &t).rem(f);
                acc = &acc + &t;
            }
            acc
        } else {
            let e = ((q as u128).pow(d as u32) - 1) / 2;
            &a.pow_mod(e, f) - &Poly::one(&field)
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n as i64 {
            let h = f.exact_div(&g).unwrap();
            edf(&g, d, q, out);
            edf(&h.monic(), d, q, out);
            return;
        }
    }
}

/// Complete factorization over a finite field.
pub fn factor<K: Scalar>(f: &Poly<K>) -> Factorization<K> {
    let field = f.field().clone();
    let q = field.order().expect("factor() needs a finite field");
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let unit = f.lead();
    let mut map: BTreeMap<Poly<K>, usize> = BTreeMap::new();
    for (g, m) in squarefree_decomposition(&f.monic()) {
        for (h, d) in ddf(&g, q as u128) {
            let mut parts = Vec::new();
            edf(&h, d, q, &mut parts);
            for part in parts {
                *map.entry(part).or_insert(0) += m;
            }
        }
    }
    Factorization::from_map(unit, map)
}

/// Factorization over Q, complete when every non-linear square-free part
/// has degree at most 3 after removing rational roots.
pub fn factor_rational(f: &Poly<Rat>) -> Result<Factorization<Rat>> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let field = *f.field();
    let unit = f.lead();
    let mut map: BTreeMap<Poly<Rat>, usize> = BTreeMap::new();
    for (g, m) in squarefree_decomposition(&f.monic()) {
        let roots = field
            .roots(&g)
            .ok_or_else(|| Error::Unsupported("coefficients too large for the rational root test".into()))?;
        let mut rest = g.clone();
        for (r, _) in roots {
            let lin = Poly::linear_root(&r);
            rest = rest.exact_div(&lin).unwrap();
            *map.entry(lin).or_insert(0) += m;
        }
        match rest.deg() {
            0 => {}
            1..=3 => *map.entry(rest.monic()).or_insert(0) += m,
            d => {
                return Err(Error::Unsupported(format!(
                    "factorization over Q of a degree-{} part without rational roots",
                    d
                )))
            }
        }
    }
    Ok(Factorization::from_map(unit, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finite::{FieldElem, Gf};

    fn fp(f: &Gf, c: &[u32]) -> Poly<FieldElem> {
        Poly::from_coeffs(f, c.iter().map(|&v| f.elem(v)).collect())
    }

    #[test]
    fn factor_over_f4_examples() {
        let f4 = Gf::new(2, 2).unwrap();
        let a = f4.alpha().unwrap();
        let a2 = a.clone() * &a;
        let o = f4.one();
        let z = f4.zero();
        // α s^3 + s + 1
        let f = Poly::from_coeffs(&f4, vec![o.clone(), o.clone(), z.clone(), a.clone()]);
        let fac = factor(&f);
        assert_eq!(fac.unit, a);
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.factors[0].0, Poly::from_coeffs(&f4, vec![a2.clone(), o.clone()]));
        assert_eq!(fac.factors[1].0, Poly::from_coeffs(&f4, vec![o.clone(), a2.clone(), o.clone()]));
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn squarefree_in_char_p() {
        let f2 = Gf::new(2, 1).unwrap();
        // (x+1)^2 x^3 = x^5 + x^3
        let f = fp(&f2, &[0, 0, 0, 1, 0, 1]);
        let fac = factor(&f);
        assert_eq!(fac.factors, vec![(fp(&f2, &[0, 1]), 3), (fp(&f2, &[1, 1]), 2)]);
    }

    #[test]
    fn rational_factorization() {
        let q = crate::algebra::rational::Rationals;
        // s^3 + 1 = (s+1)(s^2-s+1)
        let f = Poly::from_ints(&q, &[1, 0, 0, 1]);
        let fac = factor_rational(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(), f);
    }
}
