//! Built-in models and sections.

use crate::algebra::finite::{FieldElem, Gf};
use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::rational::{Rat, Rationals};
use crate::error::Result;
use crate::surfaces::model::Weierstrass;
use crate::surfaces::parse::{parse_sections, SectionSpec};

fn q(c: &[i64]) -> Poly<Rat> {
    Poly::from_ints(&Rationals, c)
}

/// y² = x³ - 3(s-2)²(s²-3)x + s(s-2)³(2s²-9).
pub fn y_prime() -> Weierstrass<Rat> {
    let s2 = q(&[-2, 1]);
    let a4 = &(&q(&[-3]) * &s2.pow(2)) * &q(&[-3, 0, 1]);
    let a6 = &(&q(&[0, 1]) * &s2.pow(3)) * &q(&[-9, 0, 2]);
    Weierstrass::new([q(&[]), q(&[]), q(&[]), a4, a6], 2).unwrap()
}

/// y² + sxy = x³ + 2sx² + s²x.
pub fn y_surface() -> Weierstrass<Rat> {
    Weierstrass::new([q(&[0, 1]), q(&[0, 2]), q(&[]), q(&[0, 0, 1]), q(&[])], 1).unwrap()
}

/// y² + s²xy = x³ + 2sx² + s²x, the surface X.
pub fn x_surface() -> Weierstrass<Rat> {
    x_twist(1)
}

/// y² + d²s²xy = x³ + 2sx² + s²x.
pub fn x_twist(d: i64) -> Weierstrass<Rat> {
    Weierstrass::new([q(&[0, 0, d * d]), q(&[0, 2]), q(&[]), q(&[0, 0, 1]), q(&[])], 2).unwrap()
}

/// y² + s²xy = x³ + s²x, the reduction of X at 2.
pub fn x_mod2(field: &Gf) -> Weierstrass<FieldElem> {
    let p = |c: &[i64]| Poly::from_ints(field, c);
    Weierstrass::new([p(&[0, 0, 1]), p(&[]), p(&[]), p(&[0, 0, 1]), p(&[])], 2).unwrap()
}

/// y² + d²s²t²(s+t)² y = x³ in the affine chart s = 1 (variable t written as s).
pub fn triple_iv_star(d: i64) -> Weierstrass<Rat> {
    // s²(1+s)² with coefficient d²
    let a3 = &q(&[0, 0, d * d]) * &q(&[1, 1]).pow(2);
    Weierstrass::new([q(&[]), q(&[]), a3, q(&[]), q(&[])], 2).unwrap()
}

/// The section (-s, 0) of X, of order 4.
pub fn x_torsion_section() -> (RatFunc<Rat>, RatFunc<Rat>) {
    (RatFunc::from_poly(q(&[0, -1])), RatFunc::from_poly(q(&[])))
}

/// Sections of X/2 over F_4 and their inverses.
pub const X2_SECTIONS: &str = "\
Q: x = 1, y = 1
-Q: x = 1, y = 1 + s^2
S1: x = s^2, y = s^2
-S1: x = s^2, y = s^2 + s^4
S2: x = s + s^3, y = s^3 + s^4
-S2: x = s + s^3, y = s^4 + s^5
R: x = s + αs^3, y = α^2 s^4 + αs^5
-R: x = s + αs^3, y = s^3 + α^2 s^4
S3: x = 1 + s^4, y = 1 + αs^2 + α^2 s^6
-S3: x = 1 + s^4, y = 1 + α^2 s^2 + αs^6
";

pub fn x2_section_specs() -> Vec<SectionSpec> {
    parse_sections(X2_SECTIONS).expect("built-in section table parses")
}

/// A section of X/2 over F_4 by name.
pub fn x2_section(name: &str) -> Result<(RatFunc<FieldElem>, RatFunc<FieldElem>)> {
    let f4 = Gf::new(2, 2)?;
    let spec = x2_section_specs()
        .into_iter()
        .find(|s| s.name.as_deref() == Some(name))
        .ok_or_else(|| crate::error::Error::Invalid(format!("unknown section {}", name)))?;
    spec.coords(&f4, f4.alpha().as_ref())
}
