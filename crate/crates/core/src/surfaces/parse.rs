//! Surface files (`a1 = ...`, `base = Q | F<p>^<r>`, `chi = ...`) and section files
//! (`[name:] x = <ratfunc>, y = <ratfunc>` per line).

use std::fmt;

use super::model::Weierstrass;
use crate::algebra::expr::{parse_expr, Expr};
use crate::algebra::finite::{FieldElem, Gf};
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::rational::{Rat, Rationals};
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Rationals,
    Finite { p: u64, r: u32 },
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Rationals => write!(f, "Q"),
            Base::Finite { p, r } => write!(f, "F{}^{}", p, r),
        }
    }
}

/// Parse `p^r`, `F<p>^<r>`, `F<q>` or a plain prime power.
pub fn parse_field_spec(s: &str) -> Result<(u64, u32)> {
    let t = s.trim().trim_start_matches(['F', 'f']).trim_start_matches('_');
    let bad = || Error::Parse { line: 0, msg: format!("invalid field '{}'", s) };
    if let Some((p, r)) = t.split_once('^') {
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let r: u32 = r.trim().parse().map_err(|_| bad())?;
        Gf::new(p, r).map_err(|_| bad())?;
        Ok((p, r))
    } else {
        let q: u64 = t.parse().map_err(|_| bad())?;
        let f = Gf::with_order(q)?;
        Ok((f.p() as u64, f.r()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub coeffs: [Expr; 5],
    pub base: Base,
    pub chi: Option<u32>,
}

const KEYS: [&str; 5] = ["a1", "a2", "a3", "a4", "a6"];

impl SurfaceSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut coeffs: [Option<Expr>; 5] = Default::default();
        let mut base = Base::Rationals;
        let mut chi = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(Error::Parse { line: line_no, msg: "expected 'key = value'".into() })?;
            let (k, v) = (k.trim(), v.trim());
            if let Some(idx) = KEYS.iter().position(|&x| x == k) {
                let e = parse_expr(v).map_err(|msg| Error::Parse { line: line_no, msg })?;
                coeffs[idx] = Some(e);
            } else if k == "base" {
                base = if v == "Q" {
                    Base::Rationals
                } else {
                    let (p, r) = parse_field_spec(v).map_err(|_| Error::Parse { line: line_no, msg: format!("invalid base '{}'", v) })?;
                    Base::Finite { p, r }
                };
            } else if k == "chi" {
                chi = Some(v.parse().map_err(|_| Error::Parse { line: line_no, msg: format!("invalid chi '{}'", v) })?);
            } else {
                return Err(Error::Parse { line: line_no, msg: format!("unknown key '{}'", k) });
            }
        }
        let coeffs = coeffs.map(|c| c.unwrap_or(Expr::Int(0.into())));
        Ok(SurfaceSpec { coeffs, base, chi })
    }

    fn build<K: Scalar>(&self, field: &K::Field, alpha: Option<&K>) -> Result<Weierstrass<K>> {
        let mut polys = Vec::new();
        for (i, e) in self.coeffs.iter().enumerate() {
            let r = e.eval(field, alpha).map_err(|msg| Error::Parse { line: 0, msg: format!("{}: {}", KEYS[i], msg) })?;
            let p = r.as_poly().cloned().ok_or(Error::Parse { line: 0, msg: format!("{} is not a polynomial", KEYS[i]) })?;
            polys.push(p);
        }
        let a: [_; 5] = polys.try_into().unwrap();
        let chi = self.chi.unwrap_or_else(|| Weierstrass::minimal_chi(&a));
        Weierstrass::new(a, chi)
    }

    /// The model over Q; requires integer coefficients.
    pub fn model_q(&self) -> Result<Weierstrass<Rat>> {
        if self.coeffs.iter().any(|e| e.uses_alpha()) {
            return Err(Error::Parse { line: 0, msg: "α is not defined over Q".into() });
        }
        let m = self.build::<Rat>(&Rationals, None)?;
        if !m.has_integral_coeffs() {
            return Err(Error::Parse { line: 0, msg: "coefficients must be integral".into() });
        }
        Ok(m)
    }

    /// The model over F_q (reducing integer coefficients, α = field generator).
    pub fn model_over(&self, field: &Gf) -> Result<Weierstrass<FieldElem>> {
        let alpha = field.alpha();
        self.build::<FieldElem>(field, alpha.as_ref())
    }
}

/// A named section in affine coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSpec {
    pub name: Option<String>,
    pub x: Expr,
    pub y: Expr,
}

impl SectionSpec {
    pub fn coords<K: Scalar>(&self, field: &K::Field, alpha: Option<&K>) -> Result<(RatFunc<K>, RatFunc<K>)> {
        let x = self.x.eval(field, alpha).map_err(|msg| Error::Parse { line: 0, msg })?;
        let y = self.y.eval(field, alpha).map_err(|msg| Error::Parse { line: 0, msg })?;
        Ok((x, y))
    }
}

pub fn parse_sections(text: &str) -> Result<Vec<SectionSpec>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (name, body) = match line.split_once(':') {
            Some((n, b)) => (Some(n.trim().to_string()), b),
            None => (None, line),
        };
        let mut x = None;
        let mut y = None;
        for part in body.split(',') {
            let (k, v) = part.split_once('=').ok_or(Error::Parse { line: line_no, msg: "expected 'x = ..., y = ...'".into() })?;
            let e = parse_expr(v.trim()).map_err(|msg| Error::Parse { line: line_no, msg })?;
            match k.trim() {
                "x" => x = Some(e),
                "y" => y = Some(e),
                other => return Err(Error::Parse { line: line_no, msg: format!("unknown coordinate '{}'", other) }),
            }
        }
        match (x, y) {
            (Some(x), Some(y)) => out.push(SectionSpec { name, x, y }),
            _ => return Err(Error::Parse { line: line_no, msg: "both x and y are required".into() }),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_file_round_trip() {
        let s = SurfaceSpec::parse("# X\na1 = s^2\na2 = 2s\na4 = s^2\nbase = Q\nchi = 2\n").unwrap();
        let m = s.model_q().unwrap();
        assert_eq!(m.chi, 2);
        assert_eq!(m.a[1].to_string(), "2s");
        assert!(matches!(SurfaceSpec::parse("a5 = 1"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(SurfaceSpec::parse("a1 = s\n\na2 = s +"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn field_specs() {
        assert_eq!(parse_field_spec("2^2").unwrap(), (2, 2));
        assert_eq!(parse_field_spec("F3^1").unwrap(), (3, 1));
        assert_eq!(parse_field_spec("9").unwrap(), (3, 2));
        assert!(parse_field_spec("6").is_err());
    }

    #[test]
    fn section_lines() {
        let v = parse_sections("R: x = s + αs^3, y = α^2 s^4 + αs^5\nx = 1, y = 1").unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].name.as_deref(), Some("R"));
        let f4 = Gf::new(2, 2).unwrap();
        let (x, _) = v[0].coords::<FieldElem>(&f4, f4.alpha().as_ref()).unwrap();
        assert_eq!(x.to_string(), "αs^3 + s");
    }
}
