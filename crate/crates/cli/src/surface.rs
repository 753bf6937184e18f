//! Built-in surfaces and surface files.

use std::path::Path;

use k3_arith::algebra::{FieldElem, Gf, Rat};
use k3_arith::surfaces::parse::{parse_field_spec, Base, SurfaceSpec};
use k3_arith::surfaces::Weierstrass;

use crate::CliError;

/// Name and file contents of each built-in surface.
pub const BUILTINS: [(&str, &str); 7] = [
    ("y-prime", include_str!("../fixtures/y-prime.surface")),
    ("y", include_str!("../fixtures/y.surface")),
    ("x", include_str!("../fixtures/x.surface")),
    ("x-mod-2", include_str!("../fixtures/x-mod-2.surface")),
    ("x-twist-2", include_str!("../fixtures/x-twist-2.surface")),
    ("x-twist-3", include_str!("../fixtures/x-twist-3.surface")),
    ("triple-iv-star", include_str!("../fixtures/triple-iv-star.surface")),
];

/// A parsed surface with the name it was loaded under.
#[derive(Clone, Debug)]
pub struct Surface {
    pub name: String,
    pub spec: SurfaceSpec,
}

/// A field given on the command line as `p^r`.
#[derive(Clone, Debug)]
pub struct FieldArg {
    pub p: u64,
    pub r: u32,
    pub field: Gf,
}

impl FieldArg {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let (p, r) = parse_field_spec(s).map_err(|_| CliError::Usage(format!("invalid field '{}': expected p^r with p prime and r ≥ 1", s)))?;
        Ok(FieldArg { p, r, field: Gf::new(p, r)? })
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.r)
    }

    pub fn name(&self) -> String {
        format!("F_{}", self.q())
    }
}

/// Load a built-in surface by name, or a surface file by path.
pub fn load(name: &str) -> Result<Surface, CliError> {
    if let Some((n, text)) = BUILTINS.iter().find(|(n, _)| *n == name) {
        return Ok(Surface { name: n.to_string(), spec: SurfaceSpec::parse(text)? });
    }
    let path = Path::new(name);
    if !path.exists() {
        let names: Vec<&str> = BUILTINS.iter().map(|(n, _)| *n).collect();
        return Err(CliError::Usage(format!("no built-in surface or file '{}' (built-ins: {})", name, names.join(", "))));
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {}", name, e)))?;
    Ok(Surface { name: name.to_string(), spec: SurfaceSpec::parse(&text)? })
}

impl Surface {
    pub fn is_rational(&self) -> bool {
        self.spec.base == Base::Rationals
    }

    pub fn model_q(&self) -> Result<Weierstrass<Rat>, CliError> {
        if !self.is_rational() {
            return Err(CliError::Usage(format!("{} is defined over {}, not over Q", self.name, self.spec.base)));
        }
        Ok(self.spec.model_q()?)
    }

    /// The model over a finite field: the reduction of a model over Q, or a
    /// model over a subfield read in the larger field.
    pub fn model_over(&self, f: &FieldArg) -> Result<Weierstrass<FieldElem>, CliError> {
        match self.spec.base {
            Base::Rationals => Ok(self.spec.model_q()?.reduce_mod(&f.field)?),
            Base::Finite { p, r } => {
                if p != f.p || !f.r.is_multiple_of(r) {
                    return Err(CliError::Usage(format!("{} is defined over F_{}, which is not a subfield of {}", self.name, p.pow(r), f.name())));
                }
                Ok(self.spec.model_over(&f.field)?)
            }
        }
    }

    /// The base field of a surface over a finite field.
    pub fn base_field(&self) -> Option<FieldArg> {
        match self.spec.base {
            Base::Rationals => None,
            Base::Finite { p, r } => Some(FieldArg { p, r, field: Gf::new(p, r).ok()? }),
        }
    }
}
