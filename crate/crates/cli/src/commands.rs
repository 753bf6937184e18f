//! The subcommands, each producing a text and a JSON rendering.

use k3_arith::algebra::{primes_up_to, FieldElem, Gf, IntPoly, Poly, Rat, RatFunc, Scalar};
use k3_arith::fixtures::{x2_section, x_mod2, x_surface, x_torsion_section, x_twist};
use k3_arith::hecke::{ap_twisted, Character, CubicBranch};
use k3_arith::lattices::{artin_sigma, fmt_rat, BinaryForm};
use k3_arith::mordell_weil::{component_orbits, invariant_rank, Complement, EllipticSurface, NsBasis, NsDiscriminant, NsFrame, Section};
use k3_arith::surfaces::count::count_surface;
use k3_arith::surfaces::{Configuration, Kodaira, TraceContext};
use k3_arith::zeta::{base_change, display_factored, p2_factor_for, p2_from_configuration, proposition_rho, tate_check, zeta_bad_3, zeta_global_display, TateReport, ZetaLocal};
use k3_arith::Error;
use serde_json::{json, Value};

use crate::surface::{self, FieldArg};
use crate::{CliError, Report};

type Result<T> = std::result::Result<T, CliError>;

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{}{}", c, " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(header.iter().map(|h| h.to_string()).collect())];
    out.extend(rows.iter().map(|r| line(r.clone())));
    out.join("\n")
}

fn is_bad(e: &Error) -> bool {
    matches!(e, Error::BadReduction { .. } | Error::BadPrime { .. })
}

fn cube_free(d: i64) -> Result<()> {
    if d < 1 || k3_arith::algebra::primes::factor_u64(d as u64).iter().any(|&(_, e)| e >= 3) {
        return Err(CliError::Usage(format!("--d must be a positive cube-free integer, got {}", d)));
    }
    Ok(())
}

fn character(d: i64) -> Character {
    if d == 1 {
        Character::untwisted()
    } else {
        Character::cubic(d, CubicBranch::First)
    }
}

pub fn count(surface: &str, field: &str, resolve: bool) -> Result<Report> {
    let s = surface::load(surface)?;
    let f = FieldArg::parse(field)?;
    let c = if s.is_rational() && !resolve {
        TraceContext::new(&s.model_q()?)?.count(&f.field)?
    } else {
        count_surface(&s.model_over(&f)?)?
    };
    let rows: Vec<Vec<String>> = c
        .corrections
        .iter()
        .map(|k| vec![k.place.clone(), k.kodaira.clone(), k.fixed_components.to_string(), format!("+{}", k.points)])
        .collect();
    let mut text = format!("surface  {}\nfield    {}\nWeierstrass model  {} (zero section {})\n", s.name, f.name(), c.weierstrass, c.zero_section);
    if !rows.is_empty() {
        text += &table(&["place", "fiber", "fixed components", "points"], &rows);
        text.push('\n');
    }
    text += &format!("total  {}", c.total);
    let mut json = serde_json::to_value(&c).expect("serializable");
    json["surface"] = json!(s.name);
    json["field"] = json!(f.name());
    Ok(Report::new(text, json))
}

pub fn traces(surface: &str, bound: u64) -> Result<Report> {
    let s = surface::load(surface)?;
    let ctx = TraceContext::new(&s.model_q()?)?;
    let mut rows = Vec::new();
    let mut out = Vec::new();
    let mut notes = Vec::new();
    for p in primes_up_to(bound) {
        match ctx.frobenius_trace(p) {
            Ok(t) => {
                rows.push(vec![p.to_string(), t.to_string()]);
                out.push(json!({ "p": p, "trace": t }));
            }
            Err(e) if is_bad(&e) => {
                rows.push(vec![p.to_string(), "bad".into()]);
                notes.push(e.to_string());
                out.push(json!({ "p": p, "trace": null, "bad": e.to_string() }));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let mut text = table(&["p", "trace"], &rows);
    for n in notes {
        text += &format!("\n{}", n);
    }
    Ok(Report::new(text, json!({ "surface": s.name, "traces": out })))
}

pub fn newform(bound: u64, d: i64) -> Result<Report> {
    cube_free(d)?;
    let ch = character(d);
    let mut rows = Vec::new();
    let mut out = Vec::new();
    for (p, a) in ch.coefficient_table(bound) {
        let e = ch.euler_factor(p)?;
        rows.push(vec![p.to_string(), a.to_string(), e.to_string()]);
        out.push(json!({ "p": p, "a_p": a, "euler_factor": e.to_string() }));
    }
    Ok(Report::new(table(&["p", "a_p", "Euler factor"], &rows), json!({ "d": d, "coefficients": out })))
}

pub fn twist(d: i64, bound: u64) -> Result<Report> {
    cube_free(d)?;
    let ctx = TraceContext::new(&x_twist(d))?;
    let mut rows = Vec::new();
    let mut out = Vec::new();
    let mut mismatches = Vec::new();
    let mut good = 0;
    for p in primes_up_to(bound) {
        let counted = match ctx.frobenius_trace(p) {
            Ok(t) => t,
            Err(e) if is_bad(&e) => {
                rows.push(vec![p.to_string(), "bad".into(), String::new(), String::new(), String::new(), String::new()]);
                out.push(json!({ "p": p, "bad": true }));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let untwisted = ap_twisted(p, 1, 1, CubicBranch::First)?;
        let first = ap_twisted(p, d, 1, CubicBranch::First)?;
        let second = ap_twisted(p, d, 1, CubicBranch::Second)?;
        let matching: Vec<&str> = [("untwisted", untwisted), ("first", first), ("second", second)].iter().filter(|(_, v)| *v == counted).map(|(n, _)| *n).collect();
        good += 1;
        if counted != first {
            mismatches.push(p);
        }
        rows.push(vec![p.to_string(), counted.to_string(), first.to_string(), second.to_string(), untwisted.to_string(), matching.join(", ")]);
        out.push(json!({ "p": p, "counted": counted, "first": first, "second": second, "untwisted": untwisted, "matching": matching }));
    }
    let summary = if mismatches.is_empty() {
        format!("the first branch matches the count at all {} good primes", good)
    } else {
        format!("the first branch differs from the count at {:?}", mismatches)
    };
    let text = format!("{}\n{}", table(&["p", "counted", "first", "second", "untwisted", "matching"], &rows), summary);
    Ok(Report::new(text, json!({ "d": d, "rows": out, "first_branch_matches": mismatches.is_empty() })))
}

fn fiber_rows<K: k3_arith::algebra::Scalar>(c: &Configuration<K>) -> (Vec<Vec<String>>, Vec<Value>) {
    let mut rows = Vec::new();
    let mut out = Vec::new();
    for f in &c.fibers {
        let split = match f.split {
            Some(true) => "split",
            Some(false) => "non-split",
            None => "-",
        };
        rows.push(vec![
            f.place.to_string(),
            f.kodaira.to_string(),
            f.residue_degree.to_string(),
            f.disc_valuation.to_string(),
            split.into(),
            f.component_field_degree().to_string(),
            f.wild_excess().to_string(),
        ]);
        out.push(json!({
            "place": f.place.to_string(),
            "kodaira": f.kodaira.to_string(),
            "degree": f.residue_degree,
            "disc_valuation": f.disc_valuation,
            "split": f.split,
            "component_field_degree": f.component_field_degree(),
            "wild_excess": f.wild_excess(),
        }));
    }
    (rows, out)
}

fn configuration_report<K: k3_arith::algebra::Scalar>(name: &str, over: &str, c: &Configuration<K>) -> Report {
    let (rows, out) = fiber_rows(c);
    let header = ["place", "fiber", "degree", "v(Δ)", "split", "component field", "wild"];
    let roots: Vec<String> = c.root_types().iter().map(|t| t.to_string()).collect();
    let text = format!(
        "{} over {}\n{}\ntrivial lattice: U ⊕ {} of rank {}, discriminant {}\nEuler numbers sum to {}, wild excess {}",
        name,
        over,
        table(&header, &rows),
        roots.join(" ⊕ "),
        c.trivial_rank(),
        c.trivial_discriminant(),
        c.euler_sum(),
        c.wild_excess()
    );
    let json = json!({
        "surface": name,
        "over": over,
        "fibers": out,
        "trivial_rank": c.trivial_rank(),
        "trivial_discriminant": c.trivial_discriminant().to_string(),
        "euler_sum": c.euler_sum(),
        "wild_excess": c.wild_excess(),
    });
    Report::new(text, json)
}

pub fn fibers(surface: &str, field: Option<&str>) -> Result<Report> {
    let s = surface::load(surface)?;
    match (field, s.base_field()) {
        (None, None) => Ok(configuration_report(&s.name, "Q", &Configuration::compute(&s.model_q()?)?)),
        (Some(f), _) => {
            let f = FieldArg::parse(f)?;
            Ok(configuration_report(&s.name, &f.name(), &Configuration::compute(&s.model_over(&f)?)?))
        }
        (None, Some(f)) => Ok(configuration_report(&s.name, &f.name(), &Configuration::compute(&s.model_over(&f)?)?)),
    }
}

pub fn f4() -> Gf {
    Gf::new(2, 2).expect("F_4")
}

/// X/2 over F_4.
pub fn x2_surface() -> Result<EllipticSurface<FieldElem>> {
    Ok(EllipticSurface::new(x_mod2(&f4()))?)
}

/// A section of X/F_4 from the table, or T = (s, 0) of order 4.
pub fn x2_named(name: &str) -> Result<Section<FieldElem>> {
    if name == "T" {
        let f = f4();
        return Ok(Section::new(RatFunc::from_poly(Poly::from_ints(&f, &[0, 1])), RatFunc::zero(&f)));
    }
    let (x, y) = x2_section(name).map_err(|_| CliError::Usage(format!("unknown section '{}' (Q, R, S1, S2, S3, their negatives -Q, ..., or T)", name)))?;
    Ok(Section::new(x, y))
}

/// X over Q with its 4-torsion section (−s, 0).
pub fn x_with_torsion() -> Result<(EllipticSurface<Rat>, Section<Rat>)> {
    let (x, y) = x_torsion_section();
    Ok((EllipticSurface::new(x_surface())?, Section::new(x, y)))
}

/// X over F_3 with the reduction of (−s, 0).
pub fn x3_with_torsion() -> Result<(EllipticSurface<FieldElem>, Section<FieldElem>)> {
    let f = Gf::new(3, 1)?;
    let s = EllipticSurface::new(x_surface().reduce_mod(&f)?)?;
    let t = Section::new(RatFunc::from_poly(Poly::from_ints(&f, &[0, -1])), RatFunc::zero(&f));
    Ok((s, t))
}

/// Néron-Severi of X/F̄_2 from Q, R and T, with the complement of NS(X/Q).
pub fn ns_char2() -> Result<(NsDiscriminant, Complement, NsFrame<FieldElem>)> {
    let s = x2_surface()?;
    let frame = NsFrame::new(&s, &[x2_named("Q")?, x2_named("R")?], &[x2_named("T")?])?;
    let d = frame.discriminant(&s)?;
    let mut sub = frame.trivial_generators(None);
    sub.extend(frame.torsion_classes(&s)?);
    let old: Vec<NsBasis> = frame.basis.iter().filter(|b| !matches!(b, NsBasis::Section(_))).cloned().collect();
    let c = frame.complement(&s, &sub, &old)?;
    Ok((d, c, frame))
}

/// Néron-Severi of X/F̄_3 with the complement of NS(X/Q), spanned by the new I_3 components.
pub fn ns_char3() -> Result<(NsDiscriminant, Complement)> {
    let (s, t) = x3_with_torsion()?;
    let frame = NsFrame::new(&s, &[], &[t])?;
    let d = frame.discriminant(&s)?;
    let old_fibers: Vec<usize> = (0..frame.hits.kodaira.len()).filter(|&f| frame.hits.kodaira[f] != Kodaira::I(3)).collect();
    let mut sub = frame.trivial_generators(Some(&old_fibers));
    sub.extend(frame.torsion_classes(&s)?);
    let old: Vec<NsBasis> = frame
        .basis
        .iter()
        .filter(|b| match b {
            NsBasis::Component { fiber, .. } => old_fibers.contains(fiber),
            _ => true,
        })
        .cloned()
        .collect();
    Ok((d, frame.complement(&s, &sub, &old)?))
}

/// The transcendental lattice of X: the even positive binary lattice of discriminant 3.
pub fn t_x() -> BinaryForm {
    BinaryForm::new(2, 1, 2)
}

pub fn lattice(field: Option<&str>) -> Result<Report> {
    let p = match field {
        None => 0,
        Some(f) => FieldArg::parse(f)?.p,
    };
    match p {
        0 => {
            let (x, t) = x_with_torsion()?;
            let roots: Vec<String> = x.config.root_types().iter().map(|r| r.to_string()).collect();
            let d = NsFrame::new(&x, &[], &[t])?.discriminant(&x)?;
            let tx = t_x();
            let text = format!(
                "V = U ⊕ {}: discriminant {}\nMW(X) of order {}\nNS(X): rank {}, discriminant {} (from V: {})\nT_X = {}: discriminant {}",
                roots.join(" ⊕ "),
                x.config.trivial_discriminant(),
                d.torsion_order,
                d.rank,
                fmt_rat(&d.by_gram),
                fmt_rat(&d.by_formula),
                tx,
                tx.det()
            );
            let json = json!({
                "trivial_lattice": roots,
                "trivial_discriminant": x.config.trivial_discriminant().to_string(),
                "mw_order": d.torsion_order,
                "ns": d,
                "transcendental": tx.to_string(),
                "transcendental_discriminant": tx.det().to_string(),
            });
            Ok(Report::new(text, json))
        }
        2 | 3 => {
            let (d, c) = if p == 2 {
                let (d, c, _) = ns_char2()?;
                (d, c)
            } else {
                ns_char3()?
            };
            let form = c.binary_form().ok_or_else(|| CliError::Usage("complement is not a binary lattice".into()))?;
            let m = t_x().similar(&form);
            let sigma = artin_sigma(&d.by_gram.to_integer(), p);
            let m_text = m.as_ref().map(fmt_rat).unwrap_or_else(|| "none".into());
            let sigma_text = sigma.map(|s| s.to_string()).unwrap_or_else(|| "none".into());
            let text = format!(
                "NS(X/F̄_{}): rank {}, discriminant {} (from heights: {})\nArtin invariant σ₀ = {}\nT_{} = {} along {}\nT_{} ≅ T_X(−m) with m = {}",
                p,
                d.rank,
                fmt_rat(&d.by_gram),
                fmt_rat(&d.by_formula),
                sigma_text,
                p,
                form,
                c.directions.join(", "),
                p,
                m_text
            );
            let json = json!({
                "p": p,
                "ns": d,
                "artin_sigma": sigma,
                "complement": form.to_string(),
                "directions": c.directions,
                "similarity": m.as_ref().map(fmt_rat),
            });
            Ok(Report::new(text, json))
        }
        _ => Err(CliError::Usage("lattice computations are available over Q and in characteristics 2 and 3".into())),
    }
}

pub fn height(names: &[String]) -> Result<Report> {
    let names: Vec<String> = if names.is_empty() { vec!["Q".into(), "R".into()] } else { names.to_vec() };
    let s = x2_surface()?;
    let secs: Vec<Section<FieldElem>> = names.iter().map(|n| x2_named(n)).collect::<Result<_>>()?;
    let mut lines = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..secs.len() {
        for j in i..secs.len() {
            let b = s.height_pairing(&secs[i], &secs[j])?;
            lines.push(format!("⟨{},{}⟩ = {}", names[i], names[j], b));
            pairs.push(json!({ "p": names[i], "q": names[j], "breakdown": b.expression(), "value": fmt_rat(&b.value), "route": b.route }));
        }
    }
    let g = s.height_gram(&secs)?;
    let text = format!("{}\nGram {}\ndeterminant {}", lines.join("\n"), g, fmt_rat(&g.det()));
    Ok(Report::new(text, json!({ "sections": names, "pairs": pairs, "gram": g.to_string(), "determinant": fmt_rat(&g.det()) })))
}

/// P₂ of X (or X^(d)) over F_q; at 3 from the fibers of the smooth reduction.
pub fn p2_of(f: &FieldArg, d: i64) -> Result<IntPoly> {
    if f.p == 3 {
        if d != 1 {
            return Err(CliError::Usage("the twisted surfaces have bad reduction at 3".into()));
        }
        let c = Configuration::compute(&x_surface().reduce_mod(&f.field)?)?;
        return Ok(p2_from_configuration(&c, f.q(), None)?);
    }
    Ok(base_change(&p2_factor_for(&character(d), f.p)?, f.r))
}

pub fn zeta(field: Option<&str>, d: i64, bound: u64) -> Result<Report> {
    cube_free(d)?;
    let Some(field) = field else {
        let g = zeta_global_display(d, bound)?;
        return Ok(Report::new(g.to_string().trim_end().to_string(), serde_json::to_value(&g).expect("serializable")));
    };
    let f = FieldArg::parse(field)?;
    let q = f.q();
    let p2 = p2_of(&f, d)?;
    let z = ZetaLocal::k3(q, p2.clone());
    let counts: Vec<String> = z.counts(3).iter().map(|c| c.to_string()).collect();
    let mut text = format!(
        "{}\nP2 = {}\n#X(F_{{{}^k}}) for k = 1, 2, 3: {}",
        z,
        display_factored(&p2, q),
        q,
        counts.join(", ")
    );
    let mut json = json!({
        "q": q,
        "d": d,
        "zeta": z.to_string(),
        "P2": display_factored(&p2, q),
        "P2_coefficients": p2.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "counts": counts,
    });
    if f.p == 3 && f.r == 1 {
        let b = zeta_bad_3();
        let bc: Vec<String> = b.counts(3).iter().map(|c| c.to_string()).collect();
        text += &format!("\nsingular reduction X_3: {}\n#X_3(F_{{3^k}}) for k = 1, 2, 3: {}", b, bc.join(", "));
        json["singular_model"] = json!({ "zeta": b.to_string(), "counts": bc });
    }
    Ok(Report::new(text, json))
}

/// ρ from the lattice generated by known divisors, where that lattice is all of NS.
pub fn lattice_rho(f: &FieldArg) -> Result<Option<u32>> {
    let orbits = |c: &Configuration<FieldElem>| c.reducible().map(|fb| component_orbits(fb.kodaira, &fb.frobenius)).sum::<u32>();
    if f.p == 2 {
        let s4 = x2_surface()?;
        let c = Configuration::compute(&x_mod2(&f.field))?;
        let free = vec![x2_named("Q")?, x2_named("R")?];
        let rho = if f.r % 2 == 1 {
            invariant_rank(&s4, &free, orbits(&c), |s| s.map_coeffs(|a| a.pow(2)))?
        } else {
            invariant_rank(&s4, &free, orbits(&c), |s| s.clone())?
        };
        return Ok(Some(rho));
    }
    if f.p == 3 || f.p % 3 == 1 {
        let s = EllipticSurface::new(x_surface().reduce_mod(&f.field)?)?;
        return Ok(Some(invariant_rank(&s, &[], orbits(&s.config), |x| x.clone())?));
    }
    Ok(None)
}

/// P₂ over F_q and the comparison of its order of zero with ρ.
pub fn tate_report(f: &FieldArg) -> Result<(IntPoly, TateReport)> {
    let q = f.q();
    let p2 = p2_of(f, 1)?;
    let mut rep = tate_check(q, &p2, proposition_rho(q)?);
    rep.rho_sources[0].source = "proposition".into();
    if let Some(rho) = lattice_rho(f)? {
        rep = rep.with_source("lattice", rho);
    }
    Ok((p2, rep))
}

pub fn tate(field: &str) -> Result<Report> {
    let f = FieldArg::parse(field)?;
    let q = f.q();
    let (p2, rep) = tate_report(&f)?;
    let text = format!("P2 = {}\n{}", display_factored(&p2, q), rep);
    let mut json = serde_json::to_value(&rep).expect("serializable");
    json["P2"] = json!(display_factored(&p2, q));
    Ok(Report::new(text, json))
}
