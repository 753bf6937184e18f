use k3_arith::algebra::*;
use k3_arith::fixtures::*;
use k3_arith::hecke::Character;
use k3_arith::mordell_weil::*;
use k3_arith::surfaces::*;
use k3_arith::zeta::*;
use num_bigint::BigInt;

fn orbits(c: &Configuration<FieldElem>) -> u32 {
    c.reducible().map(|f| component_orbits(f.kodaira, &f.frobenius)).sum()
}

fn x2_free() -> Vec<Section<FieldElem>> {
    ["Q", "R"]
        .iter()
        .map(|n| {
            let (a, b) = x2_section(n).unwrap();
            Section::new(a, b)
        })
        .collect()
}

#[test]
fn counts_from_the_zeta_function() {
    let ctx = TraceContext::new(&x_surface()).unwrap();
    for p in primes_up_to(37) {
        if p == 3 {
            continue;
        }
        let z = ZetaLocal::k3(p, p2_factor(p).unwrap());
        for r in 1..=2u32 {
            let n = ctx.count(&Gf::new(p, r).unwrap()).unwrap().total;
            assert_eq!(z.count(r as usize), BigInt::from(n), "p = {}, r = {}", p, r);
        }
    }
}

#[test]
fn zeta_at_three() {
    let f3 = Gf::new(3, 1).unwrap();
    let c3 = Configuration::compute(&x_surface().reduce_mod(&f3).unwrap()).unwrap();
    let p2 = p2_from_configuration(&c3, 3, None).unwrap();
    assert_eq!(display_factored(&p2, 3), "(1 − 3T)^21(1 + 3T)");
    let z = ZetaLocal::k3(3, p2);
    for r in 1..=3u32 {
        let f = Gf::new(3, r).unwrap();
        let n = count::count_surface(&x_surface().reduce_mod(&f).unwrap()).unwrap().total;
        assert_eq!(z.count(r as usize), BigInt::from(n));
        let singular = count::count_singular_model(&x_surface(), &f).unwrap().total;
        assert_eq!(zeta_bad_3().count(r as usize), BigInt::from(singular));
    }
    assert_eq!(zeta_bad_3().to_string(), "ζ_3(T) = 1 / ((1 − T)(1 − 3T)^20(1 − 9T))");
}

#[test]
fn tate_checks() {
    let f2 = Gf::new(2, 1).unwrap();
    let f4 = Gf::new(2, 2).unwrap();
    let s4 = EllipticSurface::new(x_mod2(&f4)).unwrap();
    let c2 = Configuration::compute(&x_mod2(&f2)).unwrap();
    let free = x2_free();
    let rho2 = invariant_rank(&s4, &free, orbits(&c2), |s| s.map_coeffs(|a| a.pow(2))).unwrap();
    let rho4 = invariant_rank(&s4, &free, orbits(&s4.config), |s| s.clone()).unwrap();
    let mut cases = vec![(2u64, p2_factor(2).unwrap(), rho2), (4, p2_factor_over(2, 2).unwrap(), rho4)];
    for (p, r) in [(7u64, 1u32), (13, 1), (3, 1), (3, 2)] {
        let f = Gf::new(p, r).unwrap();
        let s = EllipticSurface::new(x_surface().reduce_mod(&f).unwrap()).unwrap();
        let q = f.q() as u64;
        let tr = (p != 3).then(|| base_change(&Character::untwisted().euler_factor(p).unwrap(), r));
        let p2 = p2_from_configuration(&s.config, q, tr.as_ref()).unwrap();
        if p != 3 {
            assert_eq!(p2, p2_factor_over(p, r).unwrap());
        }
        let rho = invariant_rank(&s, &[], orbits(&s.config), |x| x.clone()).unwrap();
        cases.push((q, p2, rho));
    }
    let u: Vec<usize> = cases
        .iter()
        .map(|(q, p2, rho)| {
            let rep = tate_check(*q, p2, *rho).with_source("proposition", proposition_rho(*q).unwrap());
            assert_eq!(rep.verdict, Verdict::Ok, "{}", rep);
            rep.u
        })
        .collect();
    assert_eq!(u, vec![21, 22, 20, 20, 21, 22]);
    let p25 = p2_factor_over(5, 2).unwrap();
    assert_eq!(order_of_zero(&p25, 25), 22);
    assert_eq!(proposition_rho(25).unwrap(), 22);
    assert_eq!(tate_check(7, &p2_factor(7).unwrap(), 21).verdict, Verdict::Mismatch);
}

#[test]
fn functional_equations() {
    for p in [2u64, 5, 7, 11, 13] {
        for r in 1..=2 {
            let q = p.pow(r);
            let e = functional_equation_sign(&p2_factor_over(p, r).unwrap(), q);
            assert!(e.is_some(), "q = {}", q);
        }
    }
}

#[test]
fn eigenvalues_from_counts() {
    let expect = [(2u64, 0i64, -4i64), (3, 0, -9), (5, 0, -25), (7, -13, 49)];
    for (q, t, d) in expect {
        let count = |r: u32| {
            let f = Gf::new(q, r).unwrap();
            count::count_surface(&x_surface().reduce_mod(&f).unwrap()).unwrap().total
        };
        let got = eigenvalue_consistency_from_counts(q, count(1), count(2)).unwrap();
        assert_eq!(got, (BigInt::from(t), BigInt::from(d)), "q = {}", q);
    }
    assert!(eigenvalue_consistency_from_counts(7, 177, 0).is_err());
}

#[test]
fn global_display() {
    let g = zeta_global_display(3, 20).unwrap();
    let at7 = g.euler.iter().find(|e| e.p == 7).unwrap();
    assert_eq!(at7.factor.as_deref(), Some("1 − 11T + 49T^2"));
    assert!(g.euler.iter().find(|e| e.p == 3).unwrap().bad);
    assert!(zeta_global_display(8, 20).is_err());
    let u = zeta_global_display(1, 20).unwrap();
    assert_eq!(u.euler.iter().find(|e| e.p == 7).unwrap().factor.as_deref(), Some("1 + 13T + 49T^2"));
}
