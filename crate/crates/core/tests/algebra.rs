use k3_arith::algebra::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn f4_poly(text: &str) -> Poly<FieldElem> {
    let f4 = Gf::new(2, 2).unwrap();
    k3_arith::algebra::expr::parse_poly(text, &f4, f4.alpha().as_ref(), 1).unwrap()
}

#[test]
fn small_fields_use_first_irreducible_modulus() {
    let f4 = Gf::new(2, 2).unwrap();
    assert_eq!(f4.modulus(), &[1, 1, 1]);
    let f9 = Gf::new(3, 2).unwrap();
    assert_eq!(f9.modulus(), &[1, 0, 1]);
    assert!(Gf::new(4, 1).is_err());
    assert!(Gf::with_order(12).is_err());
    let a = f4.alpha().unwrap();
    assert_eq!(a.pow(3), f4.one());
    assert_eq!(a.clone() * a.clone() + a + f4.one(), f4.zero());
}

#[test]
fn f4_factorizations() {
    let f = f4_poly("α s^3 + s + 1");
    let g = f4_poly("α s^5 + α^2 s^4 + 1");
    let ff = factor(&f);
    let fg = factor(&g);
    assert_eq!(ff.expand(), f);
    assert_eq!(fg.expand(), g);
    let degs = |fz: &Factorization<FieldElem>| fz.factors.iter().map(|(p, m)| (p.degree().unwrap(), *m)).collect::<Vec<_>>();
    assert_eq!(degs(&ff), vec![(1, 1), (2, 1)]);
    assert_eq!(degs(&fg), vec![(1, 1), (1, 1), (3, 1)]);
    assert!(ff.factors.contains(&(f4_poly("s + α^2"), 1)));
    assert!(fg.factors.contains(&(f4_poly("s + 1"), 1)));
    assert!(fg.factors.contains(&(f4_poly("s + α^2"), 1)));
    assert!(fg.factors.contains(&(f4_poly("s^3 + α^2 s + 1"), 1)));
    assert!(ff.factors.contains(&(f4_poly("s^2 + α^2 s + 1"), 1)));
    let alpha = Gf::new(2, 2).unwrap().alpha().unwrap();
    assert_eq!(ff.unit, alpha);
    assert_eq!(fg.unit, alpha);
    let common = f.gcd(&g);
    assert_eq!(common, f4_poly("s + α^2"));
    let a2 = alpha.pow(2);
    assert_eq!(f.root_multiplicity(&a2), 1);
    assert_eq!(g.root_multiplicity(&a2), 1);
}

#[test]
fn rational_factorization_of_the_discriminant_of_x() {
    let d = k3_arith::fixtures::x_surface().discriminant();
    let fz = factor_rational(&d).unwrap();
    assert_eq!(fz.expand(), d);
    let degs: Vec<(usize, usize)> = fz.factors.iter().map(|(p, m)| (p.degree().unwrap(), *m)).collect();
    assert_eq!(degs, vec![(1, 9), (3, 1)]);
}

#[test]
fn eisenstein_primes_and_symbols() {
    for p in primes_up_to(200) {
        match splitting(p).unwrap() {
            PrimeSplitting::Split { pi, pi_bar } => {
                assert_eq!(p % 3, 1);
                assert_eq!(pi.norm() as u64, p);
                assert!(pi.is_primary() && pi_bar.is_primary());
                assert_eq!(primary_prime(p).unwrap(), pi);
            }
            PrimeSplitting::Inert => assert_eq!(p % 3, 2),
            PrimeSplitting::Ramified => assert_eq!(p, 3),
        }
    }
    let pi7 = primary_prime(7).unwrap();
    assert_eq!(pi7, Eisenstein::new(-2, -3));
    assert!(primary_prime(9).is_err());
}

#[test]
fn kronecker_matches_euler_criterion() {
    for p in primes_up_to(300).into_iter().filter(|&p| p > 2) {
        for a in -20i64..20 {
            let e = BigInt::from(a).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
            let expect = if e == BigInt::from(0) { 0 } else if e == BigInt::from(1) { 1 } else { -1 };
            assert_eq!(kronecker(a, p as i64), expect, "({}/{})", a, p);
        }
    }
}

fn random_poly(field: &Gf, coeffs: &[u32]) -> Poly<FieldElem> {
    let q = field.q();
    Poly::from_coeffs(field, coeffs.iter().map(|&c| field.elem(c % q)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn factor_and_remultiply(which in 0usize..4, coeffs in prop::collection::vec(0u32..9, 1..10)) {
        let (p, r) = [(2, 1), (3, 1), (2, 2), (3, 2)][which];
        let field = Gf::new(p, r).unwrap();
        let f = random_poly(&field, &coeffs);
        prop_assume!(!f.is_zero());
        let fz = factor(&f);
        prop_assert_eq!(fz.expand(), f);
        for (g, _) in &fz.factors {
            prop_assert!(g.is_monic());
            prop_assert!(is_irreducible(g));
        }
    }
}
