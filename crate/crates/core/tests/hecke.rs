use k3_arith::algebra::{primes_up_to, IntPoly};
use k3_arith::fixtures::{x_surface, x_twist};
use k3_arith::hecke::*;
use k3_arith::surfaces::TraceContext;
use num_bigint::BigInt;

const TABLE: [(u64, i64); 11] = [(2, 0), (5, 0), (7, -13), (11, 0), (13, -1), (17, 0), (19, 11), (23, 0), (29, 0), (31, -46), (37, 47)];

#[test]
fn newform_traces() {
    for (p, t) in TABLE {
        assert_eq!(ap(p).unwrap(), t, "p = {}", p);
    }
    assert_eq!(ap(3).unwrap(), 0);
}

#[test]
fn coefficient_recursion() {
    let ch = Character::untwisted();
    assert_eq!(ch.an(1).unwrap(), BigInt::from(1));
    assert_eq!(ch.an(49).unwrap(), BigInt::from(120));
    assert_eq!(ch.an(91).unwrap(), BigInt::from(13));
    // multiplicativity on coprime pairs
    for (m, n) in [(4u64, 7u64), (7, 13), (5, 19), (9, 7)] {
        assert_eq!(ch.an(m * n).unwrap(), ch.an(m).unwrap() * ch.an(n).unwrap());
    }
}

#[test]
fn euler_factors_have_determinant_chi_p_squared() {
    for p in primes_up_to(100).into_iter().filter(|&p| p != 3) {
        let e = Character::untwisted().euler_factor(p).unwrap();
        let chi = if p % 3 == 1 { 1 } else { -1 };
        assert_eq!(e.coeff(2), BigInt::from(chi * (p * p) as i64));
    }
    assert_eq!(Character::untwisted().euler_factor(7).unwrap(), IntPoly::from_i64(&[1, 13, 49]));
}

#[test]
fn twisted_traces_at_seven() {
    assert_eq!(ap_twisted(7, 3, 1, CubicBranch::First).unwrap(), 11);
    assert_eq!(ap_twisted(7, 3, 1, CubicBranch::Second).unwrap(), 2);
    assert_eq!(ap_twisted(7, 1, 1, CubicBranch::First).unwrap(), -13);
    assert!(matches!(ap_twisted(7, 7, 1, CubicBranch::First), Err(k3_arith::Error::BadPrime { .. })));
}

#[test]
fn quadratic_twist_flips_signs() {
    for p in primes_up_to(60).into_iter().filter(|&p| p % 3 == 1) {
        let a = ap(p).unwrap();
        let b = ap_twisted(p, 1, -4, CubicBranch::First).unwrap();
        let k = k3_arith::algebra::kronecker(-4, p as i64) as i64;
        assert_eq!(b, k * a, "p = {}", p);
    }
}

#[test]
fn counting_agrees_with_the_character_up_to_200() {
    let ctx = TraceContext::new(&x_surface()).unwrap();
    for p in primes_up_to(200).into_iter().filter(|&p| p != 3) {
        assert_eq!(ctx.frobenius_trace(p).unwrap(), ap(p).unwrap(), "p = {}", p);
    }
}

#[test]
fn cubic_twists_by_counting() {
    let ctx3 = TraceContext::new(&x_twist(3)).unwrap();
    assert_eq!(ctx3.frobenius_trace(7).unwrap(), 11);
    let ctx2 = TraceContext::new(&x_twist(2)).unwrap();
    for p in [7u64, 13, 19] {
        assert_eq!(ctx2.frobenius_trace(p).unwrap(), ap_twisted(p, 2, 1, CubicBranch::First).unwrap(), "p = {}", p);
    }
}
