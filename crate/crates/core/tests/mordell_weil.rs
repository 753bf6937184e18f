use k3_arith::algebra::*;
use k3_arith::fixtures::*;
use k3_arith::lattices::{artin_sigma, BinaryForm, QMatrix};
use k3_arith::mordell_weil::*;
use k3_arith::surfaces::fiber::ComponentLabel::{Theta, C, D};
use k3_arith::surfaces::Kodaira;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn f4() -> Gf {
    Gf::new(2, 2).unwrap()
}

fn x2() -> EllipticSurface<FieldElem> {
    EllipticSurface::new(x_mod2(&f4())).unwrap()
}

fn sec(name: &str) -> Section<FieldElem> {
    let (x, y) = x2_section(name).unwrap();
    Section::new(x, y)
}

/// The reduction of (−s, 0), of order 4 on X/2.
fn t2() -> Section<FieldElem> {
    let f = f4();
    Section::new(RatFunc::from_poly(Poly::from_ints(&f, &[0, 1])), RatFunc::zero(&f))
}

fn x_over_q() -> (EllipticSurface<Rat>, Section<Rat>) {
    let (x, y) = x_torsion_section();
    (EllipticSurface::new(x_surface()).unwrap(), Section::new(x, y))
}

fn x3() -> (EllipticSurface<FieldElem>, Section<FieldElem>) {
    let f = Gf::new(3, 1).unwrap();
    let s = EllipticSurface::new(x_surface().reduce_mod(&f).unwrap()).unwrap();
    let t = Section::new(RatFunc::from_poly(Poly::from_ints(&f, &[0, -1])), RatFunc::zero(&f));
    (s, t)
}

#[test]
fn torsion_of_x() {
    let (x, p) = x_over_q();
    let law = x.law();
    assert_eq!(law.order(&p, 30), Some(4));
    let m: Vec<String> = law.multiples(&p, 10).iter().map(|s| s.to_string()).collect();
    assert_eq!(m, vec!["(-s, 0)", "(0, 0)", "(-s, s^3)", "O"]);
    for k in 1..4 {
        let h = x.height(&law.mul(k, &p)).unwrap();
        assert!(h.value.is_zero(), "h({}P) = {}", k, h);
    }
    assert_eq!(x.height(&p).unwrap().to_string(), "4 − 7/4 − 27/12 = 0");
}

#[test]
fn torsion_on_x2() {
    let s = x2();
    assert_eq!(s.law().order(&t2(), 30), Some(4));
    assert!(s.height(&t2()).unwrap().value.is_zero());
    assert_eq!(s.law().order(&sec("Q"), 12), None);
    assert_eq!(s.law().order(&sec("R"), 12), None);
}

#[test]
fn section_table() {
    let s = x2();
    for n in ["Q", "R", "S1", "S2", "S3"] {
        let p = sec(n);
        let m = sec(&format!("-{}", n));
        assert!(s.law().contains(&p), "{}", n);
        assert!(s.law().contains(&m), "-{}", n);
        assert_eq!(s.law().neg(&p), m, "{}", n);
    }
}

#[test]
fn component_contacts() {
    let (x, p) = x_over_q();
    let h = x.hits(&[p]).unwrap();
    assert_eq!(h.at(Kodaira::IStar(3), 0), Some(C(3)));
    assert_eq!(h.at(Kodaira::I(12), 0), Some(Theta(9)));
    let h = x2().hits(&[sec("Q"), sec("R")]).unwrap();
    assert_eq!(h.at(Kodaira::IStar(3), 0), Some(C(0)));
    assert_eq!(h.at(Kodaira::I(12), 0), Some(Theta(8)));
    assert_eq!(h.at(Kodaira::IStar(3), 1), Some(C(3)));
    assert_eq!(h.at(Kodaira::I(12), 1), Some(Theta(1)));
}

#[test]
fn height_gram() {
    let s = x2();
    let (q, rr) = (sec("Q"), sec("R"));
    let g = s.height_gram(&[q.clone(), rr.clone()]).unwrap();
    let third = r(1, 3);
    assert_eq!(g, QMatrix::from_ints(&[vec![4, 2], vec![2, 4]]).scale(&third));
    assert_eq!(g.det(), r(4, 3));
    assert_eq!(s.height(&q).unwrap().to_string(), "4 − 32/12 = 4/3");
    assert_eq!(s.height(&rr).unwrap().to_string(), "4 − 7/4 − 11/12 = 4/3");
    assert_eq!(s.height_pairing(&q, &rr).unwrap().to_string(), "2 − 1 − 4/12 = 2/3");
    assert_eq!(s.height_pairing(&q, &t2()).unwrap().value, r(0, 1));
}

#[test]
fn projections() {
    let s = x2();
    let frame = NsFrame::new(&s, &[sec("Q"), sec("R")], &[t2()]).unwrap();
    let (pq, pr) = (frame.phi(0), frame.phi(1));
    for g in frame.trivial_generators(None) {
        assert!(frame.pair(&pq, &g).is_zero());
        assert!(frame.pair(&pr, &g).is_zero());
    }
    assert_eq!(frame.pair(&pq, &pq), r(-4, 3));
    assert_eq!(frame.pair(&pq, &pr), r(-2, 3));
    // φ(Q) = Q − O − 2F + (1/3)(Θ1 + 2Θ2 + ... + 8Θ8 + 6Θ9 + 4Θ10 + 2Θ11)
    let qc = [1, 2, 3, 4, 5, 6, 7, 8, 6, 4, 2];
    for (i, c) in qc.iter().enumerate() {
        assert_eq!(pq.coeff(&format!("Θ{}[1]", i + 1)), Some(&r(*c, 3)));
    }
    assert_eq!(pq.coeff("O"), Some(&r(-1, 1)));
    assert_eq!(pq.coeff("F"), Some(&r(-2, 1)));
    // φ(R) = R − O − 2F + B + (1/12)(11Θ1 + 10Θ2 + ... + Θ11)
    for i in 1..=11 {
        assert_eq!(pr.coeff(&format!("Θ{}[1]", i)), Some(&r(12 - i, 12)));
    }
    let b = [("C1", 2), ("D0", 4), ("D1", 6), ("D2", 8), ("D3", 10), ("C2", 5), ("C3", 7)];
    for (n, c) in b {
        assert_eq!(pr.coeff(&format!("{}[0]", n)), Some(&r(c, 4)), "{}", n);
    }
    assert_eq!(pr.coeff("F"), Some(&r(-2, 1)));
}

#[test]
fn torsion_section_as_divisor() {
    let (x, p) = x_over_q();
    let frame = NsFrame::new(&x, &[], &[p]).unwrap();
    // O + 2F − A − B
    let mut d = frame.unit(&NsBasis::Zero);
    let f = frame.unit(&NsBasis::Fiber);
    let a: [i64; 11] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 6, 3];
    let b = [(C(1), 2), (D(0), 4), (D(1), 6), (D(2), 8), (D(3), 10), (C(2), 5), (C(3), 7)];
    d.coeffs[frame.names.iter().position(|n| n == "F").unwrap()] = r(2, 1);
    for (i, c) in a.iter().enumerate() {
        let u = frame.unit(&NsBasis::Component { fiber: 1, label: Theta(i as u32 + 1) });
        let k = u.coeffs.iter().position(|x| !x.is_zero()).unwrap();
        d.coeffs[k] = r(-c, 4);
    }
    for (l, c) in b {
        let u = frame.unit(&NsBasis::Component { fiber: 0, label: l });
        let k = u.coeffs.iter().position(|x| !x.is_zero()).unwrap();
        d.coeffs[k] = r(-c, 4);
    }
    assert_eq!(frame.torsion_class(0, &x).unwrap(), d);
    let o = frame.unit(&NsBasis::Zero);
    assert_eq!(frame.pair(&d, &o), r(0, 1));
    assert_eq!(frame.pair(&d, &f), r(1, 1));
    for i in 1..=11 {
        let t = frame.unit(&NsBasis::Component { fiber: 1, label: Theta(i) });
        assert_eq!(frame.pair(&d, &t), r((i == 9) as i64, 1), "Θ{}", i);
    }
    for j in 0..4 {
        let t = frame.unit(&NsBasis::Component { fiber: 0, label: D(j) });
        assert_eq!(frame.pair(&d, &t), r(0, 1), "D{}", j);
    }
    for j in 1..4 {
        let t = frame.unit(&NsBasis::Component { fiber: 0, label: C(j) });
        assert_eq!(frame.pair(&d, &t), r((j == 3) as i64, 1), "C{}", j);
    }
    assert_eq!(frame.pair(&d, &d), r(-2, 1));
}

#[test]
fn ns_discriminants() {
    let (x, p) = x_over_q();
    let d = NsFrame::new(&x, &[], &[p]).unwrap().discriminant(&x).unwrap();
    assert_eq!((d.by_formula.clone(), d.by_gram.clone(), d.rank, d.torsion_order), (r(-3, 1), r(-3, 1), 20, 4));

    let s = x2();
    let d = NsFrame::new(&s, &[sec("Q"), sec("R")], &[t2()]).unwrap().discriminant(&s).unwrap();
    assert_eq!((d.by_formula.clone(), d.by_gram.clone(), d.rank), (r(-4, 1), r(-4, 1), 22));
    assert_eq!(artin_sigma(&BigInt::from(-4), 2), Some(1));

    let (s3, t) = x3();
    let d = NsFrame::new(&s3, &[], &[t]).unwrap().discriminant(&s3).unwrap();
    assert_eq!((d.by_formula.clone(), d.by_gram.clone(), d.rank), (r(-9, 1), r(-9, 1), 22));
    assert_eq!(artin_sigma(&BigInt::from(-9), 3), Some(1));
    assert_eq!(artin_sigma(&BigInt::from(-3), 3), None);
}

#[test]
fn transcendental_lattice_in_characteristic_two() {
    let s = x2();
    let frame = NsFrame::new(&s, &[sec("Q"), sec("R")], &[t2()]).unwrap();
    let mut sub = frame.trivial_generators(None);
    sub.extend(frame.torsion_classes(&s).unwrap());
    let old: Vec<NsBasis> = frame.basis.iter().filter(|b| !matches!(b, NsBasis::Section(_))).cloned().collect();
    let c = frame.complement(&s, &sub, &old).unwrap();
    let t = c.binary_form().unwrap();
    assert_eq!(t, BinaryForm::new(-12, -6, -4));
    assert_eq!(c.directions, vec!["P1", "P2"]);
    let tx = BinaryForm::new(2, 1, 2);
    assert_eq!(tx.similar(&t), Some(r(2, 1)));
    assert!(t.is_equivalent(&tx.scale(&BigInt::from(-2))));
}

#[test]
fn transcendental_lattice_in_characteristic_three() {
    let (s3, t) = x3();
    let frame = NsFrame::new(&s3, &[], &[t]).unwrap();
    let old_fibers: Vec<usize> = (0..frame.hits.kodaira.len()).filter(|&f| frame.hits.kodaira[f] != Kodaira::I(3)).collect();
    let mut sub = frame.trivial_generators(Some(&old_fibers));
    sub.extend(frame.torsion_classes(&s3).unwrap());
    let old: Vec<NsBasis> = frame
        .basis
        .iter()
        .filter(|b| match b {
            NsBasis::Component { fiber, .. } => old_fibers.contains(fiber),
            _ => true,
        })
        .cloned()
        .collect();
    let c = frame.complement(&s3, &sub, &old).unwrap();
    let a2 = BinaryForm::new(-2, 1, -2);
    assert!(c.binary_form().unwrap().is_equivalent(&a2));
    assert_eq!(BinaryForm::new(2, 1, 2).similar(&c.binary_form().unwrap()), Some(r(1, 1)));
}

#[test]
fn frames_reject_foreign_divisors() {
    let s = x2();
    let big = NsFrame::new(&s, &[sec("Q"), sec("R")], &[t2()]).unwrap();
    let small = NsFrame::new(&s, &[sec("Q")], &[t2()]).unwrap();
    assert!(big.intersect(&big.phi(0), &small.phi(0)).is_err());
    assert_eq!(big.intersect(&big.phi(0), &big.phi(0)).unwrap(), r(-4, 3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn group_law_axioms(c in proptest::collection::vec((-2i64..=2, -2i64..=2, 0i64..4), 3)) {
        let s = x2();
        let law = s.law();
        let (q, rr, t) = (sec("Q"), sec("R"), t2());
        let pts: Vec<Section<FieldElem>> = c
            .iter()
            .map(|&(a, b, k)| law.add(&law.add(&law.mul(a, &q), &law.mul(b, &rr)), &law.mul(k, &t)))
            .collect();
        let (a, b, d) = (&pts[0], &pts[1], &pts[2]);
        prop_assert!(law.contains(a));
        prop_assert_eq!(law.add(&law.add(a, b), d), law.add(a, &law.add(b, d)));
        prop_assert_eq!(law.add(a, b), law.add(b, a));
        prop_assert_eq!(law.add(a, &Section::Zero), a.clone());
        prop_assert!(law.add(a, &law.neg(a)).is_zero());
    }

    #[test]
    fn torsion_group_law(i in 0i64..8, j in 0i64..8, k in 0i64..8) {
        let (x, p) = x_over_q();
        let law = x.law();
        let (a, b, c) = (law.mul(i, &p), law.mul(j, &p), law.mul(k, &p));
        prop_assert_eq!(law.add(&law.add(&a, &b), &c), law.mul(i + j + k, &p));
        prop_assert_eq!(law.add(&a, &b), law.add(&b, &a));
    }
}
