use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use k3_arith::algebra::Gf;
use k3_arith::fixtures::{x2_section, x_mod2, x_surface};
use k3_arith::hecke::ap;
use k3_arith::mordell_weil::{EllipticSurface, Section};
use k3_arith::surfaces::count::count_surface;
use k3_arith::surfaces::{Configuration, TraceContext};
use k3_arith::zeta::{p2_from_configuration, tate_check};

fn counting(c: &mut Criterion) {
    for (p, r) in [(7, 1), (13, 1), (7, 2)] {
        let model = x_surface().reduce_mod(&Gf::new(p, r).unwrap()).unwrap();
        c.bench_function(&format!("count_surface F_{}", p.pow(r)), |b| b.iter(|| count_surface(black_box(&model)).unwrap()));
    }
    let ctx = TraceContext::new(&x_surface()).unwrap();
    c.bench_function("frobenius traces p <= 100", |b| {
        b.iter(|| k3_arith::algebra::primes_up_to(100).into_iter().filter(|&p| p != 3).map(|p| ctx.frobenius_trace(p).unwrap()).sum::<i64>())
    });
    c.bench_function("newform a_p p <= 1000", |b| {
        b.iter(|| k3_arith::algebra::primes_up_to(1000).into_iter().filter(|&p| p != 3).map(|p| ap(p).unwrap()).sum::<i64>())
    });
}

fn lattices(c: &mut Criterion) {
    let f4 = Gf::new(2, 2).unwrap();
    let s = EllipticSurface::new(x_mod2(&f4)).unwrap();
    let sec = |n: &str| {
        let (x, y) = x2_section(n).unwrap();
        Section::new(x, y)
    };
    let gens = [sec("Q"), sec("R")];
    c.bench_function("height Gram of Q, R", |b| b.iter(|| s.height_gram(black_box(&gens)).unwrap()));
    let f9 = Gf::new(3, 2).unwrap();
    c.bench_function("Tate check over F_9", |b| {
        b.iter(|| {
            let config = Configuration::compute(&x_surface().reduce_mod(&f9).unwrap()).unwrap();
            let p2 = p2_from_configuration(&config, 9, None).unwrap();
            tate_check(9, &p2, 22)
        })
    });
}

criterion_group!(benches, counting, lattices);
criterion_main!(benches);
