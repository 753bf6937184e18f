//! Hermite normal form and integer kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-style HNF of the lattice spanned by the rows; zero rows are dropped.
/// Returns `(H, U)` with `U · A = H'` where H' is H padded with zero rows, U unimodular.
pub fn hnf_with_transform(rows: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let m = rows.len();
    let n = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // gcd-reduce column c among rows r..m
        loop {
            let piv = (r..m).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].abs());
            let Some(p) = piv else { break };
            a.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].div_floor(&a[r][c]);
                for j in 0..n {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
                for j in 0..m {
                    let t = &u[r][j] * &f;
                    u[i][j] -= t;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for j in 0..n {
                a[r][j] = -&a[r][j];
            }
            for j in 0..m {
                u[r][j] = -&u[r][j];
            }
        }
        for i in 0..r {
            let f = a[i][c].div_floor(&a[r][c]);
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let t = &a[r][j] * &f;
                a[i][j] -= t;
            }
            for j in 0..m {
                let t = &u[r][j] * &f;
                u[i][j] -= t;
            }
        }
        r += 1;
    }
    (a, u)
}

pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    hnf_with_transform(rows).0.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Basis of `{v ∈ Z^m : v · A = 0}` for an m×n integer matrix A.
pub fn left_kernel(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let (h, u) = hnf_with_transform(rows);
    let ker: Vec<Vec<BigInt>> = h
        .iter()
        .zip(u)
        .filter(|(r, _)| r.iter().all(|x| x.is_zero()))
        .map(|(_, urow)| urow)
        .collect();
    hnf(&ker)
}

/// Index-free lattice basis of the rows, as rationals scaled by a common denominator.
pub fn lattice_basis_rational(rows: &[Vec<num_rational::BigRational>]) -> Vec<Vec<num_rational::BigRational>> {
    use num_rational::BigRational;
    let mut den = BigInt::one();
    for r in rows {
        for x in r {
            den = den.lcm(x.denom());
        }
    }
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    hnf(&ints)
        .into_iter()
        .map(|r| r.into_iter().map(|x| BigRational::new(x, den.clone())).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hnf_of_small_lattice() {
        let h = hnf(&b(&[&[2, 4], &[3, 5], &[4, 4]]));
        assert_eq!(h, b(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn kernel_is_annihilating() {
        let a = b(&[&[1, 2], &[2, 4], &[3, 7], &[0, 1]]);
        let k = left_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            for j in 0..2 {
                let s: BigInt = (0..4).map(|i| &v[i] * &a[i][j]).sum();
                assert!(s.is_zero());
            }
        }
    }
}
