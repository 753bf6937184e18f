//! Lattices: rational Gram matrices, Hermite normal form, root lattices, binary forms.

pub mod binary;
pub mod hnf;
pub mod matrix;

pub use binary::{artin_sigma, BinaryForm};
pub use hnf::{hnf, lattice_basis_rational, left_kernel};
pub use matrix::{fmt_rat, QMatrix};

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};

use crate::surfaces::fiber::RootType;

/// Validated root lattice: A_n (n ≥ 1), D_n (n ≥ 4), E_6, E_7, E_8.
pub fn root_lattice(t: RootType) -> Result<QMatrix> {
    let ok = match t {
        RootType::A(n) => n >= 1,
        RootType::D(n) => n >= 4,
        RootType::E(n) => (6..=8).contains(&n),
    };
    if !ok {
        return Err(Error::Invalid(format!("no root lattice of type {}", t)));
    }
    Ok(root_lattice_gram(t))
}

/// The hyperbolic plane U.
pub fn hyperbolic_u() -> QMatrix {
    QMatrix::from_ints(&[vec![0, 1], vec![1, 0]])
}

/// Discriminant (Gram determinant).
pub fn discriminant(gram: &QMatrix) -> BigRational {
    gram.det()
}

/// The lattice L(m): Gram scaled by m > 0.
pub fn rescale(gram: &QMatrix, m: &BigRational) -> Result<QMatrix> {
    if !m.is_positive() {
        return Err(Error::Invalid("rescaling factor must be positive".into()));
    }
    Ok(gram.scale(m))
}

/// Gram matrix of the negative-definite root lattice of the given type.
pub fn root_lattice_gram(t: RootType) -> QMatrix {
    let n = t.rank() as usize;
    let mut m = QMatrix::zeros(n, n);
    let one = BigRational::from_integer(1.into());
    for i in 0..n {
        m.set(i, i, BigRational::from_integer((-2).into()));
    }
    let mut edge = |i: usize, j: usize| {
        m.set(i, j, one.clone());
        m.set(j, i, one.clone());
    };
    match t {
        RootType::A(_) => (1..n).for_each(|i| edge(i - 1, i)),
        RootType::D(_) => {
            (1..n - 1).for_each(|i| edge(i - 1, i));
            edge(n - 3, n - 1);
        }
        RootType::E(_) => {
            // chain 0..n-2 with node n-1 attached to node 2
            (1..n - 1).for_each(|i| edge(i - 1, i));
            edge(2, n - 1);
        }
    }
    m
}

/// Discriminant of the negative-definite root lattice: `(-1)^rank · |disc|`.
pub fn root_discriminant(t: RootType) -> i64 {
    let d = t.abs_discriminant() as i64;
    if t.rank().is_multiple_of(2) {
        d
    } else {
        -d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_discriminants_match_gram_determinants() {
        for t in [RootType::A(1), RootType::A(2), RootType::A(11), RootType::D(4), RootType::D(7), RootType::E(6), RootType::E(7), RootType::E(8)] {
            let d = root_lattice_gram(t).det();
            assert_eq!(d, BigRational::from_integer(root_discriminant(t).into()), "{}", t);
        }
    }

    #[test]
    fn trivial_lattice_of_x() {
        let v = QMatrix::block_diag(&[root_lattice(RootType::A(11)).unwrap(), root_lattice(RootType::D(7)).unwrap(), hyperbolic_u()]);
        assert_eq!(discriminant(&v), BigRational::from_integer((-48).into()));
        assert_eq!(discriminant(&hyperbolic_u()), BigRational::from_integer((-1).into()));
        assert_eq!(root_lattice(RootType::A(2)).unwrap(), QMatrix::from_ints(&[vec![-2, 1], vec![1, -2]]));
        assert!(root_lattice(RootType::D(3)).is_err());
        assert!(root_lattice(RootType::A(0)).is_err());
        let t = QMatrix::from_ints(&[vec![2, 1], vec![1, 2]]);
        let two = BigRational::from_integer(2.into());
        assert_eq!(rescale(&t, &two).unwrap(), QMatrix::from_ints(&[vec![4, 2], vec![2, 4]]));
        assert!(rescale(&t, &BigRational::from_integer(0.into())).is_err());
    }
}
