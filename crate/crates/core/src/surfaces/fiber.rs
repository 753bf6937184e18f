//! Kodaira fiber types, their dual graphs and Frobenius actions on components.

use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::lattices::QMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kodaira {
    /// I_n, n ≥ 0.
    I(u32),
    II,
    III,
    IV,
    /// I_n^*, n ≥ 0.
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{}", n),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IStar(n) => write!(f, "I{}*", n),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

/// ADE type of the root lattice spanned by non-identity components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RootType {
    A(u32),
    D(u32),
    E(u32),
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{}", n),
            RootType::D(n) => write!(f, "D{}", n),
            RootType::E(n) => write!(f, "E{}", n),
        }
    }
}

impl RootType {
    pub fn rank(&self) -> u32 {
        match *self {
            RootType::A(n) | RootType::D(n) | RootType::E(n) => n,
        }
    }
    /// Absolute discriminant.
    pub fn abs_discriminant(&self) -> u32 {
        match *self {
            RootType::A(n) => n + 1,
            RootType::D(_) => 4,
            RootType::E(6) => 3,
            RootType::E(7) => 2,
            _ => 1,
        }
    }
}

/// A fiber component. `Theta(i)` for cycles and exceptional types; for I_n^* the
/// simple components are `C(0..=3)` and the double ones `D(0..=n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ComponentLabel {
    Theta(u32),
    C(u8),
    D(u32),
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::Theta(i) => write!(f, "Θ{}", i),
            ComponentLabel::C(i) => write!(f, "C{}", i),
            ComponentLabel::D(i) => write!(f, "D{}", i),
        }
    }
}

impl ComponentLabel {
    pub fn identity(k: Kodaira) -> Self {
        match k {
            Kodaira::IStar(_) => ComponentLabel::C(0),
            _ => ComponentLabel::Theta(0),
        }
    }
}

impl Kodaira {
    pub fn component_count(&self) -> u32 {
        match *self {
            Kodaira::I(0) => 1,
            Kodaira::I(n) => n,
            Kodaira::II => 1,
            Kodaira::III => 2,
            Kodaira::IV => 3,
            Kodaira::IStar(n) => n + 5,
            Kodaira::IVStar => 7,
            Kodaira::IIIStar => 8,
            Kodaira::IIStar => 9,
        }
    }

    /// Euler number of the fiber (tame case).
    pub fn euler_number(&self) -> u32 {
        match *self {
            Kodaira::I(n) => n,
            Kodaira::II => 2,
            Kodaira::III => 3,
            Kodaira::IV => 4,
            Kodaira::IStar(n) => n + 6,
            Kodaira::IVStar => 8,
            Kodaira::IIIStar => 9,
            Kodaira::IIStar => 10,
        }
    }

    pub fn root_type(&self) -> Option<RootType> {
        match *self {
            Kodaira::I(n) if n >= 2 => Some(RootType::A(n - 1)),
            Kodaira::III => Some(RootType::A(1)),
            Kodaira::IV => Some(RootType::A(2)),
            Kodaira::IStar(n) => Some(RootType::D(n + 4)),
            Kodaira::IVStar => Some(RootType::E(6)),
            Kodaira::IIIStar => Some(RootType::E(7)),
            Kodaira::IIStar => Some(RootType::E(8)),
            _ => None,
        }
    }

    pub fn is_reducible(&self) -> bool {
        self.component_count() > 1
    }

    /// Components with multiplicities, identity component first.
    pub fn components(&self) -> Vec<(ComponentLabel, u32)> {
        use ComponentLabel::*;
        match *self {
            Kodaira::I(n) => (0..n.max(1)).map(|i| (Theta(i), 1)).collect(),
            Kodaira::II => vec![(Theta(0), 1)],
            Kodaira::III => vec![(Theta(0), 1), (Theta(1), 1)],
            Kodaira::IV => vec![(Theta(0), 1), (Theta(1), 1), (Theta(2), 1)],
            Kodaira::IStar(n) => {
                let mut v = vec![(C(0), 1), (C(1), 1), (C(2), 1), (C(3), 1)];
                v.extend((0..=n).map(|i| (D(i), 2)));
                v
            }
            Kodaira::IVStar => [1, 1, 1, 2, 2, 2, 3].iter().enumerate().map(|(i, &m)| (Theta(i as u32), m)).collect(),
            Kodaira::IIIStar => [1, 1, 2, 3, 4, 3, 2, 2].iter().enumerate().map(|(i, &m)| (Theta(i as u32), m)).collect(),
            Kodaira::IIStar => [1, 2, 3, 4, 5, 6, 4, 2, 3].iter().enumerate().map(|(i, &m)| (Theta(i as u32), m)).collect(),
        }
    }

    /// Intersection numbers between distinct components (edges of the dual graph, with weight).
    pub fn edges(&self) -> Vec<(ComponentLabel, ComponentLabel, i64)> {
        use ComponentLabel::*;
        let t = Theta;
        match *self {
            Kodaira::I(n) if n >= 3 => (0..n).map(|i| (t(i), t((i + 1) % n), 1)).collect(),
            Kodaira::I(2) => vec![(t(0), t(1), 2)],
            Kodaira::III => vec![(t(0), t(1), 2)],
            Kodaira::IV => vec![(t(0), t(1), 1), (t(0), t(2), 1), (t(1), t(2), 1)],
            Kodaira::IStar(n) => {
                let mut e = vec![(C(0), D(0), 1), (C(1), D(0), 1), (C(2), D(n), 1), (C(3), D(n), 1)];
                e.extend((0..n).map(|i| (D(i), D(i + 1), 1)));
                e
            }
            Kodaira::IVStar => vec![(t(0), t(3), 1), (t(3), t(6), 1), (t(1), t(4), 1), (t(4), t(6), 1), (t(2), t(5), 1), (t(5), t(6), 1)],
            Kodaira::IIIStar => vec![(t(0), t(2), 1), (t(2), t(3), 1), (t(3), t(4), 1), (t(4), t(5), 1), (t(5), t(6), 1), (t(6), t(1), 1), (t(4), t(7), 1)],
            Kodaira::IIStar => {
                let mut e: Vec<_> = (0..7).map(|i| (t(i), t(i + 1), 1)).collect();
                e.push((t(5), t(8), 1));
                e
            }
            _ => Vec::new(),
        }
    }

    /// Non-identity components in a fixed order.
    pub fn non_identity(&self) -> Vec<ComponentLabel> {
        self.components().into_iter().skip(1).map(|(l, _)| l).collect()
    }

    /// Simple (multiplicity one) components.
    pub fn simple_components(&self) -> Vec<ComponentLabel> {
        self.components().into_iter().filter(|&(_, m)| m == 1).map(|(l, _)| l).collect()
    }

    /// Intersection matrix of the non-identity components (negative definite).
    pub fn intersection_matrix(&self) -> QMatrix {
        let comps = self.non_identity();
        let n = comps.len();
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::from_integer((-2).into()));
        }
        for (a, b, w) in self.edges() {
            if let (Some(i), Some(j)) = (comps.iter().position(|&c| c == a), comps.iter().position(|&c| c == b)) {
                m.set(i, j, BigRational::from_integer(w.into()));
                m.set(j, i, BigRational::from_integer(w.into()));
            }
        }
        m
    }

    /// Local height correction contr(P, Q) for sections meeting components `a` and `b`.
    pub fn contribution(&self, a: ComponentLabel, b: ComponentLabel) -> BigRational {
        let comps = self.non_identity();
        let (i, j) = match (comps.iter().position(|&c| c == a), comps.iter().position(|&c| c == b)) {
            (Some(i), Some(j)) => (i, j),
            _ => return BigRational::from_integer(0.into()),
        };
        let inv = self.intersection_matrix().inverse().expect("root lattices are nondegenerate");
        -inv.get(i, j).clone()
    }

    /// The diagram symmetry that fixes the identity component and is used to
    /// relate labelings: reflection of the cycle, C2 ↔ C3, or swapping the two
    /// non-identity arms.
    pub fn mirror(&self, c: ComponentLabel) -> ComponentLabel {
        use ComponentLabel::*;
        match (*self, c) {
            (Kodaira::I(n), Theta(i)) if n > 0 => Theta((n - i) % n),
            (Kodaira::IStar(_), C(2)) => C(3),
            (Kodaira::IStar(_), C(3)) => C(2),
            (Kodaira::IV, Theta(1)) => Theta(2),
            (Kodaira::IV, Theta(2)) => Theta(1),
            (Kodaira::IVStar, Theta(1)) => Theta(2),
            (Kodaira::IVStar, Theta(2)) => Theta(1),
            (Kodaira::IVStar, Theta(4)) => Theta(5),
            (Kodaira::IVStar, Theta(5)) => Theta(4),
            _ => c,
        }
    }

    /// Component group Φ: order.
    pub fn component_group_order(&self) -> u32 {
        match self.root_type() {
            Some(r) => r.abs_discriminant(),
            None => 1,
        }
    }
}

/// How Frobenius acts on the components of a fiber over a finite residue field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FrobeniusAction {
    Trivial,
    Mirror,
    /// I_0^*: the listed subset of {C1, C2, C3} is permuted cyclically (length 2 or 3).
    Cycle(Vec<u8>),
}

impl FrobeniusAction {
    pub fn apply(&self, k: Kodaira, c: ComponentLabel) -> ComponentLabel {
        match self {
            FrobeniusAction::Trivial => c,
            FrobeniusAction::Mirror => k.mirror(c),
            FrobeniusAction::Cycle(cyc) => match c {
                ComponentLabel::C(i) => match cyc.iter().position(|&x| x == i) {
                    Some(pos) => ComponentLabel::C(cyc[(pos + 1) % cyc.len()]),
                    None => c,
                },
                _ => c,
            },
        }
    }

    /// Number of non-identity components fixed by Frobenius.
    pub fn fixed_non_identity(&self, k: Kodaira) -> u32 {
        k.non_identity().into_iter().filter(|&c| self.apply(k, c) == c).count() as u32
    }

    /// Order of the permutation (degree of the field of definition of all components).
    pub fn order(&self, k: Kodaira) -> u32 {
        let comps: Vec<_> = k.components().into_iter().map(|(c, _)| c).collect();
        let mut ord = 1u32;
        for &c in &comps {
            let mut len = 1;
            let mut d = self.apply(k, c);
            while d != c {
                d = self.apply(k, d);
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn contributions_match_closed_forms() {
        // I_n: i(n-j)/n for i ≤ j
        for n in 2..14u32 {
            let k = Kodaira::I(n);
            for i in 1..n {
                for j in i..n {
                    let v = k.contribution(ComponentLabel::Theta(i), ComponentLabel::Theta(j));
                    assert_eq!(v, r((i * (n - j)) as i64, n as i64));
                }
            }
        }
        // I_b^*
        for b in 0..8u32 {
            let k = Kodaira::IStar(b);
            let c = ComponentLabel::C;
            assert_eq!(k.contribution(c(1), c(1)), r(1, 1));
            assert_eq!(k.contribution(c(2), c(2)), r(4 + b as i64, 4));
            assert_eq!(k.contribution(c(1), c(2)), r(1, 2));
            assert_eq!(k.contribution(c(2), c(3)), r(2 + b as i64, 4));
        }
        let t = ComponentLabel::Theta;
        assert_eq!(Kodaira::IV.contribution(t(1), t(1)), r(2, 3));
        assert_eq!(Kodaira::IV.contribution(t(1), t(2)), r(1, 3));
        assert_eq!(Kodaira::IVStar.contribution(t(1), t(1)), r(4, 3));
        assert_eq!(Kodaira::IVStar.contribution(t(1), t(2)), r(2, 3));
        assert_eq!(Kodaira::III.contribution(t(1), t(1)), r(1, 2));
        assert_eq!(Kodaira::IIIStar.contribution(t(1), t(1)), r(3, 2));
        assert!(Kodaira::IIStar.contribution(t(0), t(0)).is_zero());
    }

    #[test]
    fn multiplicities_sum_to_euler_structure() {
        // Σ m_i Θ_i is orthogonal to every component
        for k in [Kodaira::I(5), Kodaira::IStar(3), Kodaira::IVStar, Kodaira::IIIStar, Kodaira::IIStar, Kodaira::IV, Kodaira::III] {
            let comps = k.components();
            for &(c, _) in &comps {
                let mut s = 0i64;
                for &(d, m) in &comps {
                    let x = if c == d {
                        -2
                    } else {
                        k.edges().iter().filter(|e| (e.0 == c && e.1 == d) || (e.0 == d && e.1 == c)).map(|e| e.2).sum()
                    };
                    s += x * m as i64;
                }
                assert_eq!(s, 0, "{} at {}", k, c);
            }
        }
    }

    #[test]
    fn frobenius_fixed_counts() {
        assert_eq!(FrobeniusAction::Mirror.fixed_non_identity(Kodaira::I(4)), 1);
        assert_eq!(FrobeniusAction::Mirror.fixed_non_identity(Kodaira::I(3)), 0);
        assert_eq!(FrobeniusAction::Mirror.fixed_non_identity(Kodaira::IStar(3)), 5);
        assert_eq!(FrobeniusAction::Mirror.fixed_non_identity(Kodaira::IVStar), 2);
        assert_eq!(FrobeniusAction::Mirror.fixed_non_identity(Kodaira::IV), 0);
        assert_eq!(FrobeniusAction::Cycle(vec![1, 2, 3]).fixed_non_identity(Kodaira::IStar(0)), 1);
        assert_eq!(FrobeniusAction::Cycle(vec![2, 3]).fixed_non_identity(Kodaira::IStar(0)), 2);
        assert_eq!(FrobeniusAction::Mirror.order(Kodaira::I(3)), 2);
    }
}
