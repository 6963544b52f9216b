//! Closed and mirrored 2-orbifolds: Euler characteristic, geometry class and
//! the Euclidean turnovers.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Base {
    Sphere,
    Disk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GeometryClass {
    Spherical,
    Euclidean,
    Hyperbolic,
    Bad,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Orb2dError {
    #[error("order {0} is below 2")]
    OrderTooSmall(u32),
    #[error("corner reflectors require a disk with mirrored boundary")]
    CornersWithoutMirror,
    #[error("a sphere has no boundary to mirror")]
    MirroredSphere,
}

/// A 2-orbifold with underlying space a sphere or a disk.
///
/// Cone points and corner reflectors are kept sorted, so derived equality is
/// equality of orbifolds.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TwoOrbifold {
    base: Base,
    cone_points: Vec<u32>,
    corner_reflectors: Vec<u32>,
    mirrored_boundary: bool,
}

fn check_orders(orders: &[u32]) -> Result<(), Orb2dError> {
    match orders.iter().find(|&&n| n < 2) {
        Some(&n) => Err(Orb2dError::OrderTooSmall(n)),
        None => Ok(()),
    }
}

impl TwoOrbifold {
    pub fn new(
        base: Base,
        cone_points: &[u32],
        corner_reflectors: &[u32],
        mirrored_boundary: bool,
    ) -> Result<Self, Orb2dError> {
        check_orders(cone_points)?;
        check_orders(corner_reflectors)?;
        if base == Base::Sphere && mirrored_boundary {
            return Err(Orb2dError::MirroredSphere);
        }
        if !corner_reflectors.is_empty() && !mirrored_boundary {
            return Err(Orb2dError::CornersWithoutMirror);
        }
        let mut cone_points = cone_points.to_vec();
        cone_points.sort_unstable();
        let mut corner_reflectors = corner_reflectors.to_vec();
        corner_reflectors.sort_unstable();
        Ok(Self {
            base,
            cone_points,
            corner_reflectors,
            mirrored_boundary,
        })
    }

    /// `S²(n₁,…,n_k)`.
    pub fn sphere(cone_points: &[u32]) -> Result<Self, Orb2dError> {
        Self::new(Base::Sphere, cone_points, &[], false)
    }

    /// Disk with mirrored boundary, interior cone points and corner reflectors.
    pub fn mirrored_disk(cone_points: &[u32], corners: &[u32]) -> Result<Self, Orb2dError> {
        Self::new(Base::Disk, cone_points, corners, true)
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn cone_points(&self) -> &[u32] {
        &self.cone_points
    }

    pub fn corner_reflectors(&self) -> &[u32] {
        &self.corner_reflectors
    }

    pub fn mirrored_boundary(&self) -> bool {
        self.mirrored_boundary
    }

    /// The orientation double cover of a mirrored disk: each corner reflector
    /// becomes one cone point and each cone point becomes two.
    pub fn orientation_double_cover(&self) -> Option<TwoOrbifold> {
        if !(self.base == Base::Disk && self.mirrored_boundary) {
            return None;
        }
        let mut cones = Vec::with_capacity(2 * self.cone_points.len() + self.corner_reflectors.len());
        cones.extend_from_slice(&self.cone_points);
        cones.extend_from_slice(&self.cone_points);
        cones.extend_from_slice(&self.corner_reflectors);
        Some(TwoOrbifold::sphere(&cones).expect("orders already validated"))
    }
}

impl fmt::Display for TwoOrbifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",");
        match self.base {
            Base::Sphere => write!(f, "S²({})", join(&self.cone_points)),
            Base::Disk if self.corner_reflectors.is_empty() && self.mirrored_boundary => {
                write!(f, "D²({};)", join(&self.cone_points))
            }
            Base::Disk if self.corner_reflectors.is_empty() => write!(f, "D²({})", join(&self.cone_points)),
            Base::Disk => write!(
                f,
                "D²({};{})",
                join(&self.cone_points),
                join(&self.corner_reflectors)
            ),
        }
    }
}

pub fn euler_characteristic(orb: &TwoOrbifold) -> Rational {
    let base = match orb.base {
        Base::Sphere => Rational::from_integer(2),
        Base::Disk => Rational::from_integer(1),
    };
    let one = Rational::from_integer(1);
    let cones: Rational = orb
        .cone_points
        .iter()
        .map(|&n| one - Rational::new(1, n as i64))
        .sum();
    let corners: Rational = orb
        .corner_reflectors
        .iter()
        .map(|&m| one - Rational::new(1, m as i64))
        .sum();
    base - cones - corners / 2
}

fn is_bad(orb: &TwoOrbifold) -> bool {
    let unequal_pair = |v: &[u32]| v.len() == 2 && v[0] != v[1];
    match orb.base {
        Base::Sphere => orb.cone_points.len() == 1 || unequal_pair(&orb.cone_points),
        Base::Disk => {
            orb.mirrored_boundary
                && orb.cone_points.is_empty()
                && (orb.corner_reflectors.len() == 1 || unequal_pair(&orb.corner_reflectors))
        }
    }
}

pub fn geometry_type(orb: &TwoOrbifold) -> GeometryClass {
    if is_bad(orb) {
        return GeometryClass::Bad;
    }
    let chi = euler_characteristic(orb);
    let zero = Rational::from_integer(0);
    if chi > zero {
        GeometryClass::Spherical
    } else if chi == zero {
        GeometryClass::Euclidean
    } else {
        GeometryClass::Hyperbolic
    }
}

/// All `S²(p,q,r)` with `1/p + 1/q + 1/r = 1`, found by exhausting
/// `2 ≤ p ≤ q ≤ r`. Once `p ≥ 4` or `q ≥ 7` the sum is below 1, so the search
/// is finite.
pub fn euclidean_turnovers() -> Vec<TwoOrbifold> {
    let one = Rational::from_integer(1);
    let mut out = Vec::new();
    for p in 2u32.. {
        if Rational::new(3, p as i64) < one {
            break;
        }
        for q in p.. {
            let head = Rational::new(1, p as i64) + Rational::new(2, q as i64);
            if head < one {
                break;
            }
            // 1/r is determined; accept only an integer r >= q.
            let rest = one - Rational::new(1, p as i64) - Rational::new(1, q as i64);
            if rest <= Rational::from_integer(0) {
                continue;
            }
            let r = rest.recip();
            if r.is_integer() && *r.numer() >= q as i64 {
                out.push(TwoOrbifold::sphere(&[p, q, *r.numer() as u32]).expect("orders >= 2"));
            }
        }
    }
    out.sort();
    out
}

pub fn is_euclidean_turnover(orb: &TwoOrbifold) -> bool {
    orb.base == Base::Sphere && orb.cone_points.len() == 3 && geometry_type(orb) == GeometryClass::Euclidean
}

/// Shorthand for the link of a trivalent vertex with incident labels `a,b,c`.
pub fn triple_geometry(a: u32, b: u32, c: u32) -> GeometryClass {
    geometry_type(&TwoOrbifold::sphere(&[a, b, c]).expect("labels >= 2"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_examples() {
        let s = |v: &[u32]| TwoOrbifold::sphere(v).unwrap();
        assert_eq!(euler_characteristic(&s(&[2, 3, 6])), Rational::from_integer(0));
        assert_eq!(euler_characteristic(&s(&[])), Rational::from_integer(2));
        assert_eq!(euler_characteristic(&s(&[2, 3, 7])), Rational::new(-1, 42));
    }

    #[test]
    fn geometry_examples() {
        let s = |v: &[u32]| TwoOrbifold::sphere(v).unwrap();
        assert_eq!(geometry_type(&s(&[2, 2, 5])), GeometryClass::Spherical);
        assert_eq!(geometry_type(&s(&[3, 3, 3])), GeometryClass::Euclidean);
        assert_eq!(geometry_type(&s(&[3])), GeometryClass::Bad);
        assert_eq!(geometry_type(&s(&[2, 3])), GeometryClass::Bad);
        assert_eq!(geometry_type(&s(&[3, 3])), GeometryClass::Spherical);
        assert_eq!(geometry_type(&s(&[2, 2, 2, 2])), GeometryClass::Euclidean);
    }

    #[test]
    fn disk_badness() {
        let d = |c: &[u32], m: &[u32]| TwoOrbifold::mirrored_disk(c, m).unwrap();
        assert_eq!(geometry_type(&d(&[], &[3])), GeometryClass::Bad);
        assert_eq!(geometry_type(&d(&[], &[2, 3])), GeometryClass::Bad);
        assert_eq!(geometry_type(&d(&[], &[2, 2])), GeometryClass::Spherical);
        assert_eq!(geometry_type(&d(&[], &[2, 3, 6])), GeometryClass::Euclidean);
        assert_eq!(geometry_type(&d(&[2], &[3])), GeometryClass::Spherical);
    }

    #[test]
    fn sorted_on_construction() {
        assert_eq!(
            TwoOrbifold::sphere(&[6, 2, 3]).unwrap(),
            TwoOrbifold::sphere(&[2, 3, 6]).unwrap()
        );
    }

    #[test]
    fn malformed_rejected() {
        assert_eq!(TwoOrbifold::sphere(&[1, 2]), Err(Orb2dError::OrderTooSmall(1)));
        assert_eq!(
            TwoOrbifold::new(Base::Disk, &[], &[2], false),
            Err(Orb2dError::CornersWithoutMirror)
        );
        assert_eq!(
            TwoOrbifold::new(Base::Sphere, &[], &[], true),
            Err(Orb2dError::MirroredSphere)
        );
    }

    #[test]
    fn turnovers() {
        let t = euclidean_turnovers();
        let expected: Vec<_> = [[2, 3, 6], [2, 4, 4], [3, 3, 3]]
            .iter()
            .map(|v| TwoOrbifold::sphere(v).unwrap())
            .collect();
        assert_eq!(t, expected);
        for o in &t {
            assert_eq!(euler_characteristic(o), Rational::from_integer(0));
            assert!(is_euclidean_turnover(o));
        }
        assert!(!is_euclidean_turnover(&TwoOrbifold::sphere(&[2, 2, 2, 2]).unwrap()));
        assert!(!is_euclidean_turnover(&TwoOrbifold::sphere(&[2, 3, 7]).unwrap()));
    }

    #[test]
    fn display() {
        assert_eq!(TwoOrbifold::sphere(&[3, 2, 6]).unwrap().to_string(), "S²(2,3,6)");
        assert_eq!(TwoOrbifold::mirrored_disk(&[], &[2, 2]).unwrap().to_string(), "D²(;2,2)");
    }

    #[test]
    fn triple_inequality_cross_check() {
        for p in 2..=12u32 {
            for q in 2..=12u32 {
                for r in 2..=12u32 {
                    let s = Rational::new(1, p as i64) + Rational::new(1, q as i64) + Rational::new(1, r as i64);
                    let one = Rational::from_integer(1);
                    let expect = if s > one {
                        GeometryClass::Spherical
                    } else if s == one {
                        GeometryClass::Euclidean
                    } else {
                        GeometryClass::Hyperbolic
                    };
                    assert_eq!(triple_geometry(p, q, r), expect, "({p},{q},{r})");
                }
            }
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn double_cover_doubles_chi(
                cones in proptest::collection::vec(2u32..10, 0..4),
                corners in proptest::collection::vec(2u32..10, 0..5),
            ) {
                let d = TwoOrbifold::mirrored_disk(&cones, &corners).unwrap();
                let s = d.orientation_double_cover().unwrap();
                prop_assert_eq!(euler_characteristic(&s), euler_characteristic(&d) * 2);
            }

            #[test]
            fn order_independent(mut v in proptest::collection::vec(2u32..20, 0..6)) {
                let a = TwoOrbifold::sphere(&v).unwrap();
                v.reverse();
                let b = TwoOrbifold::sphere(&v).unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }
}
