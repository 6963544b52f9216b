//! Coxeter tetrahedra: Gram matrices, realizability and hyperbolic volume.

mod exact;
mod lobachevsky;

use std::f64::consts::PI;

use nalgebra::{Matrix4, SymmetricEigen};
use serde::Serialize;
use thiserror::Error;

use crate::orb2d::{triple_geometry, GeometryClass};
use crate::siggraph::TetraPattern;

pub use lobachevsky::lobachevsky;

/// Face pairs in label order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

const EIGEN_TOL: f64 = 1e-12;

fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    PAIRS.iter().position(|&p| p == (i, j)).expect("distinct faces")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("dihedral label {0} is below 2")]
    LabelTooSmall(u32),
    #[error("volume needs a hyperbolic finite-volume tetrahedron, got {0:?}")]
    NotHyperbolic(RealizabilityClass),
    #[error("volume is implemented for tetrahedra with an ideal vertex")]
    NoIdealVertex,
}

/// Tetrahedron with dihedral angle π/n on the edge where two faces meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CoxeterTetrahedron {
    labels: [u32; 6],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RealizabilityClass {
    HyperbolicFiniteVolume,
    Spherical,
    Euclidean,
    NotRealizable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizabilityReport {
    pub class: RealizabilityClass,
    /// Vertices, each indexed by its opposite face.
    pub ideal_vertices: Vec<usize>,
    /// (positive, negative, zero) eigenvalue counts of the Gram matrix.
    pub signature: (usize, usize, usize),
    pub exact_signature: bool,
}

impl CoxeterTetrahedron {
    pub fn new(labels: [u32; 6]) -> Result<Self, GeomError> {
        match labels.iter().find(|&&l| l < 2) {
            Some(&l) => Err(GeomError::LabelTooSmall(l)),
            None => Ok(CoxeterTetrahedron { labels }),
        }
    }

    /// Faces 0, 1, 2 are opposite the finite vertices a, b, c of the pattern
    /// and face 3 is opposite the ideal vertex.
    pub fn from_pattern(p: &TetraPattern) -> Self {
        let [ca, cb, cc] = p.cusp_orders();
        let [bc, ca_, ab] = p.interior_labels();
        let mut labels = [0; 6];
        labels[pair_index(1, 2)] = ca;
        labels[pair_index(0, 2)] = cb;
        labels[pair_index(0, 1)] = cc;
        labels[pair_index(2, 3)] = ab;
        labels[pair_index(1, 3)] = ca_;
        labels[pair_index(0, 3)] = bc;
        CoxeterTetrahedron { labels }
    }

    pub fn labels(&self) -> [u32; 6] {
        self.labels
    }

    pub fn label(&self, i: usize, j: usize) -> u32 {
        self.labels[pair_index(i, j)]
    }

    pub fn angle(&self, i: usize, j: usize) -> f64 {
        PI / self.label(i, j) as f64
    }

    /// Faces renamed by `perm`: face `i` becomes face `perm[i]`.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        let mut labels = [0; 6];
        for &(i, j) in &PAIRS {
            labels[pair_index(perm[i], perm[j])] = self.label(i, j);
        }
        CoxeterTetrahedron { labels }
    }

    pub fn gram(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|i, j| if i == j { 1.0 } else { -self.angle(i, j).cos() })
    }

    /// Labels at the vertex opposite face `k`.
    pub fn vertex_link(&self, k: usize) -> [u32; 3] {
        let f: Vec<usize> = (0..4).filter(|&i| i != k).collect();
        [self.label(f[0], f[1]), self.label(f[0], f[2]), self.label(f[1], f[2])]
    }

    pub fn vertex_geometry(&self, k: usize) -> GeometryClass {
        let [a, b, c] = self.vertex_link(k);
        triple_geometry(a, b, c)
    }
}

pub fn signature_numeric(t: &CoxeterTetrahedron) -> (usize, usize, usize) {
    let eig = SymmetricEigen::new(t.gram()).eigenvalues;
    let pos = eig.iter().filter(|&&x| x > EIGEN_TOL).count();
    let neg = eig.iter().filter(|&&x| x < -EIGEN_TOL).count();
    (pos, neg, 4 - pos - neg)
}

/// Exact signature when every label is 2, 3, 4 or 6.
pub fn signature_exact(t: &CoxeterTetrahedron) -> Option<(usize, usize, usize)> {
    let mut m = vec![vec![exact::Q23::zero(); 4]; 4];
    for i in 0..4 {
        m[i][i] = exact::Q23::one();
        for j in 0..4 {
            if i != j {
                m[i][j] = exact::Q23::minus_cos_pi_over(t.label(i, j))?;
            }
        }
    }
    Some(exact::inertia(m))
}

pub fn realizability(t: &CoxeterTetrahedron) -> RealizabilityReport {
    let (signature, exact_signature) = match signature_exact(t) {
        Some(s) => (s, true),
        None => (signature_numeric(t), false),
    };
    let geometry: Vec<GeometryClass> = (0..4).map(|k| t.vertex_geometry(k)).collect();
    let ideal_vertices: Vec<usize> = (0..4).filter(|&k| geometry[k] == GeometryClass::Euclidean).collect();
    let class = match signature {
        (4, 0, 0) => RealizabilityClass::Spherical,
        (3, 0, 1) => RealizabilityClass::Euclidean,
        (3, 1, 0)
            if geometry
                .iter()
                .all(|g| matches!(g, GeometryClass::Spherical | GeometryClass::Euclidean)) =>
        {
            RealizabilityClass::HyperbolicFiniteVolume
        }
        _ => RealizabilityClass::NotRealizable,
    };
    RealizabilityReport {
        class,
        ideal_vertices,
        signature,
        exact_signature,
    }
}

/// `∫∫ dA / (2(1 − r²))` over the right triangle with its right angle at
/// distance `cos δ` from the centre and angle `α` at the centre.
fn right_triangle_term(alpha: f64, delta: f64) -> f64 {
    0.25 * (lobachevsky(delta + alpha) - lobachevsky(delta - alpha) + 2.0 * lobachevsky(PI / 2.0 - alpha))
}

/// Volume by putting an ideal vertex at infinity in the upper half-space.
///
/// The opposite face is the unit hemisphere and the other three faces are
/// vertical over a Euclidean triangle. Feet of perpendiculars from the
/// hemisphere's centre to the triangle's sides cut the solid into six
/// orthoschemes with one ideal vertex, counted with sign.
pub fn volume(t: &CoxeterTetrahedron) -> Result<f64, GeomError> {
    let report = realizability(t);
    if report.class != RealizabilityClass::HyperbolicFiniteVolume {
        return Err(GeomError::NotHyperbolic(report.class));
    }
    let k = *report.ideal_vertices.first().ok_or(GeomError::NoIdealVertex)?;
    let sides: Vec<usize> = (0..4).filter(|&i| i != k).collect();
    // Triangle vertex P_i sits opposite side i, where the other two vertical
    // faces meet; its angle is their dihedral angle.
    let angle = |i: usize| {
        let o: Vec<usize> = sides.iter().copied().filter(|&j| j != sides[i]).collect();
        t.angle(o[0], o[1])
    };
    let a = [angle(0), angle(1), angle(2)];
    // Signed distance from the centre to side i is cos of its angle with the hemisphere.
    let h: Vec<f64> = (0..3).map(|i| t.angle(sides[i], k).cos()).collect();
    let prod: f64 = a.iter().map(|x| x.sin()).product();
    let scale = (0..3).map(|i| a[i].sin() * h[i]).sum::<f64>() / prod;
    let len: Vec<f64> = a.iter().map(|x| scale * x.sin()).collect();
    // P1 at the origin, P2 along the x-axis, P0 above: counterclockwise.
    let p = [
        [len[2] * a[1].cos(), len[2] * a[1].sin()],
        [0.0, 0.0],
        [len[0], 0.0],
    ];
    let cy = h[0];
    let cx = (h[2] + h[0] * a[1].cos()) / a[1].sin();
    let mut vol = 0.0;
    // Side i runs from P_{i+1} to P_{i+2}, interior on the left.
    for i in 0..3 {
        let (w1, w2) = (p[(i + 1) % 3], p[(i + 2) % 3]);
        let len_i = ((w2[0] - w1[0]).powi(2) + (w2[1] - w1[1]).powi(2)).sqrt();
        let u = [(w2[0] - w1[0]) / len_i, (w2[1] - w1[1]) / len_i];
        let n = [-u[1], u[0]];
        let hi = (cx - w1[0]) * n[0] + (cy - w1[1]) * n[1];
        let foot = [cx - hi * n[0], cy - hi * n[1]];
        let along = |w: [f64; 2]| (w[0] - foot[0]) * u[0] + (w[1] - foot[1]) * u[1];
        let delta = t.angle(sides[i], k);
        let term = |w: [f64; 2]| right_triangle_term(along(w).atan2(hi.abs()), delta);
        vol += hi.signum() * (term(w2) - term(w1));
    }
    Ok(vol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra(c: [u32; 3], l: [u32; 3]) -> CoxeterTetrahedron {
        CoxeterTetrahedron::from_pattern(&TetraPattern::new(c, l).unwrap())
    }

    fn permutations4() -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        if (0..4).all(|i| (0..4).filter(|&j| p[j] == i).count() == 1) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn survivors_are_hyperbolic_with_one_cusp() {
        for l in [[2, 2, 3], [2, 2, 5]] {
            let r = realizability(&tetra([2, 3, 6], l));
            assert_eq!(r.class, RealizabilityClass::HyperbolicFiniteVolume);
            assert_eq!(r.ideal_vertices, vec![3]);
        }
    }

    #[test]
    fn all_twos_is_spherical() {
        let t = CoxeterTetrahedron::new([2; 6]).unwrap();
        let r = realizability(&t);
        assert_eq!(r.class, RealizabilityClass::Spherical);
        assert_eq!(r.signature, (4, 0, 0));
        assert_eq!(signature_numeric(&t), (4, 0, 0));
    }

    #[test]
    fn exact_and_numeric_agree_when_clear() {
        let ls = [2, 3, 4, 6];
        for i in 0..4096usize {
            let labels = [0, 1, 2, 3, 4, 5].map(|k| ls[(i >> (2 * k)) & 3]);
            let t = CoxeterTetrahedron::new(labels).unwrap();
            let eig = SymmetricEigen::new(t.gram()).eigenvalues;
            if eig.iter().all(|x| x.abs() > 1e-9) {
                assert_eq!(signature_exact(&t), Some(signature_numeric(&t)), "{labels:?}");
            }
        }
    }

    #[test]
    fn realizability_ignores_vertex_names() {
        let ts = [
            tetra([2, 3, 6], [2, 2, 3]),
            tetra([2, 3, 6], [2, 2, 5]),
            tetra([4, 4, 2], [3, 2, 2]),
            tetra([3, 3, 3], [2, 2, 4]),
            CoxeterTetrahedron::new([2, 3, 5, 2, 7, 3]).unwrap(),
        ];
        for t in ts {
            let base = realizability(&t);
            for p in permutations4() {
                let r = realizability(&t.permuted(p));
                assert_eq!(r.class, base.class);
                assert_eq!(r.signature, base.signature);
                let mut ideal: Vec<usize> = base.ideal_vertices.iter().map(|&v| p[v]).collect();
                ideal.sort();
                assert_eq!(r.ideal_vertices, ideal);
            }
        }
    }

    #[test]
    fn volume_errors() {
        let t = CoxeterTetrahedron::new([2; 6]).unwrap();
        assert_eq!(volume(&t), Err(GeomError::NotHyperbolic(RealizabilityClass::Spherical)));
        assert!(CoxeterTetrahedron::new([1, 2, 2, 2, 2, 2]).is_err());
    }

    #[test]
    fn known_simplex_volume() {
        // The [3,3,6] simplex.
        let v = volume(&tetra([2, 3, 6], [2, 2, 3])).unwrap();
        assert!((v - 0.042_289_233_6).abs() < 1e-9, "{v}");
        let degree = 2.029_883_212_8 / (2.0 * v);
        assert!((degree - degree.round()).abs() < 1e-4);
        assert_eq!(degree.round(), 24.0);
    }

    #[test]
    fn volume_ignores_vertex_names() {
        let t = tetra([2, 3, 6], [2, 2, 5]);
        let v = volume(&t).unwrap();
        for p in permutations4() {
            assert!((volume(&t.permuted(p)).unwrap() - v).abs() < 1e-12);
        }
    }
}
