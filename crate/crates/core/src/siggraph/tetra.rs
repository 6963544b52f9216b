use std::fmt;

use serde::Serialize;

use super::{Dart, GraphBuilder, GraphError, LabeledGraph, VertexKind};
use crate::orb2d::{is_euclidean_turnover, TwoOrbifold};

/// Labeling of the singular locus of a tetrahedron with one ideal vertex.
///
/// `cusp_orders[i]` labels the peripheral edge at triangle vertex `i`;
/// `interior_labels[i]` labels the triangle edge opposite vertex `i`, so the
/// triple reads `(l_bc, l_ca, l_ab)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TetraPattern {
    cusp_orders: [u32; 3],
    interior_labels: [u32; 3],
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

impl TetraPattern {
    pub fn new(cusp_orders: [u32; 3], interior_labels: [u32; 3]) -> Result<Self, GraphError> {
        for &l in cusp_orders.iter().chain(&interior_labels) {
            if l < 2 {
                return Err(GraphError::LabelTooSmall(0, l));
            }
        }
        let cusp = TwoOrbifold::sphere(&cusp_orders).expect("orders checked");
        if !is_euclidean_turnover(&cusp) {
            return Err(GraphError::NotEuclideanCusp(cusp.to_string()));
        }
        Ok(TetraPattern {
            cusp_orders,
            interior_labels,
        })
    }

    pub fn cusp_orders(&self) -> [u32; 3] {
        self.cusp_orders
    }

    pub fn interior_labels(&self) -> [u32; 3] {
        self.interior_labels
    }

    pub fn cusp(&self) -> TwoOrbifold {
        TwoOrbifold::sphere(&self.cusp_orders).expect("validated")
    }

    /// Labels `(l_ab, l_ca, l_bc)` of the triangle edges meeting vertex `i`.
    pub fn labels_at(&self, i: usize) -> [u32; 2] {
        let [bc, ca, ab] = self.interior_labels;
        match i {
            0 => [ab, ca],
            1 => [ab, bc],
            _ => [ca, bc],
        }
    }

    pub fn permuted(&self, p: [usize; 3]) -> TetraPattern {
        TetraPattern {
            cusp_orders: [self.cusp_orders[p[0]], self.cusp_orders[p[1]], self.cusp_orders[p[2]]],
            interior_labels: [
                self.interior_labels[p[0]],
                self.interior_labels[p[1]],
                self.interior_labels[p[2]],
            ],
        }
    }

    /// Equivalent pattern with ascending cusp orders and lexicographically
    /// smallest interior labels.
    pub fn normalized(&self) -> TetraPattern {
        PERMUTATIONS
            .iter()
            .map(|&p| self.permuted(p))
            .filter(|t| t.cusp_orders[0] <= t.cusp_orders[1] && t.cusp_orders[1] <= t.cusp_orders[2])
            .min_by_key(|t| t.interior_labels)
            .expect("some permutation sorts the cusp")
    }

    pub fn equivalent(&self, other: &TetraPattern) -> bool {
        self.normalized() == other.normalized()
    }

    /// Which cusp orders each interior edge joins, e.g. `edge(2,3)=3`.
    pub fn incidence_description(&self) -> String {
        let [a, b, c] = self.cusp_orders;
        let [bc, ca, ab] = self.interior_labels;
        format!("edge({a},{b})={ab} edge({c},{a})={ca} edge({b},{c})={bc}")
    }
}

impl fmt::Display for TetraPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.cusp_orders;
        let [x, y, z] = self.interior_labels;
        write!(f, "({a},{b},{c}; {x},{y},{z})")
    }
}

/// Vertex order: triangle vertices 0..3, then peripheral ends 3..6.
/// Edge order: peripheral edges 0..3, then `bc`, `ca`, `ab`.
pub fn from_tetra(p: &TetraPattern) -> LabeledGraph {
    let mut b = GraphBuilder::new();
    let tri: Vec<usize> = (0..3).map(|_| b.vertex(VertexKind::Interior)).collect();
    let ends: Vec<usize> = (0..3).map(|_| b.vertex(VertexKind::PeripheralEnd)).collect();
    let per: Vec<usize> = (0..3).map(|i| b.edge(tri[i], ends[i], p.cusp_orders[i])).collect();
    let [lbc, lca, lab] = p.interior_labels;
    let bc = b.edge(tri[1], tri[2], lbc);
    let ca = b.edge(tri[2], tri[0], lca);
    let ab = b.edge(tri[0], tri[1], lab);
    // Counterclockwise triangle a, b, c with peripheral edges pointing outward.
    b.rotation(tri[0], vec![Dart::new(per[0], 0), Dart::new(ab, 0), Dart::new(ca, 1)]);
    b.rotation(tri[1], vec![Dart::new(per[1], 0), Dart::new(bc, 0), Dart::new(ab, 1)]);
    b.rotation(tri[2], vec![Dart::new(per[2], 0), Dart::new(ca, 0), Dart::new(bc, 1)]);
    for i in 0..3 {
        b.rotation(ends[i], vec![Dart::new(per[i], 1)]);
    }
    b.build().expect("tetra graph is valid")
}

/// Recognizes a graph with the tetrahedral shape and reads off its pattern.
pub fn as_tetra(g: &LabeledGraph) -> Option<TetraPattern> {
    let tri = g.trivalent_vertices();
    if tri.len() != 3 || g.vertex_count() != 6 || g.edge_count() != 6 {
        return None;
    }
    if g.vertices().iter().any(|v| v.kind == VertexKind::PunctureMark) {
        return None;
    }
    let mut cusp = [0; 3];
    for (i, &v) in tri.iter().enumerate() {
        let per: Vec<_> = g
            .darts_at(v)
            .iter()
            .filter(|d| g.kind(g.origin(d.opposite())) == VertexKind::PeripheralEnd)
            .collect();
        if per.len() != 1 {
            return None;
        }
        cusp[i] = g.label(per[0].edge);
    }
    let between = |x: usize, y: usize| -> Option<u32> {
        let es: Vec<_> = g
            .darts_at(tri[x])
            .iter()
            .filter(|d| g.origin(d.opposite()) == tri[y])
            .collect();
        (es.len() == 1).then(|| g.label(es[0].edge))
    };
    let labels = [between(1, 2)?, between(2, 0)?, between(0, 1)?];
    TetraPattern::new(cusp, labels).ok()
}
