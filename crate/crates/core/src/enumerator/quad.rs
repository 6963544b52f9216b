use serde::Serialize;

use crate::citations::Citation;
use crate::orb2d::TwoOrbifold;
use crate::siggraph::{cusp_cross_section, CellRef, Dart, GraphBuilder, LabeledGraph, VertexKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateStep {
    pub rule: &'static str,
    pub citation: Citation,
    pub witness: Vec<CellRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExclusionCertificate {
    pub pattern: LabeledGraph,
    pub cusp: TwoOrbifold,
    pub steps: Vec<CertificateStep>,
}

const REGULAR: &str = "cusp S²(2,2,2,2) makes the induced cover regular and dihedral";
const FORCED: &str = "a regular dihedral cover forces the quadrilateral pattern";
const DISK: &str = "two disjoint sides labeled 2 span an essential D²(2,2)";

/// Cone over a quadrilateral with ideal cone point: a square `v0 v1 v2 v3`
/// with a pendant peripheral edge of label 2 at each corner. Sides `v0v1`
/// and `v2v3` carry 2 and the other two sides carry `n`.
pub fn forced_quadrilateral_pattern(n: u32) -> LabeledGraph {
    let mut b = GraphBuilder::new();
    let v: Vec<usize> = (0..4).map(|_| b.vertex(VertexKind::Interior)).collect();
    let p: Vec<usize> = (0..4).map(|_| b.vertex(VertexKind::PeripheralEnd)).collect();
    let legs: Vec<usize> = (0..4).map(|i| b.edge(v[i], p[i], 2)).collect();
    let sides: Vec<usize> = (0..4)
        .map(|i| b.edge(v[i], v[(i + 1) % 4], if i % 2 == 0 { 2 } else { n }))
        .collect();
    for i in 0..4 {
        let prev = sides[(i + 3) % 4];
        b.rotation(v[i], vec![Dart::new(legs[i], 0), Dart::new(sides[i], 0), Dart::new(prev, 1)]);
        b.rotation(p[i], vec![Dart::new(legs[i], 1)]);
    }
    b.build().expect("square pattern is valid")
}

pub fn exclude_quadrilateral_type() -> ExclusionCertificate {
    let g = forced_quadrilateral_pattern(3);
    let cusp = cusp_cross_section(&g).expect("has cusp");
    let eid = |e: usize| CellRef::Edge(g.edges()[e].id);
    let peripheral: Vec<CellRef> = g.peripheral_edges().into_iter().map(eid).collect();
    let square: Vec<CellRef> = (4..8).map(eid).collect();
    let witness = disjoint_two_sides(&g).expect("pattern has two disjoint 2-sides");
    let steps = vec![
        CertificateStep { rule: REGULAR, citation: Citation::RegularDihedralCover, witness: peripheral },
        CertificateStep { rule: FORCED, citation: Citation::QuadrilateralExclusion, witness: square },
        CertificateStep {
            rule: DISK,
            citation: Citation::QuadrilateralExclusion,
            witness: vec![eid(witness.0), eid(witness.1)],
        },
    ];
    ExclusionCertificate { pattern: g, cusp, steps }
}

/// First pair of vertex-disjoint non-peripheral edges labeled 2.
fn disjoint_two_sides(g: &LabeledGraph) -> Option<(usize, usize)> {
    let peripheral = g.peripheral_edges();
    let sides: Vec<usize> = (0..g.edge_count())
        .filter(|e| !peripheral.contains(e) && g.label(*e) == 2)
        .collect();
    for (i, &a) in sides.iter().enumerate() {
        for &b in &sides[i + 1..] {
            let [p, q] = g.edges()[a].ends;
            if !g.edges()[b].ends.iter().any(|&v| v == p || v == q) {
                return Some((a, b));
            }
        }
    }
    None
}

impl ExclusionCertificate {
    /// Rechecks every witness against the stored pattern.
    pub fn verify(&self) -> bool {
        let g = &self.pattern;
        let edge = |c: &CellRef| match c {
            CellRef::Edge(id) => g.edge_index(*id),
            _ => None,
        };
        let Some([regular, forced, disk]) = self.steps.get(0..3).map(|s| [&s[0], &s[1], &s[2]]) else {
            return false;
        };
        let pillowcase = TwoOrbifold::sphere(&[2, 2, 2, 2]).expect("valid");
        let cusp_ok = cusp_cross_section(g).ok() == Some(pillowcase.clone()) && self.cusp == pillowcase;
        let per = g.peripheral_edges();
        let regular_ok = regular.witness.len() == per.len()
            && regular.witness.iter().all(|c| edge(c).is_some_and(|e| per.contains(&e) && g.label(e) == 2));
        let forced_ok = forced.witness.len() == 4
            && forced.witness.iter().all(|c| edge(c).is_some_and(|e| !per.contains(&e)));
        let disk_ok = match disk.witness.as_slice() {
            [a, b] => match (edge(a), edge(b)) {
                (Some(a), Some(b)) => {
                    let [p, q] = g.edges()[a].ends;
                    a != b
                        && g.label(a) == 2
                        && g.label(b) == 2
                        && !per.contains(&a)
                        && !per.contains(&b)
                        && !g.edges()[b].ends.iter().any(|&v| v == p || v == q)
                }
                _ => false,
            },
            _ => false,
        };
        cusp_ok && regular_ok && forced_ok && disk_ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificate_witness() {
        let c = exclude_quadrilateral_type();
        assert!(c.verify());
        assert_eq!(c.cusp, TwoOrbifold::sphere(&[2, 2, 2, 2]).unwrap());
        let w = &c.steps[2].witness;
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn witness_for_every_arc_order() {
        for n in 2..=12 {
            let g = forced_quadrilateral_pattern(n);
            let (a, b) = disjoint_two_sides(&g).unwrap();
            assert_eq!((g.label(a), g.label(b)), (2, 2));
            assert!(crate::siggraph::check_spherical_links(&g));
        }
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut c = exclude_quadrilateral_type();
        c.steps[2].witness = vec![CellRef::Edge(4), CellRef::Edge(5)];
        assert!(!c.verify());
    }
}
