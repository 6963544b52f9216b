use serde::Serialize;

use super::{Dart, LabeledGraph, VertexKind};

/// A side of a region of P cut along the P-edges: an edge-end (the region
/// lies to its left under the face walk) or an arc of the boundary circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    Dart(Dart),
    Boundary(usize),
}

/// One complementary region of the P-graph inside the disk. Regions touching
/// the boundary circle are split at the peripheral ends lying in P.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Region {
    pub sides: Vec<Side>,
}

impl Region {
    pub fn touches_boundary(&self) -> bool {
        self.sides.iter().any(|s| matches!(s, Side::Boundary(_)))
    }
}

pub(crate) struct RegionMap {
    pub regions: Vec<Region>,
    /// Region index per dart, indexed `2 * edge + end`.
    pub of_dart: Vec<Option<usize>>,
    pub boundary_count: usize,
}

impl RegionMap {
    pub fn region_of(&self, d: Dart) -> Option<usize> {
        self.of_dart[2 * d.edge + d.end as usize]
    }
}

fn next_around(g: &LabeledGraph, d: Dart) -> Dart {
    let v = g.origin(d);
    let rot = g.rotation(v).expect("P dart has a rotation");
    let i = rot.iter().position(|&x| x == d).expect("dart in rotation");
    rot[(i + 1) % rot.len()]
}

/// Successor of `d` in its face walk.
pub(crate) fn face_next(g: &LabeledGraph, d: Dart) -> Dart {
    next_around(g, d.opposite())
}

pub(crate) fn p_darts(g: &LabeledGraph) -> Vec<Dart> {
    let mut out = Vec::new();
    for e in 0..g.edge_count() {
        if g.is_p_edge(e) {
            out.push(Dart::new(e, 0));
            out.push(Dart::new(e, 1));
        }
    }
    out
}

/// Raw face orbits of the rotation system on P-darts.
pub(crate) fn face_orbits(g: &LabeledGraph) -> Vec<Vec<Dart>> {
    let mut seen = vec![false; 2 * g.edge_count()];
    let mut orbits = Vec::new();
    for d in p_darts(g) {
        if seen[2 * d.edge + d.end as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = d;
        loop {
            seen[2 * x.edge + x.end as usize] = true;
            orbit.push(x);
            x = face_next(g, x);
            if x == d {
                break;
            }
        }
        orbits.push(orbit);
    }
    orbits
}

pub(crate) fn regions(g: &LabeledGraph) -> RegionMap {
    let mut regions = Vec::new();
    let mut boundary_count = 0;
    for orbit in face_orbits(g) {
        let mut sides = Vec::new();
        for &d in &orbit {
            sides.push(Side::Dart(d));
            if g.kind(g.origin(d.opposite())) == VertexKind::PeripheralEnd {
                sides.push(Side::Boundary(boundary_count));
                boundary_count += 1;
            }
        }
        let cuts: Vec<usize> = sides
            .iter()
            .enumerate()
            .filter(|(_, s)| matches!(s, Side::Boundary(_)))
            .map(|(i, _)| i)
            .collect();
        if cuts.is_empty() {
            regions.push(Region { sides });
            continue;
        }
        for (j, &c) in cuts.iter().enumerate() {
            let prev = if j == 0 { cuts[cuts.len() - 1] } else { cuts[j - 1] };
            let mut part = Vec::new();
            let mut i = (prev + 1) % sides.len();
            loop {
                part.push(sides[i]);
                if i == c {
                    break;
                }
                i = (i + 1) % sides.len();
            }
            regions.push(Region { sides: part });
        }
    }
    let mut of_dart = vec![None; 2 * g.edge_count()];
    for (r, region) in regions.iter().enumerate() {
        for s in &region.sides {
            if let Side::Dart(d) = s {
                of_dart[2 * d.edge + d.end as usize] = Some(r);
            }
        }
    }
    RegionMap {
        regions,
        of_dart,
        boundary_count,
    }
}

/// Euler characteristic check of the P-part: vertices in P minus isolated
/// anchored marks, P-edges, and raw face orbits.
pub(crate) fn p_genus_zero(g: &LabeledGraph) -> bool {
    let v = (0..g.vertex_count())
        .filter(|&v| g.in_plane(v) && !g.p_darts_at(v).is_empty())
        .count() as i64;
    let e = (0..g.edge_count()).filter(|&e| g.is_p_edge(e)).count() as i64;
    let f = face_orbits(g).len() as i64;
    v == 0 || v - e + f == 2
}

/// Genus zero with every peripheral end of P on one face, so the P-part sits
/// in a disk whose boundary circle runs through that face.
pub(crate) fn is_disk_embedded(g: &LabeledGraph) -> bool {
    if !p_genus_zero(g) {
        return false;
    }
    let ends: Vec<usize> = g
        .peripheral_ends()
        .into_iter()
        .filter(|&v| g.in_plane(v))
        .collect();
    if ends.is_empty() {
        return true;
    }
    face_orbits(g).iter().any(|orbit| {
        ends.iter()
            .all(|&p| orbit.iter().any(|&d| g.origin(d.opposite()) == p))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::siggraph::{from_tetra, TetraPattern};

    #[test]
    fn tetra_regions() {
        let g = from_tetra(&TetraPattern::new([2, 3, 6], [2, 2, 3]).unwrap());
        let m = regions(&g);
        assert_eq!(m.boundary_count, 3);
        // inner triangle plus three boundary sectors
        assert_eq!(m.regions.len(), 4);
        assert_eq!(m.regions.iter().filter(|r| r.touches_boundary()).count(), 3);
        assert!(p_genus_zero(&g));
        assert!(is_disk_embedded(&g));
        let inner = m.regions.iter().find(|r| !r.touches_boundary()).unwrap();
        assert_eq!(inner.sides.len(), 3);
        for r in m.regions.iter().filter(|r| r.touches_boundary()) {
            // peripheral edge out and back, one triangle side, one arc
            assert_eq!(r.sides.len(), 4);
        }
    }
}
