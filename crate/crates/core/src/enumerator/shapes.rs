use std::collections::BTreeMap;

use super::grow::{grow, Node, Partial};
use super::EnumError;
use crate::barrier::generic_holds;
use crate::siggraph::faces::{is_disk_embedded, regions, Side as RegionSide};
use crate::siggraph::{map_code, Dart, GraphBuilder, LabeledGraph, VertexKind};

/// Connected disk graphs with `boundary_vertices` leaves on the circle and
/// at most `max_interior_vertices` trivalent vertices that satisfy the
/// Generic barrier rule and the outermost-arc rule, one per map up to
/// mirror image, all labels 2.
pub fn enumerate_shapes(boundary_vertices: usize, max_interior_vertices: usize) -> Result<Vec<LabeledGraph>, EnumError> {
    if !(3..=4).contains(&boundary_vertices) {
        return Err(EnumError::BoundaryCount(boundary_vertices));
    }
    if max_interior_vertices < 2 {
        return Err(EnumError::InteriorBound(max_interior_vertices));
    }
    let leaves = vec![0u8; boundary_vertices];
    let ends: Vec<usize> = (0..boundary_vertices).collect();
    let prune = |p: &Partial| !generic_holds(p.nodes.len(), &p.edges, &ends);
    let abstract_graphs = grow(Partial::new(&leaves), max_interior_vertices, &prune);
    let mut found: BTreeMap<Vec<u32>, LabeledGraph> = BTreeMap::new();
    for p in &abstract_graphs {
        for g in disk_embeddings(p) {
            if outermost_rule_holds(&g) {
                found.entry(map_code(&g)).or_insert(g);
            }
        }
    }
    Ok(found.into_values().collect())
}

/// Every rotation system on `p` with all vertices in P that sits in a disk.
pub(crate) fn disk_embeddings(p: &Partial) -> Vec<LabeledGraph> {
    let n = p.nodes.len();
    let mut darts = vec![Vec::new(); n];
    for (i, &(a, b)) in p.edges.iter().enumerate() {
        darts[a].push(Dart::new(i, 0));
        darts[b].push(Dart::new(i, 1));
    }
    let inner: Vec<usize> = (0..n).filter(|&v| p.nodes[v] == Node::Inner).collect();
    let mut out = Vec::new();
    // The first inner vertex keeps one orientation; mirrors are identified later.
    let free = inner.len().saturating_sub(1);
    for mask in 0u64..(1 << free) {
        let mut b = GraphBuilder::new();
        for node in &p.nodes {
            b.vertex(match node {
                Node::Leaf(_) => VertexKind::PeripheralEnd,
                Node::Inner => VertexKind::Interior,
            });
        }
        for &(a, c) in &p.edges {
            b.edge(a, c, 2);
        }
        for v in 0..n {
            let mut r = darts[v].clone();
            if let Some(j) = inner.iter().position(|&u| u == v) {
                if j > 0 && mask >> (j - 1) & 1 == 1 {
                    r.swap(1, 2);
                }
            }
            b.rotation(v, r);
        }
        let g = b.build().expect("grown graphs are valid");
        if is_disk_embedded(&g) {
            out.push(g);
        }
    }
    out
}

/// Loop-erased length of each boundary sector's walk is three edges.
pub(crate) fn outermost_rule_holds(g: &LabeledGraph) -> bool {
    let rm = regions(g);
    rm.regions.iter().filter(|r| r.touches_boundary()).all(|r| {
        let darts: Vec<Dart> = r
            .sides
            .iter()
            .filter_map(|s| match s {
                RegionSide::Dart(d) => Some(*d),
                RegionSide::Boundary(_) => None,
            })
            .collect();
        let Some(first) = darts.first() else { return false };
        let mut path = vec![g.origin(*first)];
        for d in &darts {
            let w = g.origin(d.opposite());
            if let Some(k) = path.iter().position(|&x| x == w) {
                path.truncate(k + 1);
            } else {
                path.push(w);
            }
        }
        path.len() == 4
    })
}
