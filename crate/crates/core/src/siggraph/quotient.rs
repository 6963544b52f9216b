use serde::Serialize;
use thiserror::Error;

use super::faces::{regions, Side as RegionSide};
use super::symmetry::automorphisms;
use super::{GraphBuilder, GraphError, Involution, LabeledGraph, VertexKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuotientError {
    #[error("map is not a nontrivial involution of the graph")]
    NotAnInvolution,
    #[error("only rotations about a line in P are supported: {0}")]
    Unsupported(&'static str),
    #[error("quotient is malformed: {0}")]
    Malformed(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CellRef {
    Vertex(u32),
    Edge(u32),
    /// Complementary region of the P-graph, by index in the face walk.
    Region(usize),
    /// Arc of the boundary circle between two peripheral ends.
    Boundary(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quotient {
    pub graph: LabeledGraph,
    /// Each quotient cell with the source cells it came from.
    pub provenance: Vec<(CellRef, Vec<CellRef>)>,
    /// Quotient cells coming from two-element orbits.
    pub free_cells: usize,
    /// Source cells mapped to themselves.
    pub fixed_cells: usize,
}

/// Quotient of a P-embedded graph by a rotation of order two about an axis in
/// P. Cells on the axis pick up the doubled local group: a pointwise-fixed edge
/// doubles its label, an inverted edge is cut at a new vertex, and each
/// invariant region contributes a new edge of label 2.
pub fn quotient_by_involution(g: &LabeledGraph, tau: &Involution) -> Result<Quotient, QuotientError> {
    if tau.is_identity() || !tau.is_involution() || !automorphisms(g).contains(tau) {
        return Err(QuotientError::NotAnInvolution);
    }
    if g.edges().iter().any(|e| e.transverse.is_some()) || (0..g.vertex_count()).any(|v| !g.in_plane(v)) {
        return Err(QuotientError::Unsupported("graph must lie in P"));
    }
    if !tau.reverses_rotation {
        return Err(QuotientError::Unsupported("involution preserves the rotation"));
    }

    let mut b = GraphBuilder::new();
    let mut provenance = Vec::new();
    let mut free_cells = 0;
    let mut fixed_cells = 0;
    let vid = |v: usize| g.vertices()[v].id;
    let eid = |e: usize| g.edges()[e].id;

    let mut qv = vec![usize::MAX; g.vertex_count()];
    for v in 0..g.vertex_count() {
        let w = tau.vertex_map[v];
        if w < v {
            qv[v] = qv[w];
            continue;
        }
        let q = b.vertex(g.kind(v));
        qv[v] = q;
        let mut src = vec![CellRef::Vertex(vid(v))];
        if w == v {
            fixed_cells += 1;
        } else {
            free_cells += 1;
            src.push(CellRef::Vertex(vid(w)));
        }
        provenance.push((CellRef::Vertex(q as u32), src));
    }

    let mut qe_count = 0u32;
    let mut midpoint = vec![None; g.edge_count()];
    let mut pending_edges = Vec::new();
    for e in 0..g.edge_count() {
        let f = tau.edge_map[e];
        if f < e {
            continue;
        }
        let edge = &g.edges()[e];
        let [u, v] = edge.ends;
        if f != e {
            free_cells += 1;
            pending_edges.push((qv[u], qv[v], edge.label, vec![CellRef::Edge(eid(e)), CellRef::Edge(eid(f))]));
        } else if !tau.flips[e] {
            fixed_cells += 1;
            pending_edges.push((qv[u], qv[v], 2 * edge.label, vec![CellRef::Edge(eid(e))]));
        } else {
            fixed_cells += 1;
            let m = b.vertex(VertexKind::Interior);
            provenance.push((CellRef::Vertex(m as u32), vec![CellRef::Edge(eid(e))]));
            midpoint[e] = Some(m);
            pending_edges.push((qv[u], m, edge.label, vec![CellRef::Edge(eid(e))]));
        }
    }

    let rm = regions(g);
    let mut boundary_end = vec![None; rm.boundary_count];
    let image = |s: RegionSide| -> RegionSide {
        match s {
            RegionSide::Dart(d) => RegionSide::Dart(tau.dart(d).opposite()),
            b => b,
        }
    };
    let mut axis = Vec::new();
    for (r, region) in rm.regions.iter().enumerate() {
        let s = &region.sides;
        let len = s.len();
        let RegionSide::Dart(d0) = s.iter().copied().find(|x| matches!(x, RegionSide::Dart(_))).unwrap() else {
            unreachable!()
        };
        let i0 = s.iter().position(|&x| x == RegionSide::Dart(d0)).unwrap();
        let target = rm.region_of(tau.dart(d0).opposite()).expect("P dart");
        if target != r {
            continue;
        }
        let j = s.iter().position(|&x| x == image(RegionSide::Dart(d0))).unwrap();
        let c = (i0 + j) % len;
        if (0..len).any(|i| image(s[i]) != s[(c + len - i) % len]) {
            return Err(QuotientError::Unsupported("region boundary is not reflected"));
        }
        let mut ends = Vec::new();
        for i in 0..len {
            if (2 * i) % len == c % len {
                match s[i] {
                    RegionSide::Dart(d) => ends.push(midpoint[d.edge].expect("inverted edge")),
                    RegionSide::Boundary(bi) => {
                        let p = *boundary_end[bi].get_or_insert_with(|| {
                            let p = b.vertex(VertexKind::PeripheralEnd);
                            provenance.push((CellRef::Vertex(p as u32), vec![CellRef::Boundary(bi)]));
                            p
                        });
                        ends.push(p);
                    }
                }
            }
            if (2 * i + 1) % len == c % len {
                let (RegionSide::Dart(_), RegionSide::Dart(next)) = (s[i], s[(i + 1) % len]) else {
                    return Err(QuotientError::Unsupported("axis meets a peripheral corner"));
                };
                ends.push(qv[g.origin(next)]);
            }
        }
        if ends.len() != 2 {
            return Err(QuotientError::Unsupported("invariant region without two axis points"));
        }
        axis.push((ends[0], ends[1], r));
    }

    for (u, v, label, src) in pending_edges {
        let e = b.edge(u, v, label);
        qe_count += 1;
        provenance.push((CellRef::Edge(e as u32), src));
    }
    for (u, v, r) in axis {
        let e = b.edge(u, v, 2);
        qe_count += 1;
        provenance.push((CellRef::Edge(e as u32), vec![CellRef::Region(r)]));
    }
    debug_assert_eq!(qe_count as usize, provenance.iter().filter(|(c, _)| matches!(c, CellRef::Edge(_))).count());
    let graph = b.build()?;
    provenance.sort();
    Ok(Quotient {
        graph,
        provenance,
        free_cells,
        fixed_cells,
    })
}
