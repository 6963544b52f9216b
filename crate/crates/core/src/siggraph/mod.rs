//! Labeled embedded graphs modeling the singular locus of a one-cusped
//! orientable 3-orbifold whose underlying space is a ball.
//!
//! Vertices carrying a rotation lie in the reflection disk P. Edges whose ends
//! both lie in P are P-edges; a transverse edge leaves a [`VertexKind::PunctureMark`]
//! (always `ends[0]`) on the `+` or `-` side of P. Peripheral edges end at a
//! [`VertexKind::PeripheralEnd`]; the ideal vertex itself is not represented.

mod canon;
pub(crate) mod faces;
mod format;
mod quotient;
mod symmetry;
mod tetra;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::orb2d::{geometry_type, GeometryClass, TwoOrbifold};

pub use canon::{canonical_code, canonical_order, CanonicalCode};
pub(crate) use canon::map_code;
pub(crate) use symmetry::shape_automorphisms;
pub use faces::{Region, Side as RegionSide};
pub use format::{dump, load};
pub use quotient::{quotient_by_involution, CellRef, Quotient};
pub use symmetry::{automorphisms, symmetries, Automorphism, Involution};
pub use tetra::{as_tetra, from_tetra, TetraPattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VertexKind {
    Interior,
    PeripheralEnd,
    PunctureMark,
}

impl VertexKind {
    pub fn keyword(self) -> &'static str {
        match self {
            VertexKind::Interior => "interior",
            VertexKind::PeripheralEnd => "peripheral",
            VertexKind::PunctureMark => "puncture",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Side::Plus => '+',
            Side::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub id: u32,
    pub kind: VertexKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub id: u32,
    /// Vertex indices. For a transverse edge `ends[0]` is the puncture mark.
    pub ends: [usize; 2],
    pub label: u32,
    pub transverse: Option<Side>,
}

/// An edge-end: the half of edge `edge` at `edges[edge].ends[end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Dart {
    pub edge: usize,
    pub end: u8,
}

impl Dart {
    pub fn new(edge: usize, end: u8) -> Self {
        Dart { edge, end }
    }

    pub fn opposite(self) -> Dart {
        Dart {
            edge: self.edge,
            end: 1 - self.end,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {0} has label {1} < 2")]
    LabelTooSmall(u32, u32),
    #[error("vertex {id} ({kind:?}) has valence {valence}")]
    Valence { id: u32, kind: VertexKind, valence: usize },
    #[error("puncture mark {0} must carry one + and one - transverse half")]
    PunctureSides(u32),
    #[error("transverse edge {0} must start at a puncture mark and end off P")]
    TransverseEnds(u32),
    #[error("edge {0} joins a vertex in P to one off P without crossing transversely")]
    MixedEdge(u32),
    #[error("puncture mark {0} has no rotation; marks lie in P")]
    MarkOffPlane(u32),
    #[error("rotation at vertex {0} must list exactly its P edge-ends")]
    BadRotation(u32),
    #[error("face anchor for vertex {0} is invalid")]
    BadAnchor(u32),
    #[error("graph is not connected")]
    Disconnected,
    #[error("duplicate id {0}")]
    DuplicateId(u32),
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("vertex {0} is not a trivalent vertex of the singular locus")]
    NotTrivalent(u32),
    #[error("cusp {0} is not a Euclidean turnover")]
    NotEuclideanCusp(String),
    #[error("graph has no peripheral edge")]
    NoPeripheralEdge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    rotation: Vec<Option<Vec<Dart>>>,
    anchors: Vec<(usize, Dart)>,
    #[serde(skip)]
    incidence: Vec<Vec<Dart>>,
}

/// Incremental construction; [`GraphBuilder::build`] validates all invariants.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    rotation: Vec<Option<Vec<Dart>>>,
    anchors: Vec<(usize, Dart)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex lying off P. Its id is its index unless set with [`Self::vertex_with_id`].
    pub fn vertex(&mut self, kind: VertexKind) -> usize {
        let id = self.vertices.len() as u32;
        self.vertex_with_id(id, kind)
    }

    pub fn vertex_with_id(&mut self, id: u32, kind: VertexKind) -> usize {
        self.vertices.push(Vertex { id, kind });
        self.rotation.push(None);
        self.vertices.len() - 1
    }

    pub fn edge(&mut self, a: usize, b: usize, label: u32) -> usize {
        let id = self.edges.len() as u32;
        self.edge_with_id(id, a, b, label, None)
    }

    /// Transverse half from puncture mark `mark` to `other` on `side`.
    pub fn transverse(&mut self, mark: usize, other: usize, label: u32, side: Side) -> usize {
        let id = self.edges.len() as u32;
        self.edge_with_id(id, mark, other, label, Some(side))
    }

    pub fn edge_with_id(&mut self, id: u32, a: usize, b: usize, label: u32, transverse: Option<Side>) -> usize {
        self.edges.push(Edge {
            id,
            ends: [a, b],
            label,
            transverse,
        });
        self.edges.len() - 1
    }

    /// Places `v` in P with the given cyclic order of its P edge-ends.
    pub fn rotation(&mut self, v: usize, darts: Vec<Dart>) {
        self.rotation[v] = Some(darts);
    }

    pub fn anchor(&mut self, mark: usize, dart: Dart) {
        self.anchors.push((mark, dart));
    }

    pub fn set_label(&mut self, e: usize, label: u32) {
        self.edges[e].label = label;
    }

    pub fn build(self) -> Result<LabeledGraph, GraphError> {
        let g = self.build_unchecked_connectivity()?;
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Validates everything except connectivity. The enumerators use this for
    /// assembled loci that they then reject for other reasons.
    pub fn build_unchecked_connectivity(self) -> Result<LabeledGraph, GraphError> {
        let mut g = LabeledGraph {
            vertices: self.vertices,
            edges: self.edges,
            rotation: self.rotation,
            anchors: self.anchors,
            incidence: Vec::new(),
        };
        g.anchors.sort();
        g.validate()?;
        Ok(g)
    }
}

impl LabeledGraph {
    fn validate(&mut self) -> Result<(), GraphError> {
        let nv = self.vertices.len();
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.id) {
                return Err(GraphError::DuplicateId(v.id));
            }
        }
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            if !seen.insert(e.id) {
                return Err(GraphError::DuplicateId(e.id));
            }
            if e.ends.iter().any(|&v| v >= nv) {
                return Err(GraphError::UnknownVertex(e.ends[0].max(e.ends[1])));
            }
            if e.label < 2 {
                return Err(GraphError::LabelTooSmall(e.id, e.label));
            }
        }
        let mut incidence = vec![Vec::new(); nv];
        for (i, e) in self.edges.iter().enumerate() {
            incidence[e.ends[0]].push(Dart::new(i, 0));
            incidence[e.ends[1]].push(Dart::new(i, 1));
        }
        self.incidence = incidence;

        for (i, v) in self.vertices.iter().enumerate() {
            let valence = self.incidence[i].len();
            let ok = match v.kind {
                VertexKind::Interior => valence == 3,
                VertexKind::PeripheralEnd => valence == 1,
                VertexKind::PunctureMark => valence == 2 || valence == 3,
            };
            if !ok {
                return Err(GraphError::Valence {
                    id: v.id,
                    kind: v.kind,
                    valence,
                });
            }
            if v.kind == VertexKind::PunctureMark {
                if self.rotation[i].is_none() {
                    return Err(GraphError::MarkOffPlane(v.id));
                }
                let sides: Vec<Side> = self.incidence[i]
                    .iter()
                    .filter(|d| d.end == 0)
                    .filter_map(|d| self.edges[d.edge].transverse)
                    .collect();
                let plus = sides.iter().filter(|&&s| s == Side::Plus).count();
                let minus = sides.iter().filter(|&&s| s == Side::Minus).count();
                if plus != 1 || minus != 1 {
                    return Err(GraphError::PunctureSides(v.id));
                }
            }
        }

        for e in &self.edges {
            let in_p = |v: usize| self.rotation[v].is_some();
            match e.transverse {
                Some(_) => {
                    let [m, o] = e.ends;
                    if self.vertices[m].kind != VertexKind::PunctureMark || in_p(o) {
                        return Err(GraphError::TransverseEnds(e.id));
                    }
                }
                None => {
                    if in_p(e.ends[0]) != in_p(e.ends[1]) {
                        return Err(GraphError::MixedEdge(e.id));
                    }
                }
            }
        }

        for v in 0..nv {
            if let Some(rot) = &self.rotation[v] {
                let mut expected: Vec<Dart> = self.p_darts_at(v);
                let mut given = rot.clone();
                expected.sort();
                given.sort();
                if expected != given {
                    return Err(GraphError::BadRotation(self.vertices[v].id));
                }
            }
        }

        for &(m, d) in &self.anchors {
            let ok = m < nv
                && self.vertices[m].kind == VertexKind::PunctureMark
                && self.p_darts_at(m).is_empty()
                && d.edge < self.edges.len()
                && self.is_p_edge(d.edge);
            if !ok {
                return Err(GraphError::BadAnchor(self.vertices.get(m).map(|v| v.id).unwrap_or(0)));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.vertices[v].kind
    }

    pub fn label(&self, e: usize) -> u32 {
        self.edges[e].label
    }

    pub fn rotation(&self, v: usize) -> Option<&[Dart]> {
        self.rotation[v].as_deref()
    }

    pub fn anchors(&self) -> &[(usize, Dart)] {
        &self.anchors
    }

    pub fn anchor_of(&self, v: usize) -> Option<Dart> {
        self.anchors.iter().find(|(m, _)| *m == v).map(|&(_, d)| d)
    }

    pub fn vertex_index(&self, id: u32) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: u32) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn origin(&self, d: Dart) -> usize {
        self.edges[d.edge].ends[d.end as usize]
    }

    pub fn darts_at(&self, v: usize) -> &[Dart] {
        &self.incidence[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn in_plane(&self, v: usize) -> bool {
        self.rotation[v].is_some()
    }

    /// Both ends in P and not transverse.
    pub fn is_p_edge(&self, e: usize) -> bool {
        let edge = &self.edges[e];
        edge.transverse.is_none() && self.in_plane(edge.ends[0]) && self.in_plane(edge.ends[1])
    }

    pub fn p_darts_at(&self, v: usize) -> Vec<Dart> {
        self.incidence[v]
            .iter()
            .copied()
            .filter(|d| self.is_p_edge(d.edge))
            .collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incidence[v].iter().map(move |d| self.origin(d.opposite()))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Interior vertices and trivalent puncture marks: the vertices of the
    /// singular locus that have a spherical link.
    pub fn is_trivalent_vertex(&self, v: usize) -> bool {
        match self.vertices[v].kind {
            VertexKind::Interior => true,
            VertexKind::PunctureMark => self.valence(v) == 3,
            VertexKind::PeripheralEnd => false,
        }
    }

    pub fn trivalent_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.is_trivalent_vertex(v)).collect()
    }

    pub fn puncture_marks(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.vertices[v].kind == VertexKind::PunctureMark)
            .collect()
    }

    pub fn peripheral_ends(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.vertices[v].kind == VertexKind::PeripheralEnd)
            .collect()
    }

    /// Edges incident to a peripheral end.
    pub fn peripheral_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| {
                self.edges[e]
                    .ends
                    .iter()
                    .any(|&v| self.vertices[v].kind == VertexKind::PeripheralEnd)
            })
            .collect()
    }

    /// Edges of the ambient orbifold: the two halves at a valence-2 puncture
    /// mark form one edge.
    pub fn ambient_edge_count(&self) -> usize {
        let merged = self
            .puncture_marks()
            .into_iter()
            .filter(|&m| self.valence(m) == 2)
            .count();
        self.edges.len() - merged
    }

    pub fn relabeled(&self, labels: &[u32]) -> Result<LabeledGraph, GraphError> {
        let mut g = self.clone();
        for (e, &l) in g.edges.iter_mut().zip(labels) {
            e.label = l;
        }
        g.validate()?;
        Ok(g)
    }
}

/// `S²(a,b,c)` from the three edge-ends at `v`.
pub fn vertex_link(g: &LabeledGraph, v: usize) -> Result<TwoOrbifold, GraphError> {
    if v >= g.vertex_count() {
        return Err(GraphError::UnknownVertex(v));
    }
    if !g.is_trivalent_vertex(v) {
        return Err(GraphError::NotTrivalent(g.vertices[v].id));
    }
    let labels: Vec<u32> = g.darts_at(v).iter().map(|d| g.label(d.edge)).collect();
    Ok(TwoOrbifold::sphere(&labels).expect("labels validated"))
}

pub fn check_spherical_links(g: &LabeledGraph) -> bool {
    g.trivalent_vertices().into_iter().all(|v| {
        geometry_type(&vertex_link(g, v).expect("trivalent")) == GeometryClass::Spherical
    })
}

pub fn cusp_cross_section(g: &LabeledGraph) -> Result<TwoOrbifold, GraphError> {
    let mut orders = Vec::new();
    for p in g.peripheral_ends() {
        for d in g.darts_at(p) {
            orders.push(g.label(d.edge));
        }
    }
    if orders.is_empty() {
        return Err(GraphError::NoPeripheralEdge);
    }
    Ok(TwoOrbifold::sphere(&orders).expect("labels validated"))
}
