use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::grow::{grow, Node, Partial};
use super::{Candidate, EnumError, Invariants, Verdict};
use crate::barrier::{find_violation, Context};
use crate::homology::peripherally_generated;
use crate::orb2d::{euclidean_turnovers, triple_geometry, GeometryClass, TwoOrbifold};
use crate::siggraph::faces::{face_orbits, is_disk_embedded};
use crate::siggraph::{
    automorphisms, cusp_cross_section, map_code, shape_automorphisms, symmetries, Dart, GraphBuilder, LabeledGraph, Side, VertexKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FamilyName {
    Tetrahedral,
    Y333,
    Y244,
    XO,
}

impl FamilyName {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::Tetrahedral => "Tetrahedral",
            FamilyName::Y333 => "Y333",
            FamilyName::Y244 => "Y244",
            FamilyName::XO => "XO",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelFamily {
    pub name: FamilyName,
    /// Cusps of the members, ascending.
    pub cusps: Vec<TwoOrbifold>,
    /// Template labeled as the first member.
    pub shape: LabeledGraph,
    /// Edges carrying the free parameter; empty when there is none.
    pub parameter_edges: Vec<usize>,
    /// Admissible parameter values up to `n_max`.
    pub admissible_n: Vec<u32>,
    /// The admissible set reached the search cap.
    pub unbounded_above: bool,
    pub members: Vec<Candidate>,
}

impl ModelFamily {
    /// The template with the parameter edges set to `n`.
    pub fn instance(&self, n: u32) -> LabeledGraph {
        let mut labels: Vec<u32> = self.shape.edges().iter().map(|e| e.label).collect();
        for &e in &self.parameter_edges {
            labels[e] = n;
        }
        self.shape.relabeled(&labels).expect("labels >= 2")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Kind {
    Tripod,
    Tetra,
    TwoCone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tail {
    /// Each transverse half ends at its own peripheral end.
    Fresh,
    /// Halves on each side meet at one vertex with a peripheral leg.
    Tripod,
    /// Halves end directly at peripheral ends.
    TwoCone,
}

/// A graph in P: x0 is leaf 0, leaf marks carry tags from 1, and isolated
/// marks sit in the faces of their anchor darts.
#[derive(Debug, Clone)]
struct Config {
    kind: Kind,
    partial: Partial,
    rotations: Vec<Vec<Dart>>,
    isolated: Vec<Dart>,
}

fn build(c: &Config, tail: Tail) -> LabeledGraph {
    let mut b = GraphBuilder::new();
    let nodes = &c.partial.nodes;
    for node in nodes {
        b.vertex(match node {
            Node::Leaf(0) => VertexKind::PeripheralEnd,
            Node::Leaf(_) => VertexKind::PunctureMark,
            Node::Inner => VertexKind::Interior,
        });
    }
    for &(u, v) in &c.partial.edges {
        b.edge(u, v, 2);
    }
    for (v, r) in c.rotations.iter().enumerate() {
        b.rotation(v, r.clone());
    }
    let mut marks: Vec<usize> = (0..nodes.len()).filter(|&v| matches!(nodes[v], Node::Leaf(t) if t > 0)).collect();
    for &a in &c.isolated {
        let m = b.vertex(VertexKind::PunctureMark);
        b.rotation(m, Vec::new());
        b.anchor(m, a);
        marks.push(m);
    }
    match tail {
        Tail::Fresh => {
            for &m in &marks {
                let l = b.vertex(VertexKind::PeripheralEnd);
                let r = b.vertex(VertexKind::PeripheralEnd);
                b.transverse(m, l, 2, Side::Plus);
                b.transverse(m, r, 2, Side::Minus);
            }
        }
        Tail::Tripod => {
            let yl = b.vertex(VertexKind::Interior);
            let yr = b.vertex(VertexKind::Interior);
            let cl = b.vertex(VertexKind::PeripheralEnd);
            let cr = b.vertex(VertexKind::PeripheralEnd);
            for &m in &marks {
                b.transverse(m, yl, 2, Side::Plus);
                b.transverse(m, yr, 2, Side::Minus);
            }
            b.edge(yl, cl, 2);
            b.edge(yr, cr, 2);
        }
        Tail::TwoCone => {
            let cl = b.vertex(VertexKind::PeripheralEnd);
            let cr = b.vertex(VertexKind::PeripheralEnd);
            for &m in &marks {
                b.transverse(m, cl, 2, Side::Plus);
                b.transverse(m, cr, 2, Side::Minus);
            }
        }
    }
    b.build_unchecked_connectivity().expect("configurations are valid")
}

fn rotations(p: &Partial) -> Vec<Vec<Vec<Dart>>> {
    let n = p.nodes.len();
    let mut darts = vec![Vec::new(); n];
    for (i, &(a, b)) in p.edges.iter().enumerate() {
        darts[a].push(Dart::new(i, 0));
        darts[b].push(Dart::new(i, 1));
    }
    let inner: Vec<usize> = (0..n).filter(|&v| p.nodes[v] == Node::Inner).collect();
    (0u64..1 << inner.len())
        .map(|mask| {
            let mut r = darts.clone();
            for (j, &v) in inner.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    r[v].swap(1, 2);
                }
            }
            r
        })
        .collect()
}

/// Graphs in P accepted by the barrier rule of `context`, one per map.
fn configurations(context: Context, max_inner: usize) -> Vec<Config> {
    // An in-plane cycle is always a violation in the tripod case; in the
    // two-cone case two cycles are.
    let (marks, rank_limit) = match context {
        Context::TripodCase => (2usize, 1usize),
        _ => (1, 2),
    };
    let mut found: BTreeMap<Vec<u32>, Config> = BTreeMap::new();
    for leaf_marks in 0..=marks {
        let tags: Vec<u8> = std::iter::once(0).chain(1..=leaf_marks as u8).collect();
        let isolated = marks - leaf_marks;
        let kind = match (context, isolated) {
            (Context::TripodCase, 0) => Kind::Tripod,
            (Context::TripodCase, _) => Kind::Tetra,
            _ => Kind::TwoCone,
        };
        for p in grow(Partial::new(&tags), max_inner, &|p| p.cycle_rank() >= rank_limit) {
            for rot in rotations(&p) {
                let base = Config {
                    kind,
                    partial: p.clone(),
                    rotations: rot,
                    isolated: Vec::new(),
                };
                let g0 = build(&base, Tail::Fresh);
                if !is_disk_embedded(&g0) {
                    continue;
                }
                let faces: Vec<Dart> = face_orbits(&g0)
                    .iter()
                    .map(|o| *o.iter().min().expect("nonempty orbit"))
                    .collect();
                let mut choice = vec![0usize; isolated];
                loop {
                    let mut c = base.clone();
                    c.isolated = choice.iter().map(|&i| faces[i]).collect();
                    let g = build(&c, Tail::Fresh);
                    if find_violation(&g, context).expect("mark count matches").is_none() {
                        found.entry(map_code(&g)).or_insert(c);
                    }
                    // Next choice of faces, odometer style.
                    let Some(k) = (0..isolated).find(|&k| choice[k] + 1 < faces.len()) else { break };
                    choice[k] += 1;
                    for c in &mut choice[..k] {
                        *c = 0;
                    }
                }
            }
        }
    }
    found.into_values().collect()
}

/// Label variables: each edge, except that the two transverse halves at a
/// mark share one.
struct Columns {
    of_edge: Vec<usize>,
    count: usize,
    links: Vec<[usize; 3]>,
}

fn columns(g: &LabeledGraph) -> Columns {
    let m = g.edge_count();
    let mut of_edge: Vec<usize> = (0..m).collect();
    for mark in g.puncture_marks() {
        let halves: Vec<usize> = g
            .darts_at(mark)
            .iter()
            .filter(|d| d.end == 0 && g.edges()[d.edge].transverse.is_some())
            .map(|d| d.edge)
            .collect();
        let lo = halves.iter().copied().min().expect("mark has halves");
        for h in halves {
            of_edge[h] = lo;
        }
    }
    let ids: Vec<usize> = of_edge.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let of_edge: Vec<usize> = of_edge.iter().map(|c| ids.binary_search(c).unwrap()).collect();
    let links = g
        .trivalent_vertices()
        .into_iter()
        .map(|v| {
            let d = g.darts_at(v);
            [of_edge[d[0].edge], of_edge[d[1].edge], of_edge[d[2].edge]]
        })
        .collect();
    Columns {
        of_edge,
        count: ids.len(),
        links,
    }
}

/// Labelings with a Euclidean turnover cusp and spherical links, interior
/// labels in `2..=cap`, as per-edge label vectors.
fn spherical_labelings(g: &LabeledGraph, cap: u32) -> Vec<Vec<u32>> {
    let cols = columns(g);
    let per = g.peripheral_edges();
    let mut starts = BTreeSet::new();
    for t in euclidean_turnovers() {
        let c = t.cone_points();
        for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let mut vals = vec![0u32; cols.count];
            let ok = per.iter().zip(p).all(|(&e, i)| {
                let slot = &mut vals[cols.of_edge[e]];
                if *slot == 0 || *slot == c[i] {
                    *slot = c[i];
                    true
                } else {
                    false
                }
            });
            if ok && per.len() == 3 {
                starts.insert(vals);
            }
        }
    }
    let mut out = Vec::new();
    for start in starts {
        let free: Vec<usize> = (0..cols.count).filter(|&c| start[c] == 0).collect();
        let mut vals = start.clone();
        assign(&cols, &free, 0, cap, &mut vals, &mut |v| {
            out.push(cols.of_edge.iter().map(|&c| v[c]).collect())
        });
    }
    out
}

fn links_ok(cols: &Columns, vals: &[u32]) -> bool {
    cols.links.iter().all(|l| {
        let [a, b, c] = l.map(|i| vals[i]);
        a == 0 || b == 0 || c == 0 || triple_geometry(a, b, c) == GeometryClass::Spherical
    })
}

fn assign(cols: &Columns, free: &[usize], i: usize, cap: u32, vals: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
    if !links_ok(cols, vals) {
        return;
    }
    if i == free.len() {
        emit(vals);
        return;
    }
    for l in 2..=cap {
        vals[free[i]] = l;
        assign(cols, free, i + 1, cap, vals, emit);
    }
    vals[free[i]] = 0;
}

fn reflection_compatible(g: &LabeledGraph) -> bool {
    symmetries(g).iter().any(|t| t.orientation_reversing)
        && !automorphisms(g).iter().any(|a| !a.is_identity() && !a.orientation_reversing)
        && peripherally_generated(g)
}

fn family_name(kind: Kind, cusp: &TwoOrbifold) -> Option<FamilyName> {
    let is = |t: &[u32]| *cusp == TwoOrbifold::sphere(t).expect("valid");
    match kind {
        Kind::Tetra => Some(FamilyName::Tetrahedral),
        Kind::Tripod if is(&[3, 3, 3]) => Some(FamilyName::Y333),
        Kind::Tripod if is(&[2, 4, 4]) => Some(FamilyName::Y244),
        Kind::TwoCone if is(&[3, 3, 3]) => Some(FamilyName::XO),
        _ => None,
    }
}

struct Group {
    kind: Kind,
    graph: LabeledGraph,
    cusp: TwoOrbifold,
    /// One labeling per orbit under shape automorphisms, each moved to the
    /// image closest to the first.
    labelings: Vec<Vec<u32>>,
}

fn hamming(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Admissible labelings per assembled shape and cusp.
fn admissible(max_inner: usize, cap: u32) -> Vec<Group> {
    let mut shapes = Vec::new();
    for (context, tail) in [(Context::TripodCase, Tail::Tripod), (Context::TwoConeCase, Tail::TwoCone)] {
        for c in configurations(context, max_inner) {
            shapes.push((c.kind, build(&c, tail)));
        }
    }
    let mut out = Vec::new();
    for (kind, g) in shapes {
        let auts = shape_automorphisms(&g);
        let images = |l: &[u32]| -> Vec<Vec<u32>> {
            auts.iter().map(|a| (0..l.len()).map(|e| l[a.edge_map[e]]).collect()).collect()
        };
        let labelings: Vec<Vec<u32>> = spherical_labelings(&g, cap)
            .into_par_iter()
            .filter(|l| reflection_compatible(&g.relabeled(l).expect("labels >= 2")))
            .map(|l| images(&l).into_iter().min().expect("identity"))
            .collect();
        let mut by_cusp: BTreeMap<TwoOrbifold, BTreeSet<Vec<u32>>> = BTreeMap::new();
        for l in labelings {
            let cusp = cusp_cross_section(&g.relabeled(&l).expect("labels >= 2")).expect("cusp");
            by_cusp.entry(cusp).or_default().insert(l);
        }
        for (cusp, reps) in by_cusp {
            let reference = reps.first().expect("nonempty").clone();
            let mut labelings: Vec<Vec<u32>> = reps
                .iter()
                .map(|l| {
                    images(l)
                        .into_iter()
                        .min_by(|a, b| (hamming(a, &reference), a).cmp(&(hamming(b, &reference), b)))
                        .expect("identity")
                })
                .collect();
            labelings.sort();
            out.push(Group {
                kind,
                graph: g.clone(),
                cusp,
                labelings,
            });
        }
    }
    out
}

/// Reflection-compatible one-cusped models, grouped into families. A family
/// whose members share one cusp and differ in a single label reports that
/// label as `n` with its admissible values up to `n_max`.
pub fn enumerate_areflection_models(n_max: u32, max_interior_vertices: usize) -> Result<Vec<ModelFamily>, EnumError> {
    if n_max < 5 {
        return Err(EnumError::NMax(n_max));
    }
    if max_interior_vertices < 2 {
        return Err(EnumError::InteriorBound(max_interior_vertices));
    }
    let cap = n_max.max(12);
    let mut named: BTreeMap<FamilyName, Vec<Group>> = BTreeMap::new();
    for group in admissible(max_interior_vertices, cap) {
        if let Some(name) = family_name(group.kind, &group.cusp) {
            named.entry(name).or_default().push(group);
        }
    }
    let mut families = Vec::new();
    for (name, groups) in named {
        let cusps: Vec<TwoOrbifold> = groups.iter().map(|g| g.cusp.clone()).collect();
        let first = &groups[0];
        let mut parameter_edges = Vec::new();
        let mut values = BTreeSet::new();
        if groups.len() == 1 {
            let cols = columns(&first.graph);
            let varying: Vec<usize> = (0..first.graph.edge_count())
                .filter(|&e| first.labelings.iter().map(|l| l[e]).collect::<BTreeSet<_>>().len() > 1)
                .collect();
            let varying_cols: BTreeSet<usize> = varying.iter().map(|&e| cols.of_edge[e]).collect();
            if varying_cols.len() == 1 {
                values = first.labelings.iter().map(|l| l[varying[0]]).collect();
                parameter_edges = varying;
            }
        }
        let n_of = |l: &[u32]| parameter_edges.first().map(|&e| l[e]);
        let mut members = Vec::new();
        for g in &groups {
            for l in &g.labelings {
                let n = n_of(l);
                if n.is_some_and(|n| n > n_max) {
                    continue;
                }
                let h = g.graph.relabeled(l).expect("labels >= 2");
                members.push(Candidate {
                    invariants: Invariants::of(&h),
                    verdict: Verdict::ModelFamily(name, n),
                    graph: h,
                    pattern: None,
                    quotient: None,
                    flags: Vec::new(),
                });
            }
        }
        members.sort_by_key(|c| c.verdict);
        families.push(ModelFamily {
            name,
            cusps,
            shape: first.graph.relabeled(&first.labelings[0]).expect("labels >= 2"),
            admissible_n: values.iter().copied().filter(|&n| n <= n_max).collect(),
            unbounded_above: values.contains(&cap),
            parameter_edges,
            members,
        });
    }
    Ok(families)
}
