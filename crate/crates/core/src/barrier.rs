//! Disjoint 1-cycles in the singular locus, and the rules that forbid them.
//!
//! Relative arcs are all simple paths between two peripheral ends of the
//! whole graph. The outermost ones, which cut a boundary sector off the
//! disk, are available separately through [`outermost_arcs`].

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::siggraph::faces::{regions, RegionMap, Side as RegionSide};
use crate::siggraph::{canonical_order, Dart, LabeledGraph, VertexKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CycleKind {
    Absolute,
    Relative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OneCycle {
    pub id: usize,
    pub kind: CycleKind,
    /// Edge ids in traversal order.
    pub cells: Vec<u32>,
    /// Vertex ids in traversal order; an arc lists both ends.
    pub vertices: Vec<u32>,
    /// All edges are edges of P.
    pub in_plane: bool,
    /// Puncture mark ids inside the disk bounded by an absolute cycle of P.
    pub encloses: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Context {
    TripodCase,
    TwoConeCase,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CaseTag {
    ArcVsCycle,
    CycleBothOrNeitherPuncture,
    CycleOnePuncture,
    CycleNotEnclosingX1,
}

/// `first` is always an absolute cycle. `second` is a partner disjoint from
/// it, when the graph has one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BarrierViolation {
    pub case_tag: CaseTag,
    pub first: usize,
    pub second: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BarrierError {
    #[error("{context:?} needs {expected} puncture marks, graph has {found}")]
    ContextMismatch {
        context: Context,
        expected: usize,
        found: usize,
    },
}

struct Walker<'a> {
    g: &'a LabeledGraph,
    edge_rank: Vec<usize>,
    on_path: Vec<bool>,
    used_edge: Vec<bool>,
    vpath: Vec<usize>,
    epath: Vec<usize>,
}

impl<'a> Walker<'a> {
    fn new(g: &'a LabeledGraph, edge_rank: Vec<usize>) -> Self {
        Walker {
            g,
            edge_rank,
            on_path: vec![false; g.vertex_count()],
            used_edge: vec![false; g.edge_count()],
            vpath: Vec::new(),
            epath: Vec::new(),
        }
    }

    /// Simple paths from the current tip to `target`, using only edges of
    /// rank above `floor`.
    fn paths_to(&mut self, target: usize, floor: Option<usize>, out: &mut Vec<(Vec<usize>, Vec<usize>)>) {
        let v = *self.vpath.last().expect("path has a tip");
        for &d in self.g.darts_at(v) {
            let e = d.edge;
            if self.used_edge[e] || floor.is_some_and(|f| self.edge_rank[e] <= f) {
                continue;
            }
            let w = self.g.origin(d.opposite());
            if w == target {
                let mut es = self.epath.clone();
                es.push(e);
                out.push((self.vpath.clone(), es));
                continue;
            }
            if self.on_path[w] || self.g.kind(w) == VertexKind::PeripheralEnd {
                continue;
            }
            self.on_path[w] = true;
            self.used_edge[e] = true;
            self.vpath.push(w);
            self.epath.push(e);
            self.paths_to(target, floor, out);
            self.epath.pop();
            self.vpath.pop();
            self.used_edge[e] = false;
            self.on_path[w] = false;
        }
    }
}

/// Absolute cycles as (vertices, edges), each once, starting at its
/// lowest-ranked edge.
fn raw_cycles(g: &LabeledGraph, edge_rank: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut by_rank: Vec<usize> = (0..g.edge_count()).collect();
    by_rank.sort_by_key(|&e| edge_rank[e]);
    let mut w = Walker::new(g, edge_rank.to_vec());
    for &e in &by_rank {
        let [a, b] = g.edges()[e].ends;
        if a == b {
            out.push((vec![a], vec![e]));
            continue;
        }
        w.on_path[a] = true;
        w.on_path[b] = true;
        w.used_edge[e] = true;
        w.vpath = vec![a, b];
        w.epath = vec![e];
        let mut found = Vec::new();
        w.paths_to(a, Some(edge_rank[e]), &mut found);
        for (mut vs, es) in found {
            // The closing step back to `a` repeats the start.
            debug_assert_eq!(vs[0], a);
            vs.truncate(es.len());
            out.push((vs, es));
        }
        w.on_path[a] = false;
        w.on_path[b] = false;
        w.used_edge[e] = false;
    }
    out
}

fn raw_arcs(g: &LabeledGraph, pos: &[usize], edge_rank: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut ends = g.peripheral_ends();
    ends.sort_by_key(|&v| pos[v]);
    let mut out = Vec::new();
    let mut w = Walker::new(g, edge_rank.to_vec());
    for (i, &p) in ends.iter().enumerate() {
        for &q in &ends[i + 1..] {
            w.on_path[p] = true;
            w.vpath = vec![p];
            w.epath = Vec::new();
            let mut found = Vec::new();
            w.paths_to(q, None, &mut found);
            for (mut vs, es) in found {
                vs.push(q);
                out.push((vs, es));
            }
            w.on_path[p] = false;
        }
    }
    out
}

/// Regions reachable from the boundary circle without crossing `cut`.
fn outside(rm: &RegionMap, cut: &BTreeSet<usize>) -> Vec<bool> {
    let n = rm.regions.len();
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&r| rm.regions[r].touches_boundary()).collect();
    for &r in &stack {
        seen[r] = true;
    }
    while let Some(r) = stack.pop() {
        for s in &rm.regions[r].sides {
            let RegionSide::Dart(d) = *s else { continue };
            if cut.contains(&d.edge) {
                continue;
            }
            if let Some(t) = rm.region_of(d.opposite()) {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
    }
    seen
}

fn enclosed_marks(g: &LabeledGraph, rm: &RegionMap, vertices: &[usize], edges: &[usize]) -> Vec<usize> {
    if !rm.regions.iter().any(|r| r.touches_boundary()) {
        return Vec::new();
    }
    let cut: BTreeSet<usize> = edges.iter().copied().collect();
    let out = outside(rm, &cut);
    g.puncture_marks()
        .into_iter()
        .filter(|m| !vertices.contains(m))
        .filter(|&m| {
            let dart: Option<Dart> = g.p_darts_at(m).first().copied().or_else(|| g.anchor_of(m));
            dart.and_then(|d| rm.region_of(d)).is_some_and(|r| !out[r])
        })
        .collect()
}

/// All simple absolute cycles, then all simple relative arcs, each group in
/// canonical order.
pub fn one_cycles(g: &LabeledGraph) -> Vec<OneCycle> {
    let (pos, order) = canonical_order(g);
    let mut edge_rank = vec![0; g.edge_count()];
    for (i, &e) in order.iter().enumerate() {
        edge_rank[e] = i;
    }
    let rm = regions(g);
    let mut cycles: Vec<(CycleKind, Vec<usize>, Vec<usize>, Vec<usize>)> = Vec::new();
    for (vs, es) in raw_cycles(g, &edge_rank) {
        cycles.push((CycleKind::Absolute, sorted_ranks(&es, &edge_rank), vs, es));
    }
    for (vs, es) in raw_arcs(g, &pos, &edge_rank) {
        cycles.push((CycleKind::Relative, sorted_ranks(&es, &edge_rank), vs, es));
    }
    cycles.sort_by(|a, b| (a.0, a.1.len(), &a.1).cmp(&(b.0, b.1.len(), &b.1)));
    cycles
        .into_iter()
        .enumerate()
        .map(|(id, (kind, _, vs, es))| {
            let in_plane = es.iter().all(|&e| g.is_p_edge(e));
            let encloses = if kind == CycleKind::Absolute && in_plane {
                let mut m: Vec<u32> = enclosed_marks(g, &rm, &vs, &es)
                    .into_iter()
                    .map(|v| g.vertices()[v].id)
                    .collect();
                m.sort();
                m
            } else {
                Vec::new()
            };
            OneCycle {
                id,
                kind,
                cells: es.iter().map(|&e| g.edges()[e].id).collect(),
                vertices: vs.iter().map(|&v| g.vertices()[v].id).collect(),
                in_plane,
                encloses,
            }
        })
        .collect()
}

fn sorted_ranks(es: &[usize], rank: &[usize]) -> Vec<usize> {
    let mut r: Vec<usize> = es.iter().map(|&e| rank[e]).collect();
    r.sort();
    r
}

/// Arcs of P that cobound a boundary sector with an arc of the circle.
pub fn outermost_arcs(g: &LabeledGraph) -> Vec<OneCycle> {
    let rm = regions(g);
    let sectors: Vec<BTreeSet<u32>> = rm
        .regions
        .iter()
        .filter(|r| r.touches_boundary())
        .map(|r| {
            r.sides
                .iter()
                .filter_map(|s| match s {
                    RegionSide::Dart(d) => Some(g.edges()[d.edge].id),
                    RegionSide::Boundary(_) => None,
                })
                .collect()
        })
        .collect();
    one_cycles(g)
        .into_iter()
        .filter(|c| c.kind == CycleKind::Relative && c.in_plane)
        .filter(|c| {
            let cells: BTreeSet<u32> = c.cells.iter().copied().collect();
            sectors.contains(&cells)
        })
        .collect()
}

fn disjoint(a: &OneCycle, b: &OneCycle) -> bool {
    a.vertices.iter().all(|v| !b.vertices.contains(v))
}

/// First (cycle, arc) pair sharing no vertex, in list order.
pub fn first_disjoint_pair(cycles: &[OneCycle]) -> Option<BarrierViolation> {
    let mut best: Option<BarrierViolation> = None;
    for b in cycles.iter().filter(|c| c.kind == CycleKind::Absolute) {
        for a in cycles.iter().filter(|c| c.kind == CycleKind::Relative) {
            if disjoint(a, b) {
                let v = BarrierViolation {
                    case_tag: CaseTag::ArcVsCycle,
                    first: b.id,
                    second: Some(a.id),
                };
                if best.as_ref().is_none_or(|x| v < *x) {
                    best = Some(v);
                }
            }
        }
    }
    best
}

fn partner(cycles: &[OneCycle], b: &OneCycle, kind: Option<CycleKind>) -> Option<usize> {
    cycles
        .iter()
        .filter(|c| c.id != b.id && kind.is_none_or(|k| c.kind == k))
        .find(|c| disjoint(c, b))
        .map(|c| c.id)
}

pub fn find_violation(g: &LabeledGraph, context: Context) -> Result<Option<BarrierViolation>, BarrierError> {
    let marks = g.puncture_marks();
    let expected = match context {
        Context::TripodCase => Some(2),
        Context::TwoConeCase => Some(1),
        Context::Generic => None,
    };
    if let Some(expected) = expected {
        if marks.len() != expected {
            return Err(BarrierError::ContextMismatch {
                context,
                expected,
                found: marks.len(),
            });
        }
    }
    let cycles = one_cycles(g);
    let plane: Vec<&OneCycle> = cycles
        .iter()
        .filter(|c| c.kind == CycleKind::Absolute && c.in_plane)
        .collect();
    let mut found: Vec<BarrierViolation> = Vec::new();
    match context {
        Context::Generic => found.extend(first_disjoint_pair(&cycles)),
        Context::TripodCase => {
            for b in &plane {
                let case_tag = if b.encloses.len() == 1 {
                    CaseTag::CycleOnePuncture
                } else {
                    CaseTag::CycleBothOrNeitherPuncture
                };
                found.push(BarrierViolation {
                    case_tag,
                    first: b.id,
                    second: partner(&cycles, b, None),
                });
            }
        }
        Context::TwoConeCase => {
            let x1 = g.vertices()[marks[0]].id;
            for b in &plane {
                if !b.encloses.contains(&x1) {
                    found.push(BarrierViolation {
                        case_tag: CaseTag::CycleNotEnclosingX1,
                        first: b.id,
                        second: partner(&cycles, b, Some(CycleKind::Relative)),
                    });
                }
            }
            for (i, b) in plane.iter().enumerate() {
                for c in &plane[i + 1..] {
                    found.push(BarrierViolation {
                        case_tag: CaseTag::CycleBothOrNeitherPuncture,
                        first: b.id,
                        second: disjoint(b, c).then_some(c.id),
                    });
                }
            }
        }
    }
    Ok(found.into_iter().min())
}

/// Embedding-free check of the Generic rule: no absolute cycle misses an arc.
/// Equivalent to `find_violation(g, Generic)` being empty, without listing arcs.
pub fn generic_rule_holds(g: &LabeledGraph) -> bool {
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.ends[0], e.ends[1])).collect();
    generic_holds(g.vertex_count(), &edges, &g.peripheral_ends())
}

/// Vertex sets of the simple cycles of a multigraph on `0..n`.
pub(crate) fn cycle_vertex_sets(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        inc[a].push((i, b));
        if a != b {
            inc[b].push((i, a));
        }
    }
    fn walk(
        inc: &[Vec<(usize, usize)>],
        start: usize,
        floor: usize,
        v: usize,
        on: &mut Vec<bool>,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for &(e, w) in &inc[v] {
            if e <= floor {
                continue;
            }
            if w == start {
                out.push(path.clone());
                continue;
            }
            if on[w] {
                continue;
            }
            on[w] = true;
            path.push(w);
            walk(inc, start, floor, w, on, path, out);
            path.pop();
            on[w] = false;
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        if a == b {
            out.push(vec![a]);
            continue;
        }
        on[a] = true;
        on[b] = true;
        let mut path = vec![a, b];
        walk(&inc, a, i, b, &mut on, &mut path, &mut out);
        on[a] = false;
        on[b] = false;
    }
    out
}

/// Every cycle separates the `ends` pairwise, i.e. meets every arc between them.
pub(crate) fn generic_holds(n: usize, edges: &[(usize, usize)], ends: &[usize]) -> bool {
    if ends.len() < 2 {
        return true;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    cycle_vertex_sets(n, edges).into_iter().all(|vs| {
        let mut removed = vec![false; n];
        for &v in &vs {
            removed[v] = true;
        }
        let mut comp = vec![usize::MAX; n];
        for &start in ends {
            if comp[start] != usize::MAX {
                return false;
            }
            comp[start] = start;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX && !removed[w] {
                        comp[w] = start;
                        stack.push(w);
                    }
                }
            }
        }
        true
    })
}
