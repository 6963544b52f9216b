use std::collections::BTreeMap;

use serde::Serialize;

use super::faces::{regions, RegionMap};
use super::{Dart, LabeledGraph};

/// A graph automorphism compatible with the embedding data.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Automorphism {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    /// `flips[e]`: end 0 of `e` goes to end 1 of `edge_map[e]`.
    pub flips: Vec<bool>,
    pub reverses_rotation: bool,
    pub swaps_sides: bool,
    pub orientation_reversing: bool,
}

/// Self-inverse automorphisms; same representation.
pub type Involution = Automorphism;

impl Automorphism {
    pub fn dart(&self, d: Dart) -> Dart {
        Dart::new(self.edge_map[d.edge], d.end ^ self.flips[d.edge] as u8)
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_map.iter().enumerate().all(|(i, &v)| i == v)
            && self.edge_map.iter().enumerate().all(|(i, &e)| i == e)
            && self.flips.iter().all(|f| !f)
            && !self.reverses_rotation
            && !self.swaps_sides
    }

    pub fn is_involution(&self) -> bool {
        self.vertex_map.iter().enumerate().all(|(i, &v)| self.vertex_map[v] == i)
            && (0..self.edge_map.len()).all(|e| {
                let d = self.dart(self.dart(Dart::new(e, 0)));
                d == Dart::new(e, 0)
            })
    }

    pub fn preserves_labels(&self, g: &LabeledGraph) -> bool {
        (0..g.edge_count()).all(|e| g.label(e) == g.label(self.edge_map[e]))
    }

    /// Checks that this is an automorphism of `g` (used on maps built elsewhere).
    pub fn is_automorphism_of(&self, g: &LabeledGraph) -> bool {
        automorphisms(g).contains(self)
    }
}

/// All label-preserving automorphisms, identity included, in canonical order.
pub fn automorphisms(g: &LabeledGraph) -> Vec<Automorphism> {
    search(g, true)
}

/// Non-identity label-preserving involutions.
pub fn symmetries(g: &LabeledGraph) -> Vec<Involution> {
    automorphisms(g)
        .into_iter()
        .filter(|a| !a.is_identity() && a.is_involution())
        .collect()
}

/// Automorphisms of the underlying shape, ignoring edge labels.
pub(crate) fn shape_automorphisms(g: &LabeledGraph) -> Vec<Automorphism> {
    search(g, false)
}

fn vertex_signature(g: &LabeledGraph, v: usize, labels: bool) -> (u8, usize, bool, Vec<(u32, bool)>) {
    let mut inc: Vec<(u32, bool)> = g
        .darts_at(v)
        .iter()
        .map(|d| {
            let e = &g.edges()[d.edge];
            (if labels { e.label } else { 0 }, e.transverse.is_some())
        })
        .collect();
    inc.sort();
    (g.kind(v) as u8, g.valence(v), g.in_plane(v), inc)
}

fn search(g: &LabeledGraph, labels: bool) -> Vec<Automorphism> {
    let n = g.vertex_count();
    let sig: Vec<_> = (0..n).map(|v| vertex_signature(g, v, labels)).collect();
    let mut adj = vec![vec![0usize; n]; n];
    for e in g.edges() {
        adj[e.ends[0]][e.ends[1]] += 1;
        if e.ends[0] != e.ends[1] {
            adj[e.ends[1]][e.ends[0]] += 1;
        }
    }
    let region_map = if g.anchors().is_empty() { None } else { Some(regions(g)) };
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_vertices(g, labels, &sig, &adj, 0, &mut map, &mut used, &region_map, &mut out);
    out.sort();
    out.dedup();
    out
}

#[allow(clippy::too_many_arguments)]
fn extend_vertices(
    g: &LabeledGraph,
    labels: bool,
    sig: &[(u8, usize, bool, Vec<(u32, bool)>)],
    adj: &[Vec<usize>],
    v: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    region_map: &Option<RegionMap>,
    out: &mut Vec<Automorphism>,
) {
    let n = g.vertex_count();
    if v == n {
        extend_edges(g, labels, map, region_map, out);
        return;
    }
    for w in 0..n {
        if used[w] || sig[w] != sig[v] {
            continue;
        }
        if (0..v).any(|u| adj[v][u] != adj[w][map[u]]) || adj[v][v] != adj[w][w] {
            continue;
        }
        map[v] = w;
        used[w] = true;
        extend_vertices(g, labels, sig, adj, v + 1, map, used, region_map, out);
        used[w] = false;
        map[v] = usize::MAX;
    }
}

fn extend_edges(
    g: &LabeledGraph,
    labels: bool,
    vmap: &[usize],
    region_map: &Option<RegionMap>,
    out: &mut Vec<Automorphism>,
) {
    let m = g.edge_count();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, e) in g.edges().iter().enumerate() {
        groups.entry(key(e.ends[0], e.ends[1])).or_default().push(i);
    }
    // Each edge's candidate images with the forced or free end flip.
    let mut options: Vec<Vec<(usize, bool)>> = vec![Vec::new(); m];
    for (i, e) in g.edges().iter().enumerate() {
        let [a, b] = [vmap[e.ends[0]], vmap[e.ends[1]]];
        for &j in &groups[&key(a, b)] {
            let f = &g.edges()[j];
            if labels && f.label != e.label {
                continue;
            }
            if e.transverse.is_some() != f.transverse.is_some() {
                continue;
            }
            if a == b {
                options[i].push((j, false));
                if e.transverse.is_none() {
                    options[i].push((j, true));
                }
            } else {
                let flip = f.ends[0] != a;
                if e.transverse.is_some() && flip {
                    continue;
                }
                options[i].push((j, flip));
            }
        }
        if options[i].is_empty() {
            return;
        }
    }
    let mut emap = vec![usize::MAX; m];
    let mut flips = vec![false; m];
    let mut used = vec![false; m];
    assign_edges(g, vmap, &options, 0, &mut emap, &mut flips, &mut used, region_map, out);
}

#[allow(clippy::too_many_arguments)]
fn assign_edges(
    g: &LabeledGraph,
    vmap: &[usize],
    options: &[Vec<(usize, bool)>],
    i: usize,
    emap: &mut Vec<usize>,
    flips: &mut Vec<bool>,
    used: &mut Vec<bool>,
    region_map: &Option<RegionMap>,
    out: &mut Vec<Automorphism>,
) {
    if i == options.len() {
        out.extend(finish(g, vmap, emap, flips, region_map));
        return;
    }
    for &(j, f) in &options[i] {
        if used[j] {
            continue;
        }
        used[j] = true;
        emap[i] = j;
        flips[i] = f;
        assign_edges(g, vmap, options, i + 1, emap, flips, used, region_map, out);
        used[j] = false;
    }
}

/// Embedding checks on a complete combinatorial map.
fn finish(
    g: &LabeledGraph,
    vmap: &[usize],
    emap: &[usize],
    flips: &[bool],
    region_map: &Option<RegionMap>,
) -> Option<Automorphism> {
    let img = |d: Dart| Dart::new(emap[d.edge], d.end ^ flips[d.edge] as u8);

    let mut swap: Option<bool> = None;
    for (i, e) in g.edges().iter().enumerate() {
        if let Some(s) = e.transverse {
            let t = g.edges()[emap[i]].transverse.expect("transverse maps to transverse");
            let this = s != t;
            if *swap.get_or_insert(this) != this {
                return None;
            }
        }
    }

    let mut reverse: Option<bool> = None;
    for v in 0..g.vertex_count() {
        let Some(rot) = g.rotation(v) else { continue };
        if rot.len() < 3 {
            continue;
        }
        let target = g.rotation(vmap[v]).expect("P vertex maps into P");
        let mapped: Vec<Dart> = rot.iter().map(|&d| img(d)).collect();
        let start = target.iter().position(|&d| d == mapped[0])?;
        let k = target.len();
        let fwd = (0..k).all(|i| target[(start + i) % k] == mapped[i]);
        let bwd = (0..k).all(|i| target[(start + k - i) % k] == mapped[i]);
        let this = match (fwd, bwd) {
            (true, false) => false,
            (false, true) => true,
            (true, true) => continue,
            (false, false) => return None,
        };
        if *reverse.get_or_insert(this) != this {
            return None;
        }
    }
    let reverses_rotation = reverse.unwrap_or(false);
    let swaps_sides = swap.unwrap_or(false);

    if let Some(rm) = region_map {
        for &(mark, d) in g.anchors() {
            let image_anchor = g.anchor_of(vmap[mark])?;
            let d2 = if reverses_rotation { img(d).opposite() } else { img(d) };
            if rm.region_of(d2) != rm.region_of(image_anchor) {
                return None;
            }
        }
    }

    Some(Automorphism {
        vertex_map: vmap.to_vec(),
        edge_map: emap.to_vec(),
        flips: flips.to_vec(),
        reverses_rotation,
        swaps_sides,
        orientation_reversing: reverses_rotation ^ swaps_sides,
    })
}
