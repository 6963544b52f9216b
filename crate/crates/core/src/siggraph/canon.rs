use serde::Serialize;

use super::{Dart, LabeledGraph, Side};

/// Isomorphism-invariant encoding of kinds, labels and transverse data.
/// Rotation data is not part of the code.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalCode {
    pub kinds: Vec<u8>,
    /// `(lo, hi, label, transverse)` with `transverse = 0` for ordinary edges
    /// and `1 + side` for a transverse half (its mark is `lo` or `hi`, recorded
    /// by the sign of the final field: mark first is positive).
    pub edges: Vec<(usize, usize, u32, i8)>,
}

fn encode(g: &LabeledGraph, pos: &[usize], flip_sides: bool) -> (CanonicalCode, Vec<usize>) {
    let kinds = {
        let mut k = vec![0u8; g.vertex_count()];
        for v in 0..g.vertex_count() {
            k[pos[v]] = g.kind(v) as u8 * 4 + g.valence(v) as u8;
        }
        k
    };
    let mut edges: Vec<((usize, usize, u32, i8), usize)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let (a, b) = (pos[e.ends[0]], pos[e.ends[1]]);
            let t = match e.transverse {
                None => 0,
                Some(s) => {
                    let s = if flip_sides { s.flipped() } else { s };
                    let code = 1 + (s == Side::Minus) as i8;
                    if a <= b {
                        code
                    } else {
                        -code
                    }
                }
            };
            ((a.min(b), a.max(b), e.label, t), i)
        })
        .collect();
    edges.sort();
    let order = edges.iter().map(|&(_, i)| i).collect();
    (
        CanonicalCode {
            kinds,
            edges: edges.into_iter().map(|(c, _)| c).collect(),
        },
        order,
    )
}

/// Ranks tuples so that equal tuples share a color, ordered by tuple value.
fn rank<T: Ord + Clone>(items: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = items.to_vec();
    sorted.sort();
    sorted.dedup();
    items.iter().map(|x| sorted.binary_search(x).unwrap()).collect()
}

fn refine(g: &LabeledGraph, colors: &mut Vec<usize>) {
    loop {
        let sigs: Vec<(usize, Vec<(u32, i8, usize)>)> = (0..g.vertex_count())
            .map(|v| {
                let mut nb: Vec<(u32, i8, usize)> = g
                    .darts_at(v)
                    .iter()
                    .map(|d| {
                        let e = &g.edges()[d.edge];
                        let t = match e.transverse {
                            None => 0,
                            Some(_) => 1 + d.end as i8,
                        };
                        (e.label, t, colors[g.origin(d.opposite())])
                    })
                    .collect();
                nb.sort();
                (colors[v], nb)
            })
            .collect();
        let next = rank(&sigs);
        let before = colors.iter().collect::<std::collections::BTreeSet<_>>().len();
        let after = next.iter().collect::<std::collections::BTreeSet<_>>().len();
        *colors = next;
        if after == before {
            return;
        }
    }
}

fn initial_colors(g: &LabeledGraph) -> Vec<usize> {
    let sigs: Vec<(u8, usize, Vec<(u32, bool)>)> = (0..g.vertex_count())
        .map(|v| {
            let mut inc: Vec<(u32, bool)> = g
                .darts_at(v)
                .iter()
                .map(|d| (g.label(d.edge), g.edges()[d.edge].transverse.is_some()))
                .collect();
            inc.sort();
            (g.kind(v) as u8, g.valence(v), inc)
        })
        .collect();
    rank(&sigs)
}

fn search(g: &LabeledGraph, colors: Vec<usize>, best: &mut Option<(CanonicalCode, Vec<usize>, Vec<usize>)>) {
    let n = g.vertex_count();
    let mut colors = colors;
    refine(g, &mut colors);
    let mut count = vec![0usize; n];
    for &c in &colors {
        count[c] += 1;
    }
    let target = (0..n).find(|&c| count[c] > 1);
    match target {
        None => {
            for flip in [false, true] {
                let (code, order) = encode(g, &colors, flip);
                let better = match best {
                    None => true,
                    Some((b, _, _)) => code < *b,
                };
                if better {
                    *best = Some((code, colors.clone(), order));
                }
            }
        }
        Some(c) => {
            for v in (0..n).filter(|&v| colors[v] == c) {
                // Individualize v: every other color >= c moves up by one.
                let mut next: Vec<usize> = colors.iter().map(|&x| if x >= c { x + 1 } else { x }).collect();
                next[v] = c;
                search(g, next, best);
            }
        }
    }
}

fn best(g: &LabeledGraph) -> (CanonicalCode, Vec<usize>, Vec<usize>) {
    let mut best = None;
    search(g, initial_colors(g), &mut best);
    best.unwrap_or_else(|| (CanonicalCode { kinds: vec![], edges: vec![] }, vec![], vec![]))
}

/// Minimal encoding over all vertex orderings compatible with color
/// refinement, and over a global swap of the sides of P.
pub fn canonical_code(g: &LabeledGraph) -> CanonicalCode {
    best(g).0
}

/// Canonical position of each vertex and the canonical order of the edges.
pub fn canonical_order(g: &LabeledGraph) -> (Vec<usize>, Vec<usize>) {
    let (_, pos, order) = best(g);
    (pos, order)
}

/// Breadth-first code of the P-map from `start`, optionally mirrored, with
/// the rank at which each dart was listed.
fn map_walk(g: &LabeledGraph, start: Dart, mirror: bool) -> (Vec<u32>, Vec<usize>) {
    let n = g.vertex_count();
    let mut idx = vec![usize::MAX; n];
    let mut entry = vec![start; n];
    let mut order = vec![g.origin(start)];
    idx[g.origin(start)] = 0;
    let mut dart_rank = vec![usize::MAX; 2 * g.edge_count()];
    let mut code = Vec::new();
    let mut next_rank = 0;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        let mut rot: Vec<Dart> = g.rotation(v).unwrap_or(&[]).to_vec();
        if mirror {
            rot.reverse();
        }
        let k = rot.iter().position(|&d| d == entry[v]).unwrap_or(0);
        rot.rotate_left(k);
        code.push(g.kind(v) as u32);
        code.push(rot.len() as u32);
        for d in rot {
            let w = g.origin(d.opposite());
            if idx[w] == usize::MAX {
                idx[w] = order.len();
                entry[w] = d.opposite();
                order.push(w);
            }
            code.push(idx[w] as u32);
            code.push(g.label(d.edge));
            dart_rank[2 * d.edge + d.end as usize] = next_rank;
            next_rank += 1;
        }
    }
    (code, dart_rank)
}

/// Code of the embedded P-part up to orientation-preserving and reversing
/// isomorphism. The P-part must be connected; isolated marks are recorded by
/// the face holding their anchor dart. Off-P data is ignored.
pub(crate) fn map_code(g: &LabeledGraph) -> Vec<u32> {
    let orbits = super::faces::face_orbits(g);
    let mut orbit_of = vec![usize::MAX; 2 * g.edge_count()];
    for (i, o) in orbits.iter().enumerate() {
        for d in o {
            orbit_of[2 * d.edge + d.end as usize] = i;
        }
    }
    let mut best: Option<Vec<u32>> = None;
    for d in super::faces::p_darts(g) {
        for mirror in [false, true] {
            let (mut code, rank) = map_walk(g, d, mirror);
            let mut anchors: Vec<u32> = g
                .anchors()
                .iter()
                .map(|&(_, a)| {
                    // The face left of `a` is, in the mirror, the one left of
                    // the opposite darts of its orbit.
                    let o = &orbits[orbit_of[2 * a.edge + a.end as usize]];
                    o.iter()
                        .map(|&x| {
                            let y = if mirror { x.opposite() } else { x };
                            rank[2 * y.edge + y.end as usize] as u32
                        })
                        .min()
                        .unwrap_or(u32::MAX)
                })
                .collect();
            anchors.sort();
            code.push(u32::MAX);
            code.extend(anchors);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
    }
    best.unwrap_or_default()
}
