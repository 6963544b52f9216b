//! Exhaustive growth of connected multigraphs with prescribed leaves and
//! cubic inner vertices, one edge at a time, with isomorphism dedupe per
//! level. A prune predicate must be monotone: once it rejects a partial graph
//! it must reject every supergraph.

use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Node {
    /// Valence-one vertex with a caller-chosen tag.
    Leaf(u8),
    Inner,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Partial {
    pub nodes: Vec<Node>,
    pub open: Vec<u8>,
    pub edges: Vec<(usize, usize)>,
}

impl Partial {
    pub fn new(leaves: &[u8]) -> Self {
        Partial {
            nodes: leaves.iter().map(|&t| Node::Leaf(t)).collect(),
            open: vec![1; leaves.len()],
            edges: Vec::new(),
        }
    }

    pub fn inner_count(&self) -> usize {
        self.nodes.iter().filter(|n| **n == Node::Inner).count()
    }

    pub fn is_complete(&self) -> bool {
        self.open.iter().all(|&o| o == 0)
    }

    /// Edges minus vertices plus components.
    pub fn cycle_rank(&self) -> usize {
        let comps = components(self.nodes.len(), &self.edges);
        let c = comps.iter().enumerate().filter(|&(i, &r)| i == r).count();
        self.edges.len() + c - self.nodes.len()
    }

    fn with_edge(&self, a: usize, b: usize) -> Partial {
        let mut p = self.clone();
        p.open[a] -= 1;
        p.open[b] -= 1;
        p.edges.push((a.min(b), a.max(b)));
        p
    }

    fn with_inner(&self, a: usize) -> Partial {
        let mut p = self.clone();
        p.nodes.push(Node::Inner);
        p.open.push(3);
        let u = p.nodes.len() - 1;
        p.with_edge(a, u)
    }
}

/// Union-find roots, each vertex mapped to the smallest vertex of its component.
pub(crate) fn components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            parent[hi] = lo;
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

fn successors(p: &Partial, max_inner: usize) -> Vec<Partial> {
    let comp = components(p.nodes.len(), &p.edges);
    // Grow the component of vertex 0 from its earliest open vertex.
    let Some(v) = (0..p.nodes.len()).find(|&v| comp[v] == comp[0] && p.open[v] > 0) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for w in 0..p.nodes.len() {
        let free = if w == v { p.open[v] >= 2 } else { p.open[w] > 0 };
        if free {
            out.push(p.with_edge(v, w));
        }
    }
    if p.inner_count() < max_inner {
        out.push(p.with_inner(v));
    }
    out
}

/// All complete connected graphs reachable from `start`, one per
/// isomorphism class, in canonical-code order.
pub(crate) fn grow(start: Partial, max_inner: usize, prune: &dyn Fn(&Partial) -> bool) -> Vec<Partial> {
    let mut level: BTreeMap<Vec<u32>, Partial> = BTreeMap::new();
    let mut done: BTreeMap<Vec<u32>, Partial> = BTreeMap::new();
    if !prune(&start) {
        level.insert(small_code(&start), start);
    }
    while !level.is_empty() {
        let mut next = BTreeMap::new();
        for p in level.into_values() {
            if p.is_complete() {
                let comp = components(p.nodes.len(), &p.edges);
                if comp.iter().all(|&c| c == 0) {
                    done.insert(small_code(&p), p);
                }
                continue;
            }
            for q in successors(&p, max_inner) {
                if !prune(&q) {
                    next.entry(small_code(&q)).or_insert(q);
                }
            }
        }
        level = next;
    }
    done.into_values().collect()
}

/// Canonical code of a partial graph: colors are (node, open stubs), and the
/// code is minimized over orderings compatible with color refinement.
pub(crate) fn small_code(p: &Partial) -> Vec<u32> {
    let n = p.nodes.len();
    let mut adj = vec![vec![0u32; n]; n];
    for &(a, b) in &p.edges {
        adj[a][b] += 1;
        if a != b {
            adj[b][a] += 1;
        }
    }
    let base: Vec<(u8, u8)> = (0..n)
        .map(|v| {
            let tag = match p.nodes[v] {
                Node::Leaf(t) => t,
                Node::Inner => u8::MAX,
            };
            (tag, p.open[v])
        })
        .collect();
    let colors = rank(&base);
    let mut best: Option<Vec<u32>> = None;
    search(&adj, &base, colors, &mut best);
    best.unwrap_or_default()
}

fn rank<T: Ord + Clone>(items: &[T]) -> Vec<usize> {
    let mut sorted = items.to_vec();
    sorted.sort();
    sorted.dedup();
    items.iter().map(|x| sorted.binary_search(x).unwrap()).collect()
}

fn refine(adj: &[Vec<u32>], colors: &mut Vec<usize>) {
    let n = colors.len();
    loop {
        let sigs: Vec<(usize, Vec<(usize, u32)>)> = (0..n)
            .map(|v| {
                let mut s: Vec<(usize, u32)> = (0..n)
                    .filter(|&w| adj[v][w] > 0)
                    .map(|w| (colors[w], adj[v][w]))
                    .collect();
                s.sort();
                (colors[v], s)
            })
            .collect();
        let next = rank(&sigs);
        let before = colors.iter().max().map_or(0, |m| m + 1);
        let after = next.iter().max().map_or(0, |m| m + 1);
        *colors = next;
        if after == before {
            return;
        }
    }
}

fn search(adj: &[Vec<u32>], base: &[(u8, u8)], mut colors: Vec<usize>, best: &mut Option<Vec<u32>>) {
    let n = colors.len();
    refine(adj, &mut colors);
    let mut count = vec![0usize; n];
    for &c in &colors {
        count[c] += 1;
    }
    match (0..n).find(|&c| count[c] > 1) {
        None => {
            let mut inv = vec![0; n];
            for v in 0..n {
                inv[colors[v]] = v;
            }
            let mut code = Vec::with_capacity(2 * n + n * n);
            for &v in &inv {
                code.push(base[v].0 as u32);
                code.push(base[v].1 as u32);
            }
            for &v in &inv {
                for &w in &inv {
                    code.push(adj[v][w]);
                }
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
        }
        Some(c) => {
            for v in (0..n).filter(|&v| colors[v] == c) {
                let mut next: Vec<usize> = colors.iter().map(|&x| if x >= c { x + 1 } else { x }).collect();
                next[v] = c;
                search(adj, base, next, best);
            }
        }
    }
}
