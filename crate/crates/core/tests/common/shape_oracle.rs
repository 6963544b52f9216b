//! Brute-force disk graphs: every perfect matching of half-edges, every
//! rotation of the inner vertices, filtered directly.
//!
//! Half-edge `h < leaves` belongs to leaf `h`; inner vertex `j` owns
//! half-edges `leaves + 3j .. leaves + 3j + 3`.

use orbcheck::siggraph::{Dart, GraphBuilder, LabeledGraph, VertexKind};

pub struct Embedded {
    pub leaves: usize,
    pub inner: usize,
    /// Partner half-edge.
    pub mate: Vec<usize>,
    /// Next half-edge counterclockwise around its vertex.
    pub sigma: Vec<usize>,
}

impl Embedded {
    fn vertex_of(&self, h: usize) -> usize {
        if h < self.leaves {
            h
        } else {
            self.leaves + (h - self.leaves) / 3
        }
    }

    fn vertex_count(&self) -> usize {
        self.leaves + self.inner
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.mate.len())
            .filter(|&h| h < self.mate[h])
            .map(|h| (self.vertex_of(h), self.vertex_of(self.mate[h])))
            .collect()
    }

    fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.mate.len()];
        let mut out = Vec::new();
        for s in 0..self.mate.len() {
            if seen[s] {
                continue;
            }
            let mut f = Vec::new();
            let mut h = s;
            while !seen[h] {
                seen[h] = true;
                f.push(h);
                h = self.sigma[self.mate[h]];
            }
            out.push(f);
        }
        out
    }

    fn connected(&self) -> bool {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for (a, b) in self.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Planar with every leaf on one face; returns that face.
    fn disk_face(&self) -> Option<Vec<usize>> {
        let v = self.vertex_count() as i64;
        let e = (self.mate.len() / 2) as i64;
        let mut seen = 0u64;
        let mut count = 0;
        for s in 0..self.mate.len() {
            if seen >> s & 1 == 0 {
                count += 1;
                let mut h = s;
                while seen >> h & 1 == 0 {
                    seen |= 1 << h;
                    h = self.sigma[self.mate[h]];
                }
            }
        }
        if v - e + count != 2 {
            return None;
        }
        let faces = self.faces();
        faces.into_iter().find(|f| (0..self.leaves).all(|l| f.contains(&l)))
    }

    /// Vertex sets of all simple leaf-to-leaf paths, as bitmasks.
    fn leaf_paths(&self, adj: &[u32]) -> Vec<u32> {
        let mut out = Vec::new();
        fn walk(adj: &[u32], leaves: usize, start: usize, v: usize, used: u32, out: &mut Vec<u32>) {
            if v != start && v < leaves {
                if start < v {
                    out.push(used);
                }
                return;
            }
            for w in 0..adj.len() {
                if adj[v] >> w & 1 == 1 && used >> w & 1 == 0 {
                    walk(adj, leaves, start, w, used | 1 << w, out);
                }
            }
        }
        for l in 0..self.leaves {
            walk(adj, self.leaves, l, l, 1 << l, &mut out);
        }
        out
    }

    /// Vertex sets of all simple cycles, loops and digons included.
    fn cycles(&self, adj: &[u32]) -> Vec<u32> {
        let mut out = Vec::new();
        let edges = self.edges();
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a == b {
                out.push(1 << a);
            } else if edges[i + 1..].iter().any(|&(c, d)| (c, d) == (a, b) || (d, c) == (a, b)) {
                out.push(1 << a | 1 << b);
            }
        }
        // Cycles of length at least three, rooted at their smallest vertex.
        fn walk(adj: &[u32], root: usize, v: usize, len: usize, used: u32, out: &mut Vec<u32>) {
            for w in 0..adj.len() {
                if adj[v] >> w & 1 == 0 {
                    continue;
                }
                if w == root && len >= 3 {
                    out.push(used);
                } else if w > root && used >> w & 1 == 0 {
                    walk(adj, root, w, len + 1, used | 1 << w, out);
                }
            }
        }
        for r in 0..self.vertex_count() {
            walk(adj, r, r, 1, 1 << r, &mut out);
        }
        out
    }

    /// Simple adjacency as bitmasks, loops dropped.
    fn adjacency(&self) -> Vec<u32> {
        let mut adj = vec![0u32; self.vertex_count()];
        for (a, b) in self.edges() {
            if a != b {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
        adj
    }

    fn generic_ok(&self) -> bool {
        let adj = self.adjacency();
        let cycles = self.cycles(&adj);
        if cycles.is_empty() {
            return true;
        }
        self.leaf_paths(&adj).iter().all(|p| cycles.iter().all(|c| p & c != 0))
    }

    /// Between consecutive leaves on the disk face, the loop-erased walk has
    /// three edges.
    fn arcs_ok(&self, face: &[usize]) -> bool {
        let start = face.iter().position(|&h| h < self.leaves).unwrap();
        let walk: Vec<usize> = face[start..].iter().chain(&face[..start]).copied().collect();
        let mut i = 0;
        while i < walk.len() {
            let mut j = i + 1;
            while j < walk.len() && walk[j] >= self.leaves {
                j += 1;
            }
            let mut verts: Vec<usize> = walk[i..j].iter().map(|&h| self.vertex_of(h)).collect();
            verts.push(self.vertex_of(walk[j % walk.len()]));
            let mut erased: Vec<usize> = Vec::new();
            for v in verts {
                if let Some(k) = erased.iter().position(|&u| u == v) {
                    erased.truncate(k + 1);
                } else {
                    erased.push(v);
                }
            }
            if erased.len() != 4 {
                return false;
            }
            i = j;
        }
        true
    }

    /// Minimal rooted traversal code over all roots and both orientations.
    fn map_code(&self) -> Vec<usize> {
        let n = self.mate.len();
        let mut inv = vec![0; n];
        for h in 0..n {
            inv[self.sigma[h]] = h;
        }
        let mut best: Option<Vec<usize>> = None;
        for root in 0..n {
            for mirror in [false, true] {
                let rot = |h: usize| if mirror { inv[h] } else { self.sigma[h] };
                let mut num = vec![usize::MAX; n];
                let mut order = vec![root];
                num[root] = 0;
                let mut k = 0;
                while k < order.len() {
                    let h = order[k];
                    for g in [self.mate[h], rot(h)] {
                        if num[g] == usize::MAX {
                            num[g] = order.len();
                            order.push(g);
                        }
                    }
                    k += 1;
                }
                if order.len() < n {
                    continue;
                }
                let mut code = Vec::with_capacity(3 * n);
                for &h in &order {
                    code.push(num[self.mate[h]]);
                    code.push(num[rot(h)]);
                    code.push(usize::from(h < self.leaves));
                }
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
        best.unwrap()
    }

    pub fn to_graph(&self) -> LabeledGraph {
        let mut b = GraphBuilder::new();
        let verts: Vec<usize> = (0..self.vertex_count())
            .map(|v| {
                b.vertex(if v < self.leaves {
                    VertexKind::PeripheralEnd
                } else {
                    VertexKind::Interior
                })
            })
            .collect();
        let mut dart = vec![Dart::new(0, 0); self.mate.len()];
        for h in 0..self.mate.len() {
            if h < self.mate[h] {
                let e = b.edge(verts[self.vertex_of(h)], verts[self.vertex_of(self.mate[h])], 2);
                dart[h] = Dart::new(e, 0);
                dart[self.mate[h]] = Dart::new(e, 1);
            }
        }
        for v in 0..self.vertex_count() {
            let hs: Vec<usize> = if v < self.leaves {
                vec![v]
            } else {
                let j = self.leaves + 3 * (v - self.leaves);
                vec![j, self.sigma[j], self.sigma[self.sigma[j]]]
            };
            b.rotation(verts[v], hs.iter().map(|&h| dart[h]).collect());
        }
        b.build().expect("oracle graph is valid")
    }
}

fn matchings(mate: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    let Some(a) = mate.iter().position(|&m| m == usize::MAX) else {
        visit(mate);
        return;
    };
    for b in a + 1..mate.len() {
        if mate[b] == usize::MAX {
            mate[a] = b;
            mate[b] = a;
            matchings(mate, visit);
            mate[a] = usize::MAX;
            mate[b] = usize::MAX;
        }
    }
}

/// Relabelings of half-edges that map a matching to an equivalent one:
/// permutations inside one inner vertex and swaps of adjacent inner vertices.
fn relabelings(leaves: usize, inner: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = leaves + 3 * inner;
    let mut out = Vec::new();
    let mut push = |p: Vec<usize>| {
        let mut inv = vec![0; n];
        for (i, &x) in p.iter().enumerate() {
            inv[x] = i;
        }
        out.push((p, inv));
    };
    for j in 0..inner {
        let h = leaves + 3 * j;
        for perm in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let mut p: Vec<usize> = (0..n).collect();
            for k in 0..3 {
                p[h + k] = h + perm[k];
            }
            push(p);
        }
        if j + 1 < inner {
            let mut p: Vec<usize> = (0..n).collect();
            for k in 0..3 {
                p[h + k] = h + 3 + k;
                p[h + 3 + k] = h + k;
            }
            push(p);
        }
    }
    out
}

/// False when some relabeling gives a lexicographically smaller matching;
/// the minimum of every class always passes.
fn locally_minimal(mate: &[usize], perms: &[(Vec<usize>, Vec<usize>)]) -> bool {
    perms.iter().all(|(p, inv)| {
        for i in 0..mate.len() {
            let image = p[mate[inv[i]]];
            if image != mate[i] {
                return image > mate[i];
            }
        }
        true
    })
}

/// Surviving disk graphs with exactly `inner` inner vertices, one per map
/// isomorphism class.
pub fn shapes_with(leaves: usize, inner: usize) -> Vec<Embedded> {
    let n = leaves + 3 * inner;
    if n % 2 == 1 {
        return Vec::new();
    }
    let mut found: Vec<(Vec<usize>, Embedded)> = Vec::new();
    let mut mate = vec![usize::MAX; n];
    let vertex_of = |h: usize| if h < leaves { h } else { leaves + (h - leaves) / 3 };
    let nv = leaves + inner;
    let perms = relabelings(leaves, inner);
    matchings(&mut mate, &mut |mate| {
        if !locally_minimal(mate, &perms) {
            return;
        }
        // Connectivity first, without building anything.
        let mut reach = 1u32;
        loop {
            let mut next = reach;
            for h in 0..n {
                if reach >> vertex_of(h) & 1 == 1 {
                    next |= 1 << vertex_of(mate[h]);
                }
            }
            if next == reach {
                break;
            }
            reach = next;
        }
        if reach != (1u32 << nv) - 1 {
            return;
        }
        let base = Embedded {
            leaves,
            inner,
            mate: mate.to_vec(),
            sigma: (0..n).collect(),
        };
        if !base.connected() || !base.generic_ok() {
            return;
        }
        let mut g = base;
        for mask in 0..1u32 << inner {
            for j in 0..inner {
                let h = leaves + 3 * j;
                let cyc = if mask >> j & 1 == 0 { [h + 1, h + 2, h] } else { [h + 2, h, h + 1] };
                g.sigma[h..h + 3].copy_from_slice(&cyc);
            }
            if let Some(face) = g.disk_face() {
                if g.arcs_ok(&face) {
                    let code = g.map_code();
                    if found.iter().all(|(c, _)| *c != code) {
                        let keep = Embedded {
                            leaves,
                            inner,
                            mate: g.mate.clone(),
                            sigma: g.sigma.clone(),
                        };
                        found.push((code, keep));
                    }
                }
            }
        }
    });
    found.into_iter().map(|(_, g)| g).collect()
}

/// All survivors with at most `max_inner` inner vertices.
pub fn shapes(leaves: usize, max_inner: usize) -> Vec<LabeledGraph> {
    (0..=max_inner)
        .flat_map(|k| shapes_with(leaves, k))
        .map(|g| g.to_graph())
        .collect()
}
