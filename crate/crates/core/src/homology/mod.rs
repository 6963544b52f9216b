//! First homology of the orbifold complement presentation: one meridian per
//! ambient edge, a signed vertex relation at each trivalent vertex, and
//! `label * meridian = 0` for every edge.

mod snf;

use thiserror::Error;

use crate::orb2d::TwoOrbifold;
use crate::siggraph::{canonical_order, cusp_cross_section, GraphError, LabeledGraph, VertexKind};

pub use snf::{cokernel, smith_normal_form, IntegerMatrix, InvariantFactors};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("restriction applies only to cusp S²(2,3,6), got {0}")]
    WrongCusp(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Columns of the presentation: one per ambient edge, in canonical order.
/// Each column records its constituent graph edges; a valence-2 puncture mark
/// joins two halves into one column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Meridians {
    pub columns: Vec<Vec<usize>>,
    /// Column of each graph edge.
    pub column_of: Vec<usize>,
    /// Orientation per graph edge relative to its column: +1 when the column
    /// runs from `ends[0]` to `ends[1]`.
    pub sign_of: Vec<i64>,
    /// Trivalent vertices in canonical order.
    pub vertex_rows: Vec<usize>,
}

pub fn meridians(g: &LabeledGraph) -> Meridians {
    let (pos, order) = canonical_order(g);
    let m = g.edge_count();
    let mut column_of = vec![usize::MAX; m];
    let mut sign_of = vec![0i64; m];
    let mut columns: Vec<Vec<usize>> = Vec::new();
    let through = |e: usize| -> Option<usize> {
        // Partner half through a valence-2 mark at ends[0].
        let mark = g.edges()[e].ends[0];
        if g.edges()[e].transverse.is_some() && g.kind(mark) == VertexKind::PunctureMark && g.valence(mark) == 2 {
            g.darts_at(mark).iter().map(|d| d.edge).find(|&f| f != e)
        } else {
            None
        }
    };
    for &e in &order {
        if column_of[e] != usize::MAX {
            continue;
        }
        let col = columns.len();
        let [a, b] = g.edges()[e].ends;
        match through(e) {
            Some(f) => {
                // Run from the off-P end of the lower half to the other.
                let (x, y) = (g.edges()[e].ends[1], g.edges()[f].ends[1]);
                let (first, second) = if pos[x] <= pos[y] { (e, f) } else { (f, e) };
                sign_of[first] = -1;
                sign_of[second] = 1;
                column_of[e] = col;
                column_of[f] = col;
                columns.push(vec![first, second]);
            }
            None => {
                sign_of[e] = if pos[a] <= pos[b] { 1 } else { -1 };
                column_of[e] = col;
                columns.push(vec![e]);
            }
        }
    }
    let mut vertex_rows = g.trivalent_vertices();
    vertex_rows.sort_by_key(|&v| pos[v]);
    Meridians {
        columns,
        column_of,
        sign_of,
        vertex_rows,
    }
}

/// Relation matrix with each column's orientation optionally reversed.
pub fn relation_matrix_oriented(g: &LabeledGraph, flip: &[bool]) -> IntegerMatrix {
    let mer = meridians(g);
    let ncol = mer.columns.len();
    let mut m = IntegerMatrix::zero(0, ncol);
    for &v in &mer.vertex_rows {
        let mut row = vec![0i64; ncol];
        for d in g.darts_at(v) {
            let col = mer.column_of[d.edge];
            // Leaving v along the column direction counts +1.
            let along = if d.end == 0 { 1 } else { -1 };
            let f = if flip.get(col).copied().unwrap_or(false) { -1 } else { 1 };
            row[col] += along * mer.sign_of[d.edge] * f;
        }
        m.push_row(&row);
    }
    for (col, edges) in mer.columns.iter().enumerate() {
        let mut row = vec![0i64; ncol];
        row[col] = g.label(edges[0]) as i64;
        m.push_row(&row);
    }
    m
}

pub fn relation_matrix(g: &LabeledGraph) -> IntegerMatrix {
    relation_matrix_oriented(g, &[])
}

pub fn h1(g: &LabeledGraph) -> InvariantFactors {
    cokernel(&relation_matrix(g))
}

/// H1 trivial or Z/2, for S²(2,3,6)-cusped graphs only.
pub fn passes_restriction_two(g: &LabeledGraph) -> Result<bool, HomologyError> {
    let cusp = cusp_cross_section(g)?;
    if cusp != TwoOrbifold::sphere(&[2, 3, 6]).expect("valid") {
        return Err(HomologyError::WrongCusp(cusp.to_string()));
    }
    let h = h1(g);
    Ok(h.free_rank == 0 && (h.torsion.is_empty() || h.torsion == [2]))
}

/// Whether H1 is generated by the meridians of the peripheral edges.
pub fn peripherally_generated(g: &LabeledGraph) -> bool {
    let mer = meridians(g);
    let mut m = relation_matrix(g);
    let mut cols: Vec<usize> = g.peripheral_edges().iter().map(|&e| mer.column_of[e]).collect();
    cols.sort();
    cols.dedup();
    for c in cols {
        let mut row = vec![0i64; m.cols()];
        row[c] = 1;
        m.push_row(&row);
    }
    cokernel(&m).is_trivial()
}
