use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{Candidate, EnumError, Flag, Invariants, Verdict};
use crate::homology::passes_restriction_two;
use crate::orb2d::{is_euclidean_turnover, TwoOrbifold};
use crate::siggraph::{
    as_tetra, check_spherical_links, cusp_cross_section, from_tetra, quotient_by_involution, symmetries,
    LabeledGraph, TetraPattern,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientSummary {
    pub graph: LabeledGraph,
    pub pattern: Option<TetraPattern>,
    pub cusp: TwoOrbifold,
    /// The quotient's own verdict when it is a (2,3,6) tetrahedral labeling.
    pub verdict: Option<Verdict>,
}

/// Sphericity survivors among labelings of the given cusp with interior
/// labels up to `label_bound`, one per equivalence class, in normalized order.
pub fn classify_tetrahedral(cusp: &TwoOrbifold, label_bound: u32) -> Result<Vec<Candidate>, EnumError> {
    if !is_euclidean_turnover(cusp) {
        return Err(EnumError::NotEuclideanCusp(cusp.to_string()));
    }
    if label_bound < 6 {
        return Err(EnumError::LabelBound(label_bound));
    }
    let orders: [u32; 3] = cusp.cone_points().try_into().expect("turnover");
    let mut patterns = BTreeSet::new();
    for a in 2..=label_bound {
        for b in 2..=label_bound {
            for c in 2..=label_bound {
                let p = TetraPattern::new(orders, [a, b, c]).expect("Euclidean cusp");
                if check_spherical_links(&from_tetra(&p)) {
                    patterns.insert(p.normalized());
                }
            }
        }
    }
    let patterns: Vec<TetraPattern> = patterns.into_iter().collect();
    Ok(patterns.par_iter().map(classify_pattern).collect())
}

/// Runs one labeling through sphericity, the (2,3,6) homology restriction
/// and symmetry reduction, in that order.
pub fn classify_pattern(p: &TetraPattern) -> Candidate {
    let graph = from_tetra(p);
    let invariants = Invariants::of(&graph);
    let cusp = p.cusp();
    let s236 = TwoOrbifold::sphere(&[2, 3, 6]).expect("valid");
    let mut quotient = None;
    let mut flags = Vec::new();
    let syms = symmetries(&graph);
    let verdict = if !invariants.links_spherical() {
        Verdict::ExcludedSphericity
    } else if cusp == s236 && !passes_restriction_two(&graph).expect("cusp checked") {
        Verdict::ExcludedH1
    } else if !syms.is_empty() {
        quotient = syms.iter().find_map(|t| quotient_by_involution(&graph, t).ok()).map(|q| {
            let pattern = as_tetra(&q.graph);
            let qcusp = cusp_cross_section(&q.graph).expect("quotient keeps a cusp");
            let verdict = pattern.filter(|t| t.cusp() == s236).map(|t| classify_pattern(&t).verdict);
            QuotientSummary {
                graph: q.graph,
                pattern: pattern.map(|t| t.normalized()),
                cusp: qcusp,
                verdict,
            }
        });
        if cusp == TwoOrbifold::sphere(&[3, 3, 3]).expect("valid") {
            flags.push(Flag::BranchClaimsFigureEight);
        }
        Verdict::ExcludedSymmetryReduction
    } else if cusp == s236 {
        if p.interior_labels().contains(&5) {
            Verdict::DodecahedralClass
        } else {
            Verdict::FigureEightClass
        }
    } else {
        Verdict::WhiteheadClassNoKnot
    };
    Candidate {
        graph,
        pattern: Some(p.normalized()),
        invariants,
        verdict,
        quotient,
        flags,
    }
}
