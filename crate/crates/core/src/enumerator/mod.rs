//! Classification engines: tetrahedral labelings, disk-graph shapes, the
//! quadrilateral exclusion, reflection-compatible model families, and the
//! verdict rules.

mod decide;
mod grow;
mod models;
mod quad;
mod shapes;
mod tetrahedral;

use serde::Serialize;
use thiserror::Error;

use crate::citations::Citation;
use crate::homology::{h1, peripherally_generated, InvariantFactors};
use crate::orb2d::{geometry_type, is_euclidean_turnover, GeometryClass, TwoOrbifold};
use crate::siggraph::{
    automorphisms, canonical_order, cusp_cross_section, symmetries, vertex_link, LabeledGraph, TetraPattern,
};

pub use decide::{decision_tree, Decision, FACTS};
pub use models::{enumerate_areflection_models, FamilyName, ModelFamily};
pub use quad::{exclude_quadrilateral_type, forced_quadrilateral_pattern, CertificateStep, ExclusionCertificate};
pub use shapes::enumerate_shapes;
pub use tetrahedral::{classify_pattern, classify_tetrahedral, QuotientSummary};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("boundary vertex count must be 3 or 4, got {0}")]
    BoundaryCount(usize),
    #[error("interior vertex bound must be at least 2, got {0}")]
    InteriorBound(usize),
    #[error("cusp {0} is not a Euclidean turnover")]
    NotEuclideanCusp(String),
    #[error("label bound must be at least 6, got {0}")]
    LabelBound(u32),
    #[error("n_max must be at least 5, got {0}")]
    NMax(u32),
    #[error("unknown fact {0:?}")]
    UnknownFact(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Verdict {
    FigureEightClass,
    DodecahedralClass,
    WhiteheadClassNoKnot,
    ExcludedSphericity,
    ExcludedH1,
    ExcludedSymmetryReduction,
    ExcludedQuadType,
    ModelFamily(FamilyName, Option<u32>),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::FigureEightClass => "FigureEightClass",
            Verdict::DodecahedralClass => "DodecahedralClass",
            Verdict::WhiteheadClassNoKnot => "WhiteheadClassNoKnot",
            Verdict::ExcludedSphericity => "ExcludedSphericity",
            Verdict::ExcludedH1 => "ExcludedH1",
            Verdict::ExcludedSymmetryReduction => "ExcludedSymmetryReduction",
            Verdict::ExcludedQuadType => "ExcludedQuadType",
            Verdict::ModelFamily(..) => "ModelFamily",
        }
    }

    pub fn citations(&self) -> Vec<Citation> {
        use Citation::*;
        match self {
            Verdict::FigureEightClass | Verdict::DodecahedralClass => {
                vec![ReflectionClassification, TetrahedralCaseAnalysis]
            }
            Verdict::WhiteheadClassNoKnot => vec![ReflectionClassification, TetrahedralCaseAnalysis],
            Verdict::ExcludedSphericity => vec![TetrahedralCaseAnalysis, SphericalLinks],
            Verdict::ExcludedH1 => vec![TetrahedralCaseAnalysis, HomologyRestriction],
            Verdict::ExcludedSymmetryReduction => vec![TetrahedralCaseAnalysis, SymmetryReduction],
            Verdict::ExcludedQuadType => vec![SmallOrbifoldShapes, RegularDihedralCover, QuadrilateralExclusion],
            Verdict::ModelFamily(..) => vec![AreflectionModels, Barrier, SphericalLinks],
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::ModelFamily(name, Some(n)) => write!(f, "ModelFamily({}, n={n})", name.as_str()),
            Verdict::ModelFamily(name, None) => write!(f, "ModelFamily({})", name.as_str()),
            v => f.write_str(v.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Flag {
    /// The case analysis concludes figure-eight for every (3,3,3) labeling,
    /// while the k=5 quotient carries the dodecahedral labeling.
    BranchClaimsFigureEight,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub cusp: TwoOrbifold,
    /// Links of the trivalent vertices in canonical vertex order.
    pub links: Vec<TwoOrbifold>,
    pub h1: InvariantFactors,
    /// Nontrivial label-preserving involutions.
    pub symmetry_count: usize,
    /// Orientation-reversing ones among them.
    pub reflection_count: usize,
    /// Nontrivial label-preserving orientation-preserving automorphisms.
    pub rotation_count: usize,
    pub peripherally_generated: bool,
}

impl Invariants {
    pub fn of(g: &LabeledGraph) -> Invariants {
        let (pos, _) = canonical_order(g);
        let mut tri = g.trivalent_vertices();
        tri.sort_by_key(|&v| pos[v]);
        let sym = symmetries(g);
        Invariants {
            cusp: cusp_cross_section(g).expect("candidate graphs have a cusp"),
            links: tri.iter().map(|&v| vertex_link(g, v).expect("trivalent")).collect(),
            h1: h1(g),
            symmetry_count: sym.len(),
            reflection_count: sym.iter().filter(|t| t.orientation_reversing).count(),
            rotation_count: automorphisms(g)
                .iter()
                .filter(|a| !a.is_identity() && !a.orientation_reversing)
                .count(),
            peripherally_generated: peripherally_generated(g),
        }
    }

    pub fn links_spherical(&self) -> bool {
        self.links.iter().all(|l| geometry_type(l) == GeometryClass::Spherical)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub graph: LabeledGraph,
    pub pattern: Option<TetraPattern>,
    pub invariants: Invariants,
    pub verdict: Verdict,
    pub quotient: Option<QuotientSummary>,
    pub flags: Vec<Flag>,
}

impl Candidate {
    pub fn citations(&self) -> Vec<Citation> {
        self.verdict.citations()
    }
}

/// Verdict recomputed from stored invariants alone, or `None` when the
/// invariants do not determine one.
pub fn rederive_verdict(c: &Candidate) -> Option<Verdict> {
    let inv = &c.invariants;
    if let Verdict::ModelFamily(..) = c.verdict {
        let ok = inv.links_spherical()
            && is_euclidean_turnover(&inv.cusp)
            && inv.reflection_count > 0
            && inv.rotation_count == 0
            && inv.peripherally_generated;
        return ok.then_some(c.verdict);
    }
    if !inv.links_spherical() {
        return Some(Verdict::ExcludedSphericity);
    }
    let s236 = TwoOrbifold::sphere(&[2, 3, 6]).expect("valid");
    if inv.cusp == s236 && !(inv.h1.free_rank == 0 && (inv.h1.torsion.is_empty() || inv.h1.torsion == [2])) {
        return Some(Verdict::ExcludedH1);
    }
    if inv.symmetry_count > 0 {
        return Some(Verdict::ExcludedSymmetryReduction);
    }
    let has = |t: &[u32]| inv.links.contains(&TwoOrbifold::sphere(t).expect("valid"));
    if inv.cusp == s236 {
        if has(&[2, 3, 5]) {
            return Some(Verdict::DodecahedralClass);
        }
        if has(&[2, 3, 3]) {
            return Some(Verdict::FigureEightClass);
        }
        return None;
    }
    if inv.cusp == TwoOrbifold::sphere(&[2, 4, 4]).expect("valid") {
        return Some(Verdict::WhiteheadClassNoKnot);
    }
    None
}
