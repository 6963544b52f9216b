//! Fixed citation strings attached to verdicts. Every chain in the output is
//! built from this table.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Citation {
    ReflectionClassification,
    TetrahedralCaseAnalysis,
    SmallOrbifoldShapes,
    QuadrilateralExclusion,
    RegularDihedralCover,
    AreflectionModels,
    ApKnots,
    AchiralRigidCusp,
    NoReflectionCover,
    RigidCuspReflection,
    TurnoverInvolutions,
    Barrier,
    SphericalLinks,
    HomologyRestriction,
    SymmetryReduction,
}

impl Citation {
    pub fn text(self) -> &'static str {
        match self {
            Citation::ReflectionClassification => "knot complements covering a reflection orbifold",
            Citation::TetrahedralCaseAnalysis => "case analysis of one-cusped tetrahedral orbifolds",
            Citation::SmallOrbifoldShapes => "shapes of small one-cusped reflection orbifolds",
            Citation::QuadrilateralExclusion => "quadrilateral type is not regularly covered by a knot complement",
            Citation::RegularDihedralCover => "a pillowcase cusp forces a regular dihedral cover",
            Citation::AreflectionModels => "orientable rigid-cusped quotients without reflections",
            Citation::ApKnots => "AP knots covering reflection orbifolds",
            Citation::AchiralRigidCusp => "achiral knots with a (2,3,6) cusp cover",
            Citation::NoReflectionCover => "small non-arithmetic knots cover no reflection orbifold",
            Citation::RigidCuspReflection => "rigid-cusped quotients of achiral knots are reflection orbifolds",
            Citation::TurnoverInvolutions => "involutions of S²(2,3,6) fix its cone points",
            Citation::Barrier => "disjoint 1-cycles separated by a sphere give an essential suborbifold",
            Citation::SphericalLinks => "vertex links are spherical",
            Citation::HomologyRestriction => "H1 is trivial or Z/2",
            Citation::SymmetryReduction => "minimal reflection orbifold in the class",
        }
    }
}

impl std::fmt::Display for Citation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.text())
    }
}
