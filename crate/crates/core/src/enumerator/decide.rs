use std::collections::BTreeSet;

use serde::Serialize;

use super::EnumError;
use crate::citations::Citation;

pub const FACTS: [&str; 5] = ["ap_knot", "covers_reflection_orbifold", "achiral", "cusp_236_cover", "small_nonarithmetic"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub verdict: &'static str,
    pub chain: Vec<Citation>,
}

/// First matching rule wins; rules are checked from the most specific.
pub fn decision_tree<S: AsRef<str>>(facts: &[S]) -> Result<Decision, EnumError> {
    let mut set = BTreeSet::new();
    for f in facts {
        let f = f.as_ref().trim();
        if !FACTS.contains(&f) {
            return Err(EnumError::UnknownFact(f.to_string()));
        }
        set.insert(f);
    }
    let has = |names: &[&str]| names.iter().all(|n| set.contains(n));
    use Citation::*;
    let (verdict, chain) = if has(&["small_nonarithmetic", "covers_reflection_orbifold"]) {
        ("impossible", vec![ReflectionClassification, NoReflectionCover])
    } else if has(&["ap_knot", "covers_reflection_orbifold"]) {
        (
            "K ∈ {figure-eight, dodecahedral}; orbifold is one-cusped tetrahedral",
            vec![SmallOrbifoldShapes, QuadrilateralExclusion, ReflectionClassification, ApKnots],
        )
    } else if has(&["ap_knot", "achiral", "cusp_236_cover"]) {
        (
            "K ∈ {figure-eight, dodecahedral}",
            vec![TurnoverInvolutions, RigidCuspReflection, ApKnots, AchiralRigidCusp],
        )
    } else {
        ("no conclusion", Vec::new())
    };
    Ok(Decision { verdict, chain })
}
