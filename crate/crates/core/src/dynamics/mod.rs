//! Group actions on cones, the induced pair `(ρ, σ)`, and its verification.

pub mod group;
pub mod models;
pub mod orbit;
pub mod pair;
pub mod verify;

pub use group::{Group, GroupModel, GroupWord, Letter, MatrixGroup};
pub use orbit::{orbit_coverage, orbit_coverage_bounded, CoverageReport};
pub use pair::{
    induced_pair, multiplier_ratio, scale_multiplier, synthesize_action, ConicPair, ConvexDomain, Elem, SemiConicPair,
    SynthesizedAction,
};
pub use verify::{
    invariant_section_check, verify_action_axioms, verify_conic_pair, verify_multiplier, verify_multiplier_elements,
    ConicPairReport,
};

#[cfg(test)]
mod tests;
