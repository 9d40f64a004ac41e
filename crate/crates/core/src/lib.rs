//! Numerical toolkit for conic representations of groups.
//!
//! The pieces, bottom up:
//!
//! * [`cone`]: points, polyhedral cones, section functionals, projection,
//!   membership and extremality via nonnegative least squares;
//! * [`measure`]: finitely supported measures and their resultant;
//! * [`dynamics`]: group actions, the pair `(ρ, σ)` induced on a section,
//!   synthesis of the conic action back from a pair, and sampled checks;
//! * [`msec`]: the lift of a pair to probability measures;
//! * [`triviality`]: coboundary solving on finite orbit graphs;
//! * [`sl2`]: `SL₂(ℝ)` on the projective line.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix `f64`, and `…F32` variants exist for the core types.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::type_complexity)]

pub mod cone;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod measure;
pub mod msec;
pub mod report;
pub mod scalar;
pub mod sl2;
pub mod tolerance;
pub mod triviality;

pub use cone::{
    barycenter, cone_coefficients, cone_contains, extreme_generators, is_extreme_generator, project_to_section, ConePoint,
    PolyhedralCone, SectionFunctional,
};
pub use error::{Error, Result};
pub use measure::{resultant, Atom, AtomicMeasure, SupportPoint};
pub use report::{CheckReport, SampleRow};
pub use scalar::Real;

pub type ConePointF64 = cone::ConePoint<f64>;
pub type PolyhedralConeF64 = cone::PolyhedralCone<f64>;
pub type SectionFunctionalF64 = cone::SectionFunctional<f64>;
pub type AtomicMeasureF64 = measure::AtomicMeasure<f64>;
pub type MatrixF64 = linalg::Matrix<f64>;
pub type MatrixGroupF64 = dynamics::MatrixGroup<f64>;
pub type ConicPairF64 = dynamics::ConicPair<f64, dynamics::MatrixGroup<f64>>;
pub type OrbitGraphF64 = triviality::OrbitGraph<f64>;
pub type Mat2F64 = sl2::Mat2<f64>;
pub type P1PointF64 = sl2::P1Point<f64>;
pub type P1MeasureF64 = measure::AtomicMeasure<f64, sl2::P1Point<f64>>;

pub type ConePointF32 = cone::ConePoint<f32>;
pub type PolyhedralConeF32 = cone::PolyhedralCone<f32>;
pub type AtomicMeasureF32 = measure::AtomicMeasure<f32>;
pub type Mat2F32 = sl2::Mat2<f32>;
pub type P1PointF32 = sl2::P1Point<f32>;
