//! Exact-arithmetic Lie theory for Borel-de Siebenthal positive systems:
//! root-system gradings, orbit-character plethysm, the case atlas,
//! relative-invariant degrees, and K-type spectra.
//!
//! All computations are over arbitrary-precision integers and rationals.
//! There is no floating point anywhere in this crate.

pub mod bdscore;
pub mod charkernel;
pub mod invariants;
pub mod lattice;
pub mod spectrum;

pub use bdscore::{BdsCase, CaseData, Grading, GradingError, LeviStructure};
pub use charkernel::{OrbitCharacter, WeightMultiset};
pub use invariants::{BilinearType, InvariantReport};
pub use spectrum::{
    AdmissibilityReport, KType, NegativityReport, SpectrumContext, SpectrumError, SpectrumTable,
    SymbolicBounds,
};
pub use lattice::{
    Embedding, Int, LatticeError, Rat, Root, RootDatum, RootVec, SimpleType, System, Weight,
    WeightVec,
};
