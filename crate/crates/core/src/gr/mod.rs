//! Lower-bounded modules, their `Ω` filtration, the associated graded
//! module and its verification suites.

mod graded;
mod module;
mod omega;
mod suites;

pub use graded::{build_gr, GrBasisEntry, GrIndex, GrSnapshot, GrStructure, GrVector, ThetaMatrix};
pub use module::{LowerBoundedModule, ModBasis, ModVec, ModuleDescriptor, ModuleKind, WeightSpace};
pub use omega::{Exclusion, Membership, OmegaFiltration, OmegaSlice, Witness};
pub use suites::*;
