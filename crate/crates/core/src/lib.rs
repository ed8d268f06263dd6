//! Finite models of lattices of thick subcategories, their spectra of prime
//! thick subcategories, and Balmer spectra of the tensor versions.

pub mod catalog;
pub mod dot;
pub mod error;
pub mod json;
pub mod oracle;
pub mod poset_space;
pub mod report;
pub mod scheme_models;
pub mod spectrum;
pub mod suite;
pub mod tensor;
pub mod thick_lattice;
pub mod topology;

pub use error::{Error, Result};
pub use poset_space::{PointSet, SpecSpace, SubsetFamily, SubsetKind};
pub use report::{Check, Report, Status};
pub use scheme_models::{LocalType, SchemeModel};
pub use spectrum::SpectrumSpace;
pub use tensor::TensorLattice;
pub use thick_lattice::{LatticeMap, MapKind, Provenance, ThickLattice};
pub use topology::FiniteSpace;
