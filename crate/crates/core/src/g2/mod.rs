//! The two fourteen-dimensional symmetry algebras: closure, Jacobi, Killing
//! form, roots, and the G2 classification, plus the symmetry checks against
//! the contact form and the structural tensors.

pub mod basis;
pub mod roots;
pub mod structure;
pub mod symmetry;

pub use basis::{basis, basis_as_printed, TheoremId, VectorFieldBasis};
pub use roots::{ascii_clock, classify_g2, roots, CartanMetric, G2Report, LengthClass, RootDatum};
pub use structure::{jacobi_check, killing_form, structure_constants, StructureConstants};
pub use symmetry::{contact_symmetry_check, structural_symmetry_check, cubic_symmetry_check};
