//! Lie contact systems built from solutions of Noth's equation, and the
//! structural tensors that cut them out.

pub mod catalog;
pub mod elimination;
pub mod system;

pub use catalog::{CaseId, Relation, TensorCatalog};
pub use elimination::{eliminate_parameter, FactorRow, PairResultant};
pub use system::{contact_volume, standard_chart, HModel, HVariant, LieContactSystem};
