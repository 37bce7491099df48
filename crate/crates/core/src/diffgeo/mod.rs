//! Charts, forms, vector fields and maps with exact coefficients.

pub mod chart;
pub mod exterior;
pub mod map;
pub mod symmetric;
pub mod vector;

pub use chart::{Chart, ChartRef, Jet};
pub use exterior::ExteriorForm;
pub use map::CoordinateMap;
pub use symmetric::SymmetricForm;
pub use vector::VectorField;
