//! Exact verification of G2 contact structures attached to solutions of
//! Noth's equation.
//!
//! The crate is layered: [`algebra`] provides exact arithmetic over
//! Q(12^(1/3), 3^(1/2)), [`diffgeo`] differential forms and vector fields on
//! coordinate charts, and the remaining modules the concrete verifications.

pub mod algebra;
pub mod contact;
pub mod g2;
pub mod diffgeo;
pub mod noth;
pub mod correspondence;
pub mod dft;
pub mod verify;

mod error;

pub use error::Error;
