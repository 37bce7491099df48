//! Exact arithmetic over Q(c, w) with c^3 = 12 and w^2 = 3.

pub mod eval;
pub mod expr;
pub mod gcd;
pub mod integrate;
pub mod linalg;
pub mod poly;
pub mod ratfun;
pub mod resultant;
pub mod scalar;
pub mod var;

pub use expr::{parse, parse_infix, parse_rf, rf, Expr};
pub use gcd::gcd;
pub use poly::{Monomial, Polynomial};
pub use ratfun::RationalFunction;
pub use resultant::resultant;
pub use scalar::{rat, AlgebraicScalar, Rational};
pub use var::{var, Var};
