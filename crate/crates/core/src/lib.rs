//! Computational toolkit for F-singularities of direct summands of
//! polynomial rings over prime fields.

pub mod acceptance;
pub mod bs;
pub mod cartier;
pub mod error;
pub mod finv;
pub mod frobenius;
pub mod groebner;
pub mod lattice;
pub mod oracle;
pub mod poly;
pub mod summand;

pub use error::{Error, Result};
pub use groebner::{GroebnerLimits, Ideal};
pub use poly::{Monomial, MonomialOrder, Polynomial, Ring};
