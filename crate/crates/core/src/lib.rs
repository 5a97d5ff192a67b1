//! High-precision evaluation and verification of special L-values of CM
//! weight three Hecke eigenforms, together with the hypergeometric,
//! modular and finite-field identities they rest on.

pub mod arith;
pub mod error;
pub mod fixtures;
pub mod hypergeom;
pub mod lvalues;
pub mod modforms;
pub mod numerics;
pub mod verify;

pub use error::{Error, Result};
