//! Generalized hypergeometric series, the classical transformation catalog
//! and an AGM oracle for the complete elliptic integral.

pub mod agm;
pub mod series;
pub mod transforms;

pub use agm::elliptic_k_agm;
pub use series::{clausen_continuation, pfq, pfq_extended, pochhammer, Argument, HypergeometricDatum};
pub use transforms::{sample_points, verify_transform, verify_transform_extended, TransformId, TransformIdentity};
