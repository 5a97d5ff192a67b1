//! Finite-field side: point counts on the hypergeometric curve families,
//! finite-field hypergeometric traces, Jacobi sums, lattice-sum Fourier
//! coefficients of CM newforms and the trace identities linking them.

pub mod curves;
pub mod field;
pub mod forms;
pub mod identity;
pub mod jacobi;
pub mod lattice;
pub mod traces;

pub use curves::{count_points, CurveModel};
pub use forms::{form_by_label, load_forms, parse_forms};
pub use identity::{euler_factor_sides, satisfies_ramanujan_bound, trace_sweep, verify_trace_identity, TraceCheck};
pub use jacobi::{jacobi_sum_primary, CyclotomicInteger};
pub use lattice::{lattice_an, lattice_coefficients, CMFormId, FieldElement, LatticeAtom};
pub use traces::{clausen_branch, clausen_hd2_trace, hp, hp_with_branch, ClausenBranch, DatumKind, FiniteFieldDatum};
