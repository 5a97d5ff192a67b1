//! Special L-values: Chowla–Selberg periods, the Eisenstein-atom route, a
//! lattice coset route, an approximate functional equation route, and the
//! reproduction suites comparing them with hypergeometric closed forms.

pub mod afe;
pub mod atoms;
pub mod chowla;
pub mod coset;
pub mod report;
pub mod reproduce;
pub mod tables;

pub use afe::{lvalue_afe, lvalue_afe_detailed, AfeValue, AFE_TOLERANCE};
pub use atoms::{decomposition, evaluate_kind, lvalue_eisenstein, parse_eisenstein, Decomposition, EisensteinAtom, EisensteinKind};
pub use chowla::{chowla_selberg, class_number, ChowlaSelbergParams};
pub use coset::{coset_sum, lvalue_lattice};
pub use report::{Format, LValueReport, ReportCheck, ReportValue, Route, SuiteReport};
pub use reproduce::{clausen_value, primary_lvalue, reproduce, reproduce_suite, single_lvalue, SuiteId};
pub use tables::{load_chains, load_table4, load_tables, parse_chains, parse_table4, parse_tables};
