//! q-expansions and extended-precision evaluation of eta, theta, Eisenstein
//! series, hauptmoduls and level-5/6 modular functions, the identity catalog
//! relating them, and quadratic twists.

pub mod eval;
pub mod identities;
pub mod named;
pub mod qseries;
pub mod series;
pub mod twist;

pub use eval::{
    curly_g, ek, eta, eta_quotient, eval_qseries, g2_star, g2_twist, g2n, gk, hauptmodul,
    j_invariant, t25, t5, theta, u6, Tau,
};
pub use identities::{verify_eisenstein_identity, EisensteinIdentity};
pub use named::{load_u6_values, parse_special_values, NamedFunction, SpecialValue};
pub use qseries::{QSeries, TailHint};
pub use series::{build_qseries, SeriesFunction};
pub use twist::{twist_coeffs, DirichletCharacter};
