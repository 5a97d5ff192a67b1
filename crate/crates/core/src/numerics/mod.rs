//! Exact rational and quadratic-surd arithmetic, extended-precision complex
//! evaluation, CM points and fundamental-domain reduction.

pub mod algexpr;
pub mod cmpoint;
pub mod complex;
pub mod context;
pub mod gamma;
pub mod numtheory;
pub mod surd;

pub use cmpoint::{CMPoint, Mat2};
pub use complex::Complex;
pub use context::PrecisionContext;
pub use rug::Rational;
pub use surd::QuadraticSurd;

/// `tau` as an extended-precision complex number.
pub fn cm_point_value(tau: &CMPoint, ctx: &PrecisionContext) -> Complex {
    tau.value(ctx.prec())
}

/// `e^{2 pi i tau}`.
pub fn nome(tau: &CMPoint, ctx: &PrecisionContext) -> Complex {
    tau.nome(ctx)
}

/// Standard fundamental-domain reduction.
pub fn reduce_sl2z(tau: &CMPoint) -> (CMPoint, Mat2) {
    tau.reduce_sl2z()
}
