use crate::error::{Error, Result};
use rug::Float;

/// Precision and tolerance settings shared by every numerical routine.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionContext {
    pub working_precision_bits: u32,
    /// Target absolute error for truncated sums.
    pub series_tolerance: f64,
    /// Default Fourier truncation order.
    pub qseries_order: usize,
    /// Pass threshold for identity residuals.
    pub identity_tolerance: f64,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            working_precision_bits: 256,
            series_tolerance: 1e-60,
            qseries_order: 200,
            identity_tolerance: 1e-30,
        }
    }
}

impl PrecisionContext {
    pub fn new(
        working_precision_bits: u32,
        series_tolerance: f64,
        qseries_order: usize,
        identity_tolerance: f64,
    ) -> Result<Self> {
        let ctx = PrecisionContext {
            working_precision_bits,
            series_tolerance,
            qseries_order,
            identity_tolerance,
        };
        ctx.validate()?;
        Ok(ctx)
    }

    /// Context at `bits` with the series tolerance scaled to match.
    pub fn with_bits(bits: u32) -> Result<Self> {
        let series = 2f64.powi(-(bits as i32) + 36).max(f64::MIN_POSITIVE);
        let d = PrecisionContext::default();
        let identity = d.identity_tolerance.max(series);
        PrecisionContext::new(bits, series, d.qseries_order, identity)
    }

    pub fn validate(&self) -> Result<()> {
        if self.working_precision_bits < 64 {
            return Err(Error::InvalidContext("working_precision_bits must be >= 64".into()));
        }
        if !(self.series_tolerance > 0.0) || !(self.identity_tolerance > 0.0) {
            return Err(Error::InvalidContext("tolerances must be positive".into()));
        }
        if self.identity_tolerance < self.series_tolerance {
            return Err(Error::InvalidContext(
                "identity_tolerance must be >= series_tolerance".into(),
            ));
        }
        if self.qseries_order == 0 {
            return Err(Error::InvalidContext("qseries_order must be positive".into()));
        }
        Ok(())
    }

    /// Precision used internally, with guard bits.
    pub fn prec(&self) -> u32 {
        self.working_precision_bits + 32
    }

    pub fn series_tol(&self) -> Float {
        Float::with_val(self.prec(), self.series_tolerance)
    }

    pub fn identity_tol(&self) -> Float {
        Float::with_val(self.prec(), self.identity_tolerance)
    }

    /// Same tolerances at doubled precision.
    pub fn doubled(&self) -> Self {
        let mut c = self.clone();
        c.working_precision_bits *= 2;
        c
    }
}
