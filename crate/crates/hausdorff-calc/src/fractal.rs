use crate::error::{CalcError, Result};

/// Fractal dimension `mu` in `(0, 1]` together with the coordinate map `t -> t^mu`.
///
/// All operators in this crate reduce to classical calculus in the mapped
/// coordinate `w = t^mu`; this type owns the map, its inverse, and the
/// line-density weight `mu * t^(mu-1)` that relates the fractal measure to
/// the classical one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractalDimension(f64);

impl FractalDimension {
    /// Classical calculus, `mu = 1`.
    pub const CLASSICAL: FractalDimension = FractalDimension(1.0);

    pub fn new(mu: f64) -> Result<Self> {
        if mu.is_finite() && mu > 0.0 && mu <= 1.0 {
            Ok(FractalDimension(mu))
        } else {
            Err(CalcError::InvalidParameter(format!(
                "fractal dimension must lie in (0, 1], got {mu}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_classical(self) -> bool {
        self.0 == 1.0
    }

    /// Mapped coordinate `w = t^mu` for `t >= 0`.
    pub fn map(self, t: f64) -> f64 {
        if self.0 == 1.0 {
            t
        } else {
            t.powf(self.0)
        }
    }

    /// Inverse map `t = w^(1/mu)` for `w >= 0`.
    pub fn unmap(self, w: f64) -> f64 {
        if self.0 == 1.0 {
            w
        } else {
            w.powf(1.0 / self.0)
        }
    }

    /// Line density `mu * t^(mu-1)` of the fractal measure relative to the
    /// classical one (equivalently `dw/dt`). Diverges at `t = 0` for `mu < 1`.
    pub fn weight(self, t: f64) -> f64 {
        if self.0 == 1.0 {
            1.0
        } else {
            self.0 * t.powf(self.0 - 1.0)
        }
    }
}
