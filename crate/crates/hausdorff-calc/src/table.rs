//! The closed-form tables of the Chen Hausdorff calculus as executable checks.
//!
//! Each derivative-table case pairs a function with its stated Hausdorff
//! derivative; each integral-table case pairs a stated antiderivative with its
//! integrand. Both kinds are verified the same way: the numerical Hausdorff
//! derivative of the first function must reproduce the second. Checking the
//! integral table through the antiderivative eliminates the arbitrary
//! constant, so no definite integrals are needed.
//!
//! The published antiderivative of the stretched exponential (case `eq37`) is
//! inconsistent with the derivative table: differentiating `beta exp(beta w)`
//! returns `beta^2 exp(beta w)`, not the integrand. The corrected form
//! `(1/beta) exp(beta w)` is what this table checks; the pointwise gap between
//! the published and corrected antiderivatives, `|beta - 1/beta| exp(beta w)`,
//! is exposed for the errata ledger.

use crate::chen::{chen_derivative, default_step, DerivMethod};
use crate::error::{CalcError, Result};
use crate::fractal::FractalDimension;
use crate::func1d::Function1d;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Derivative,
    Integral,
}

/// Parameters entering the tables: the exponential rate, the logarithm base,
/// and the power-law degree.
#[derive(Debug, Clone, Copy)]
pub struct TableParams {
    pub beta: f64,
    pub s: f64,
    pub n: u32,
}

impl Default for TableParams {
    fn default() -> Self {
        TableParams {
            beta: 2.0,
            s: 3.0,
            n: 3,
        }
    }
}

impl TableParams {
    pub fn validate(&self) -> Result<()> {
        if self.beta == 0.0 || !self.beta.is_finite() {
            return Err(CalcError::InvalidCaseParameters(format!(
                "beta must be finite and nonzero, got {}",
                self.beta
            )));
        }
        if !(self.s > 0.0) || self.s == 1.0 {
            return Err(CalcError::InvalidCaseParameters(format!(
                "s must be positive and different from 1, got {}",
                self.s
            )));
        }
        if self.n < 1 {
            return Err(CalcError::InvalidCaseParameters(
                "n must be a positive integer".into(),
            ));
        }
        Ok(())
    }
}

/// One table identity: differentiating `function` must reproduce `derivative`.
#[derive(Clone)]
pub struct TableCase {
    pub id: &'static str,
    pub kind: TableKind,
    /// True when the checked form differs from the published one.
    pub corrected: bool,
    pub function: Function1d,
    pub derivative: Function1d,
}

const DOMAIN: (f64, f64) = (0.0, 1e6);

fn case(
    id: &'static str,
    kind: TableKind,
    corrected: bool,
    f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    df: impl Fn(f64) -> f64 + Send + Sync + 'static,
) -> Result<TableCase> {
    Ok(TableCase {
        id,
        kind,
        corrected,
        function: Function1d::new(DOMAIN, f)?,
        derivative: Function1d::new(DOMAIN, df)?,
    })
}

/// Builds all 22 table cases for the given dimension and parameters.
///
/// The inner function of the composite cases is fixed to `w^2` (and to the
/// sign-definite `1 + w^2` where a logarithm or an absolute value needs it),
/// with `w = t^mu` the mapped coordinate.
pub fn table_cases(mu: FractalDimension, params: &TableParams) -> Result<Vec<TableCase>> {
    params.validate()?;
    let (beta, s, n) = (params.beta, params.s, params.n);
    let ln_s = s.ln();
    let w = move |t: f64| mu.map(t);
    let nf = n as f64;

    let cases = vec![
        // Derivative table.
        case("eq09", TableKind::Derivative, false, |_| 1.0, |_| 0.0)?,
        case("eq10", TableKind::Derivative, false, w, |_| 1.0)?,
        case(
            "eq11",
            TableKind::Derivative,
            false,
            move |t| w(t).powi(n as i32),
            move |t| nf * w(t).powi(n as i32 - 1),
        )?,
        case(
            "eq12",
            TableKind::Derivative,
            false,
            move |t| (beta * w(t)).exp(),
            move |t| beta * (beta * w(t)).exp(),
        )?,
        case(
            "eq13",
            TableKind::Derivative,
            false,
            move |t| w(t).ln(),
            move |t| 1.0 / w(t),
        )?,
        case(
            "eq14",
            TableKind::Derivative,
            false,
            move |t| s.powf(w(t)),
            move |t| ln_s * s.powf(w(t)),
        )?,
        case(
            "eq15",
            TableKind::Derivative,
            false,
            move |t| w(t).ln() / ln_s,
            move |t| 1.0 / (w(t) * ln_s),
        )?,
        case(
            "eq16",
            TableKind::Derivative,
            false,
            move |t| (w(t) * w(t)).exp(),
            move |t| 2.0 * w(t) * (w(t) * w(t)).exp(),
        )?,
        case(
            "eq17",
            TableKind::Derivative,
            false,
            move |t| (1.0 + w(t) * w(t)).ln() / ln_s,
            move |t| 2.0 * w(t) / ((1.0 + w(t) * w(t)) * ln_s),
        )?,
        case(
            "eq18",
            TableKind::Derivative,
            false,
            move |t| (1.0 + w(t) * w(t)).ln(),
            move |t| 2.0 * w(t) / (1.0 + w(t) * w(t)),
        )?,
        case(
            "eq19",
            TableKind::Derivative,
            false,
            move |t| s.powf(w(t) * w(t)),
            move |t| ln_s * s.powf(w(t) * w(t)) * 2.0 * w(t),
        )?,
        // Integral table, checked through the stated antiderivative.
        case("eq28", TableKind::Integral, false, w, |_| 1.0)?,
        case(
            "eq29",
            TableKind::Integral,
            false,
            move |t| w(t).powi(n as i32),
            move |t| nf * w(t).powi(n as i32 - 1),
        )?,
        case(
            "eq30",
            TableKind::Integral,
            false,
            move |t| (1.0 + w(t) * w(t)).ln() / ln_s,
            move |t| 2.0 * w(t) / ((1.0 + w(t) * w(t)) * ln_s),
        )?,
        case(
            "eq31",
            TableKind::Integral,
            false,
            move |t| w(t).ln(),
            move |t| 1.0 / w(t),
        )?,
        case(
            "eq32",
            TableKind::Integral,
            false,
            move |t| w(t).ln() / ln_s,
            move |t| 1.0 / (w(t) * ln_s),
        )?,
        case(
            "eq33",
            TableKind::Integral,
            false,
            move |t| s.powf(w(t)),
            move |t| ln_s * s.powf(w(t)),
        )?,
        case(
            "eq34",
            TableKind::Integral,
            false,
            move |t| (w(t) * w(t)).exp(),
            move |t| (w(t) * w(t)).exp() * 2.0 * w(t),
        )?,
        // Inner function -(1 + w^2), so the absolute value actually flips sign.
        case(
            "eq35",
            TableKind::Integral,
            false,
            move |t| 1.0 + w(t) * w(t),
            move |t| 2.0 * w(t),
        )?,
        case(
            "eq36",
            TableKind::Integral,
            false,
            move |t| (1.0 + w(t) * w(t)).ln(),
            move |t| 2.0 * w(t) / (1.0 + w(t) * w(t)),
        )?,
        case(
            "eq37",
            TableKind::Integral,
            true,
            move |t| (beta * w(t)).exp() / beta,
            move |t| (beta * w(t)).exp(),
        )?,
        case(
            "eq38",
            TableKind::Integral,
            false,
            move |t| s.powf(w(t) * w(t)),
            move |t| ln_s * s.powf(w(t) * w(t)) * 2.0 * w(t),
        )?,
    ];
    Ok(cases)
}

/// Maximum absolute residual of the numerical Hausdorff derivative of
/// `case.function` against `case.derivative` over the samples.
pub fn closed_form_residual(
    case: &TableCase,
    mu: FractalDimension,
    samples: &[f64],
) -> Result<f64> {
    if samples.is_empty() {
        return Err(CalcError::InvalidParameter("no sample points".into()));
    }
    let mut max_abs: f64 = 0.0;
    for &t in samples {
        if t <= 0.0 {
            return Err(CalcError::NegativeAbscissa(t));
        }
        let step = default_step(mu.map(t));
        let d = chen_derivative(&case.function, mu, t, DerivMethod::MappedStencil, step)?;
        max_abs = max_abs.max((d - case.derivative.eval(t)).abs());
    }
    Ok(max_abs)
}

/// Pointwise gap between the published and the corrected antiderivative of
/// the stretched exponential: `|beta - 1/beta| exp(beta t^mu)`, maximized
/// over the samples.
pub fn eq37_literal_gap(mu: FractalDimension, beta: f64, samples: &[f64]) -> Result<f64> {
    if beta == 0.0 {
        return Err(CalcError::InvalidCaseParameters("beta must be nonzero".into()));
    }
    let mut max_abs: f64 = 0.0;
    for &t in samples {
        if t < 0.0 {
            return Err(CalcError::NegativeAbscissa(t));
        }
        let e = (beta * mu.map(t)).exp();
        max_abs = max_abs.max((beta * e - e / beta).abs());
    }
    Ok(max_abs)
}

/// Deterministic sample abscissae for table checks: `count` points whose
/// mapped coordinates are seeded uniformly in `[0.3, 1.2]`, a window where
/// every table function is smooth and the stencil truncation stays below
/// the classical-reduction tolerance.
pub fn seeded_samples(mu: FractalDimension, seed: u64, count: usize) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| mu.unmap(rng.random_range(0.3..1.2)))
        .collect()
}
