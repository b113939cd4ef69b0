//! Evaluable one-dimensional functions on a nonnegative interval, with an
//! optional exact classical derivative used as an oracle by the tests.

use crate::error::{CalcError, Result};
use crate::fractal::FractalDimension;
use crate::mapped::MappedSeries;
use std::sync::Arc;

type Fn1 = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct Function1d {
    eval: Fn1,
    derivative: Option<Fn1>,
    domain: (f64, f64),
}

impl Function1d {
    pub fn new<F>(domain: (f64, f64), f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        check_domain(domain)?;
        Ok(Function1d {
            eval: Arc::new(f),
            derivative: None,
            domain,
        })
    }

    pub fn with_derivative<F, D>(domain: (f64, f64), f: F, df: D) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        check_domain(domain)?;
        Ok(Function1d {
            eval: Arc::new(f),
            derivative: Some(Arc::new(df)),
            domain,
        })
    }

    /// Function given as `F(t^mu)` for a symbolic series `F`; the exact
    /// classical derivative comes from the chain rule `F'(t^mu) mu t^(mu-1)`.
    pub fn from_mapped(
        series: MappedSeries,
        mu: FractalDimension,
        domain: (f64, f64),
    ) -> Result<Self> {
        check_domain(domain)?;
        let d = series.diff();
        let s_eval = series.clone();
        Ok(Function1d {
            eval: Arc::new(move |t| s_eval.eval(mu.map(t))),
            derivative: Some(Arc::new(move |t| d.eval(mu.map(t)) * mu.weight(t))),
            domain,
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.eval)(t)
    }

    /// Exact classical derivative, when one was supplied.
    pub fn exact_derivative(&self, t: f64) -> Option<f64> {
        self.derivative.as_ref().map(|d| d(t))
    }

    pub fn has_exact_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.domain.0 && t <= self.domain.1
    }
}

fn check_domain(domain: (f64, f64)) -> Result<()> {
    let (a, b) = domain;
    if !(a.is_finite() && b.is_finite()) || a < 0.0 {
        return Err(CalcError::NegativeAbscissa(a));
    }
    if a >= b {
        return Err(CalcError::EmptyInterval(a, b));
    }
    Ok(())
}
