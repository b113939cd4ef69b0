//! One-dimensional Chen Hausdorff derivative and integral, their algebraic
//! rules, and the fundamental theorems.
//!
//! Everything runs in the mapped coordinate `w = t^mu`, where the Hausdorff
//! operators are classical ones: the derivative is `d/dw` of `g(w) = f(w^(1/mu))`
//! and the integral is the plain integral of `g` over the mapped interval.
//! The direct prefactor formula `(t^(1-mu)/mu) f'(t)` is kept solely for
//! cross-validation; it is singular at the origin for `mu < 1`.

use crate::error::{CalcError, Result};
use crate::fractal::FractalDimension;
use crate::func1d::Function1d;
use crate::quad::{composite, GaussLegendre};

/// How to evaluate the Hausdorff derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivMethod {
    /// Central difference of `f(w^(1/mu))` in the mapped coordinate.
    MappedStencil,
    /// Prefactor formula with a central difference for the classical `f'`.
    DirectFormula,
}

/// Default stencil step at mapped position `w`.
pub fn default_step(w: f64) -> f64 {
    1e-5 * w.abs().max(1.0)
}

/// Default quadrature: composite 16-point Gauss-Legendre, 8 panels.
pub const DEFAULT_PANELS: usize = 8;
const DEFAULT_POINTS: usize = 16;

/// Central difference in the mapped coordinate at `w0`; no validation.
pub(crate) fn mapped_stencil_raw(f: &Function1d, mu: FractalDimension, w0: f64, step: f64) -> f64 {
    let tp = mu.unmap(w0 + step);
    let tm = mu.unmap(w0 - step);
    (f.eval(tp) - f.eval(tm)) / (2.0 * step)
}

/// Hausdorff derivative of `f` at `t`.
pub fn chen_derivative(
    f: &Function1d,
    mu: FractalDimension,
    t: f64,
    method: DerivMethod,
    step: f64,
) -> Result<f64> {
    if !(step > 0.0) {
        return Err(CalcError::InvalidParameter(format!(
            "step must be positive, got {step}"
        )));
    }
    if t < 0.0 {
        return Err(CalcError::NegativeAbscissa(t));
    }
    match method {
        DerivMethod::MappedStencil => {
            let w0 = mu.map(t);
            let wm = w0 - step;
            if wm < 0.0 {
                return Err(CalcError::OutsideDomain(format!(
                    "mapped stencil at w = {w0} with step {step} leaves the nonnegative axis"
                )));
            }
            let (tp, tm) = (mu.unmap(w0 + step), mu.unmap(wm));
            if !f.contains(tp) || !f.contains(tm) {
                return Err(CalcError::OutsideDomain(format!(
                    "stencil points {tm}, {tp} outside [{}, {}]",
                    f.domain().0,
                    f.domain().1
                )));
            }
            Ok(mapped_stencil_raw(f, mu, w0, step))
        }
        DerivMethod::DirectFormula => {
            if t == 0.0 && !mu.is_classical() {
                return Err(CalcError::SingularOrigin);
            }
            let (tp, tm) = (t + step, t - step);
            if tm < 0.0 || !f.contains(tp) || !f.contains(tm) {
                return Err(CalcError::OutsideDomain(format!(
                    "stencil points {tm}, {tp} outside [{}, {}]",
                    f.domain().0,
                    f.domain().1
                )));
            }
            let fprime = (f.eval(tp) - f.eval(tm)) / (2.0 * step);
            Ok(t.powf(1.0 - mu.get()) / mu.get() * fprime)
        }
    }
}

/// Hausdorff integral `mu * int_a^b f(t) t^(mu-1) dt`, computed as the plain
/// integral of `f(w^(1/mu))` over the mapped interval `[a^mu, b^mu]`. The
/// change of variables is exact, so the integrand is smooth even at `a = 0`.
pub fn chen_integral(
    f: &Function1d,
    mu: FractalDimension,
    a: f64,
    b: f64,
    panels: usize,
) -> Result<f64> {
    chen_integral_with(f, mu, a, b, panels, DEFAULT_POINTS)
}

/// Same as [`chen_integral`] with an explicit Gauss order per panel.
pub fn chen_integral_with(
    f: &Function1d,
    mu: FractalDimension,
    a: f64,
    b: f64,
    panels: usize,
    points: usize,
) -> Result<f64> {
    if a < 0.0 {
        return Err(CalcError::NegativeAbscissa(a));
    }
    if a >= b {
        return Err(CalcError::EmptyInterval(a, b));
    }
    if panels < 1 {
        return Err(CalcError::InvalidParameter(
            "panels must be at least 1".into(),
        ));
    }
    if !f.contains(a) || !f.contains(b) {
        return Err(CalcError::OutsideDomain(format!(
            "integration interval [{a}, {b}] outside [{}, {}]",
            f.domain().0,
            f.domain().1
        )));
    }
    let rule = GaussLegendre::new(points);
    Ok(composite(&rule, mu.map(a), mu.map(b), panels, |w| {
        f.eval(mu.unmap(w))
    }))
}

/// Evaluation mode for the stretched exponential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KwwMode {
    ClosedForm,
    /// Power series with at most the given number of terms; summation stops
    /// early once a term falls below 1e-16 of the partial sum.
    Series(usize),
}

/// Kohlrausch-Williams-Watts stretched exponential `exp(beta t^mu)`.
pub fn kww(beta: f64, mu: FractalDimension, t: f64, mode: KwwMode) -> Result<f64> {
    if t < 0.0 {
        return Err(CalcError::NegativeAbscissa(t));
    }
    let arg = beta * mu.map(t);
    if arg.abs() > 700.0 {
        return Err(CalcError::MagnitudeOverflow(arg));
    }
    match mode {
        KwwMode::ClosedForm => Ok(arg.exp()),
        KwwMode::Series(nterms) => {
            if nterms < 1 {
                return Err(CalcError::InvalidParameter(
                    "series needs at least one term".into(),
                ));
            }
            let mut sum = 1.0;
            let mut term = 1.0;
            for n in 1..=nterms {
                term *= arg / n as f64;
                sum += term;
                if term.abs() < 1e-16 * sum.abs() {
                    break;
                }
            }
            Ok(sum)
        }
    }
}

/// Algebraic rule of the Hausdorff calculus to verify numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleId {
    Sum,
    ConstMul,
    Product,
    Quotient,
    Chain,
    Parts,
    /// Linearity of the integral over the span of the samples.
    IntegralSum,
}

/// Residual of a rule check together with the magnitude of the sides,
/// for scale-aware reporting.
#[derive(Debug, Clone, Copy)]
pub struct ResidualCheck {
    pub max_abs: f64,
    pub scale: f64,
}

const CONST_MULTIPLIER: f64 = 2.5;

/// Evaluates both sides of the named identity at each sample and returns the
/// maximum absolute residual.
pub fn check_rule(
    rule: RuleId,
    f1: &Function1d,
    f2: &Function1d,
    mu: FractalDimension,
    samples: &[f64],
) -> Result<f64> {
    check_rule_detailed(rule, f1, f2, mu, samples).map(|r| r.max_abs)
}

pub fn check_rule_detailed(
    rule: RuleId,
    f1: &Function1d,
    f2: &Function1d,
    mu: FractalDimension,
    samples: &[f64],
) -> Result<ResidualCheck> {
    if samples.is_empty() {
        return Err(CalcError::InvalidParameter("no sample points".into()));
    }
    let mut max_abs: f64 = 0.0;
    let mut scale: f64 = 0.0;
    let deriv = |f: &Function1d, t: f64| -> Result<f64> {
        let w = mu.map(t);
        chen_derivative(f, mu, t, DerivMethod::MappedStencil, default_step(w))
    };
    match rule {
        RuleId::Sum => {
            for &t in samples {
                let sum_fn = {
                    let (g1, g2) = (f1.clone(), f2.clone());
                    Function1d::new(intersect(f1, f2)?, move |t| g1.eval(t) + g2.eval(t))?
                };
                let lhs = deriv(&sum_fn, t)?;
                let rhs = deriv(f1, t)? + deriv(f2, t)?;
                record(&mut max_abs, &mut scale, lhs, rhs);
            }
        }
        RuleId::ConstMul => {
            for &t in samples {
                let scaled = {
                    let g = f1.clone();
                    Function1d::new(f1.domain(), move |t| CONST_MULTIPLIER * g.eval(t))?
                };
                let lhs = deriv(&scaled, t)?;
                let rhs = CONST_MULTIPLIER * deriv(f1, t)?;
                record(&mut max_abs, &mut scale, lhs, rhs);
            }
        }
        RuleId::Product => {
            for &t in samples {
                let prod = {
                    let (g1, g2) = (f1.clone(), f2.clone());
                    Function1d::new(intersect(f1, f2)?, move |t| g1.eval(t) * g2.eval(t))?
                };
                let lhs = deriv(&prod, t)?;
                let rhs = f2.eval(t) * deriv(f1, t)? + f1.eval(t) * deriv(f2, t)?;
                record(&mut max_abs, &mut scale, lhs, rhs);
            }
        }
        RuleId::Quotient => {
            for &t in samples {
                let denom = f2.eval(t);
                if denom.abs() < 1e-12 {
                    return Err(CalcError::DivisionByNearZero(t));
                }
                let quot = {
                    let (g1, g2) = (f1.clone(), f2.clone());
                    Function1d::new(intersect(f1, f2)?, move |t| g1.eval(t) / g2.eval(t))?
                };
                let lhs = deriv(&quot, t)?;
                let rhs = (denom * deriv(f1, t)? - f1.eval(t) * deriv(f2, t)?) / (denom * denom);
                record(&mut max_abs, &mut scale, lhs, rhs);
            }
        }
        RuleId::Chain => {
            // f1 is the outer map (of a plain real argument), f2 the inner
            // Hausdorff-differentiable function.
            for &t in samples {
                let comp = {
                    let (outer, inner) = (f1.clone(), f2.clone());
                    Function1d::new(f2.domain(), move |t| outer.eval(inner.eval(t)))?
                };
                let lhs = deriv(&comp, t)?;
                let x = f2.eval(t);
                if !f1.contains(x) {
                    return Err(CalcError::OutsideDomain(format!(
                        "inner value {x} outside the outer domain"
                    )));
                }
                let outer_slope = match f1.exact_derivative(x) {
                    Some(d) => d,
                    None => {
                        let h = 1e-6 * x.abs().max(1.0);
                        (f1.eval(x + h) - f1.eval(x - h)) / (2.0 * h)
                    }
                };
                let rhs = outer_slope * deriv(f2, t)?;
                record(&mut max_abs, &mut scale, lhs, rhs);
            }
        }
        RuleId::Parts => {
            let (a, b) = span(samples)?;
            let int1 = {
                let (g1, g2) = (f1.clone(), f2.clone());
                let dom = intersect(f1, f2)?;
                Function1d::new(dom, move |t| {
                    let w = mu.map(t);
                    g2.eval(t) * mapped_stencil_raw(&g1, mu, w, default_step(w))
                })?
            };
            let int2 = {
                let (g1, g2) = (f1.clone(), f2.clone());
                let dom = intersect(f1, f2)?;
                Function1d::new(dom, move |t| {
                    let w = mu.map(t);
                    g1.eval(t) * mapped_stencil_raw(&g2, mu, w, default_step(w))
                })?
            };
            let lhs = chen_integral(&int1, mu, a, b, DEFAULT_PANELS)?;
            let boundary = f1.eval(b) * f2.eval(b) - f1.eval(a) * f2.eval(a);
            let rhs = boundary - chen_integral(&int2, mu, a, b, DEFAULT_PANELS)?;
            record(&mut max_abs, &mut scale, lhs, rhs);
        }
        RuleId::IntegralSum => {
            let (a, b) = span(samples)?;
            let sum_fn = {
                let (g1, g2) = (f1.clone(), f2.clone());
                Function1d::new(intersect(f1, f2)?, move |t| g1.eval(t) + g2.eval(t))?
            };
            let lhs = chen_integral(&sum_fn, mu, a, b, DEFAULT_PANELS)?;
            let rhs = chen_integral(f1, mu, a, b, DEFAULT_PANELS)?
                + chen_integral(f2, mu, a, b, DEFAULT_PANELS)?;
            record(&mut max_abs, &mut scale, lhs, rhs);
        }
    }
    Ok(ResidualCheck { max_abs, scale })
}

fn record(max_abs: &mut f64, scale: &mut f64, lhs: f64, rhs: f64) {
    *max_abs = max_abs.max((lhs - rhs).abs());
    *scale = scale.max(lhs.abs()).max(rhs.abs());
}

fn intersect(f1: &Function1d, f2: &Function1d) -> Result<(f64, f64)> {
    let lo = f1.domain().0.max(f2.domain().0);
    let hi = f1.domain().1.min(f2.domain().1);
    if lo >= hi {
        return Err(CalcError::EmptyInterval(lo, hi));
    }
    Ok((lo, hi))
}

fn span(samples: &[f64]) -> Result<(f64, f64)> {
    let a = samples.iter().cloned().fold(f64::INFINITY, f64::min);
    let b = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(a < b) {
        return Err(CalcError::EmptyInterval(a, b));
    }
    Ok((a, b))
}

/// Residuals of the first and second fundamental theorems on `[a, t]`:
/// `|f(t) - f(a) - I(D f)|` and `|f(t) - D(I f)(t)|`.
pub fn fundamental_theorem_residuals(
    f: &Function1d,
    mu: FractalDimension,
    a: f64,
    t: f64,
) -> Result<(f64, f64)> {
    if a < 0.0 {
        return Err(CalcError::NegativeAbscissa(a));
    }
    if a >= t {
        return Err(CalcError::EmptyInterval(a, t));
    }
    // First theorem: net change equals the integral of the derivative.
    let df = {
        let g = f.clone();
        Function1d::new(f.domain(), move |t| {
            let w = mu.map(t);
            mapped_stencil_raw(&g, mu, w, default_step(w))
        })?
    };
    let first = (f.eval(t) - f.eval(a) - chen_integral(&df, mu, a, t, DEFAULT_PANELS)?).abs();

    // Second theorem: derivative of the running integral returns the integrand.
    let w0 = mu.map(t);
    let h = default_step(w0);
    let integral_to = |w: f64| -> Result<f64> {
        chen_integral(f, mu, a, mu.unmap(w), DEFAULT_PANELS)
    };
    let d_integral = (integral_to(w0 + h)? - integral_to(w0 - h)?) / (2.0 * h);
    let second = (f.eval(t) - d_integral).abs();
    Ok((first, second))
}

/// Net-change residual: the `t = b` instance of the first fundamental theorem.
pub fn net_change_residual(f: &Function1d, mu: FractalDimension, a: f64, b: f64) -> Result<f64> {
    fundamental_theorem_residuals(f, mu, a, b).map(|(first, _)| first)
}

/// Mean-value abscissa `l` in `(a, t]` with
/// `I(f, a, t) = f(l) (t^mu - a^mu)`, found by bisection. Requires `f`
/// monotone on `[a, t]` (declared by the caller, not detected).
pub fn mean_value_point(f: &Function1d, mu: FractalDimension, a: f64, t: f64) -> Result<f64> {
    if a < 0.0 {
        return Err(CalcError::NegativeAbscissa(a));
    }
    if a >= t {
        return Err(CalcError::EmptyInterval(a, t));
    }
    let integral = chen_integral(f, mu, a, t, DEFAULT_PANELS)?;
    let measure = mu.map(t) - mu.map(a);
    let target = integral / measure;
    let residual_at = |l: f64| f.eval(l) - target;
    let scale = 1f64.max(f.eval(a).abs()).max(f.eval(t).abs());
    let (mut lo, mut hi) = (a, t);
    let (r_lo, r_hi) = (residual_at(lo), residual_at(hi));
    if r_hi.abs() <= 1e-12 * scale {
        return Ok(t);
    }
    if r_lo * r_hi > 0.0 {
        return Err(CalcError::NotBracketed);
    }
    let mut r_lo = r_lo;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let r_mid = residual_at(mid);
        if r_mid == 0.0 {
            return Ok(mid);
        }
        if r_lo * r_mid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            r_lo = r_mid;
        }
        if hi - lo <= f64::EPSILON * t.abs().max(1.0) {
            break;
        }
    }
    let l = (0.5 * (lo + hi)).max(a + f64::EPSILON * t.abs().max(1.0));
    if (integral - f.eval(l) * measure).abs() <= 1e-10 * integral.abs().max(1.0) {
        Ok(l)
    } else {
        Err(CalcError::NotBracketed)
    }
}
