//! Gauss-Legendre quadrature: single rules, composite panels, and the
//! evaluation-budget bookkeeping shared by the multi-dimensional integrals.

use crate::error::{CalcError, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the rule by Newton iteration on the Legendre recurrence.
    /// Converges to machine precision in a handful of iterations from the
    /// Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "quadrature rule needs at least one point");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Legendre P_n(x) and P_n'(x) via the three-term recurrence.
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let p = if n == 1 { x } else { p1 };
                let pm1 = if n == 1 { 1.0 } else { p0 };
                dp = nf * (x * p - pm1) / (x * x - 1.0);
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= 1e-15 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        // n = 1 special case: the loop above divides by x^2 - 1 at x = 0 only
        // through dp, which stays finite; midpoint rule values are exact.
        if n == 1 {
            nodes[0] = 0.0;
            weights[0] = 2.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integrates `f` over `[a, b]` with the single rule.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(mid + half * x);
        }
        sum * half
    }

    /// Node positions mapped into `[a, b]`, panel by panel, paired with the
    /// scaled weights. Summation order is fixed, so results are deterministic.
    pub fn panel_points(&self, a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.len() * panels);
        let width = (b - a) / panels as f64;
        for p in 0..panels {
            let pa = a + p as f64 * width;
            let pb = pa + width;
            let half = 0.5 * (pb - pa);
            let mid = 0.5 * (pa + pb);
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                out.push((mid + half * x, w * half));
            }
        }
        out
    }
}

/// Integrates `f` over `[a, b]` with `panels` equal panels of an n-point rule.
pub fn composite<F: FnMut(f64) -> f64>(
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    panels: usize,
    mut f: F,
) -> f64 {
    assert!(panels >= 1);
    let width = (b - a) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let pa = a + p as f64 * width;
        sum += rule.integrate(pa, pa + width, &mut f);
    }
    sum
}

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Tensor-product quadrature resolution: points per panel and panels per axis,
/// with a cap on the total evaluation count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub points: usize,
    pub panels: usize,
    #[serde(default = "default_budget")]
    pub budget: u64,
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            points: 16,
            panels: 2,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl QuadratureSpec {
    pub fn new(points: usize, panels: usize) -> Result<Self> {
        if !matches!(points, 4 | 8 | 16 | 32) {
            return Err(CalcError::InvalidParameter(format!(
                "points per panel must be one of 4, 8, 16, 32; got {points}"
            )));
        }
        if panels < 1 {
            return Err(CalcError::InvalidParameter(
                "panels per axis must be at least 1".into(),
            ));
        }
        Ok(QuadratureSpec {
            points,
            panels,
            budget: DEFAULT_BUDGET,
        })
    }

    /// Same rule with the panel count multiplied by `factor`.
    pub fn refined(self, factor: usize) -> Self {
        QuadratureSpec {
            panels: self.panels * factor,
            ..self
        }
    }

    pub fn rule(&self) -> GaussLegendre {
        GaussLegendre::new(self.points)
    }

    pub fn points_per_axis(&self) -> u64 {
        (self.points * self.panels) as u64
    }

    /// Rejects tensor-product integrals whose evaluation count exceeds the budget.
    pub fn check_budget(&self, dimension: u32) -> Result<()> {
        let per_axis = self.points_per_axis();
        let attempted = per_axis.saturating_pow(dimension);
        if attempted > self.budget {
            Err(CalcError::BudgetExceeded {
                attempted,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rule_is_exact_for_polynomials() {
        // n-point Gauss is exact up to degree 2n-1.
        for n in [1usize, 2, 4, 8, 16, 32] {
            let rule = GaussLegendre::new(n);
            let deg = 2 * n - 1;
            let val = rule.integrate(0.0, 1.0, |x| x.powi(deg as i32));
            assert_abs_diff_eq!(val, 1.0 / (deg as f64 + 1.0), epsilon = 1e-13);
        }
    }

    #[test]
    fn composite_transcendental() {
        let rule = GaussLegendre::new(16);
        let val = composite(&rule, 0.0, 1.0, 8, |x| x.exp());
        assert_abs_diff_eq!(val, 1f64.exp() - 1.0, epsilon = 1e-14);
    }

    #[test]
    fn composite_convergence_order() {
        // Halving panel width must reduce the error by at least 2^(2k-1)
        // for a k-point rule, down to the rounding floor.
        let k = 4;
        let rule = GaussLegendre::new(k);
        let exact = 2f64.sin() - 1f64.sin();
        let mut prev = f64::NAN;
        for panels in [1usize, 2, 4] {
            let err = (composite(&rule, 1.0, 2.0, panels, |x| x.cos()) - exact).abs();
            if !prev.is_nan() && prev > 1e-13 {
                assert!(
                    prev / err.max(1e-18) >= 2f64.powi(2 * k as i32 - 1),
                    "panels {panels}: ratio {} too small",
                    prev / err
                );
            }
            prev = err;
        }
    }

    #[test]
    fn budget_enforced() {
        let mut q = QuadratureSpec::new(32, 4).unwrap();
        q.budget = 1000;
        let err = q.check_budget(3).unwrap_err();
        assert!(err.to_string().contains("quadrature budget exceeded"));
        assert!(q.check_budget(1).is_ok());
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(5, 2).is_err());
        assert!(QuadratureSpec::new(8, 0).is_err());
        assert!(QuadratureSpec::new(8, 3).is_ok());
    }
}
