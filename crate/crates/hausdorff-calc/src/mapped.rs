//! Closed-under-differentiation expression families in the mapped coordinates.
//!
//! A `MappedExpr` is a sum of separable terms `c * f(u) * g(v) * h(w)` where
//! each factor is an elementary function of one mapped coordinate. Because the
//! factor set is closed under differentiation, fields built from these
//! expressions carry exact partial derivatives of every order, which is what
//! makes the theorem suites quadrature-limited instead of stencil-limited.

use serde::{Deserialize, Serialize};

/// Elementary factor in one variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Unary {
    One,
    /// `u^k`
    Pow(u32),
    /// `sin(a u)`
    Sin(f64),
    /// `cos(a u)`
    Cos(f64),
    /// `exp(a u)`
    Exp(f64),
}

impl Unary {
    pub fn eval(self, u: f64) -> f64 {
        match self {
            Unary::One => 1.0,
            Unary::Pow(k) => u.powi(k as i32),
            Unary::Sin(a) => (a * u).sin(),
            Unary::Cos(a) => (a * u).cos(),
            Unary::Exp(a) => (a * u).exp(),
        }
    }

    /// Derivative as a scaled factor: d/du f = coeff * g.
    pub fn diff(self) -> (f64, Unary) {
        match self {
            Unary::One => (0.0, Unary::One),
            Unary::Pow(0) => (0.0, Unary::One),
            Unary::Pow(1) => (1.0, Unary::One),
            Unary::Pow(k) => (k as f64, Unary::Pow(k - 1)),
            Unary::Sin(a) => (a, Unary::Cos(a)),
            Unary::Cos(a) => (-a, Unary::Sin(a)),
            Unary::Exp(a) => (a, Unary::Exp(a)),
        }
    }
}

/// `coeff * factors[0](u) * factors[1](v) * factors[2](w)`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SepTerm {
    pub coeff: f64,
    pub factors: [Unary; 3],
}

impl SepTerm {
    pub fn eval(&self, uvw: [f64; 3]) -> f64 {
        self.coeff
            * self.factors[0].eval(uvw[0])
            * self.factors[1].eval(uvw[1])
            * self.factors[2].eval(uvw[2])
    }
}

/// Sum of separable terms in the mapped coordinates `(u, v, w) = (x^mu, y^mu, z^mu)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MappedExpr {
    pub terms: Vec<SepTerm>,
}

impl MappedExpr {
    pub fn zero() -> Self {
        MappedExpr { terms: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        if c == 0.0 {
            return Self::zero();
        }
        MappedExpr {
            terms: vec![SepTerm {
                coeff: c,
                factors: [Unary::One; 3],
            }],
        }
    }

    /// `c * u^i v^j w^k`
    pub fn monomial(c: f64, powers: [u32; 3]) -> Self {
        let factor = |p: u32| if p == 0 { Unary::One } else { Unary::Pow(p) };
        MappedExpr {
            terms: vec![SepTerm {
                coeff: c,
                factors: [factor(powers[0]), factor(powers[1]), factor(powers[2])],
            }],
        }
    }

    /// Single separable term.
    pub fn term(c: f64, factors: [Unary; 3]) -> Self {
        MappedExpr {
            terms: vec![SepTerm { coeff: c, factors }],
        }
    }

    /// The coordinate function `u`, `v`, or `w` itself.
    pub fn coordinate(axis: usize) -> Self {
        let mut powers = [0u32; 3];
        powers[axis] = 1;
        Self::monomial(1.0, powers)
    }

    pub fn eval(&self, uvw: [f64; 3]) -> f64 {
        self.terms.iter().map(|t| t.eval(uvw)).sum()
    }

    /// Exact partial derivative with respect to the mapped coordinate `axis`.
    pub fn diff(&self, axis: usize) -> MappedExpr {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let (c, g) = t.factors[axis].diff();
            let coeff = t.coeff * c;
            if coeff == 0.0 {
                continue;
            }
            let mut factors = t.factors;
            factors[axis] = g;
            terms.push(SepTerm { coeff, factors });
        }
        MappedExpr { terms }
    }

    pub fn add(&self, other: &MappedExpr) -> MappedExpr {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        MappedExpr { terms }
    }

    pub fn sub(&self, other: &MappedExpr) -> MappedExpr {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> MappedExpr {
        if c == 0.0 {
            return Self::zero();
        }
        MappedExpr {
            terms: self
                .terms
                .iter()
                .map(|t| SepTerm {
                    coeff: c * t.coeff,
                    ..*t
                })
                .collect(),
        }
    }
}

/// Curl of a vector expression, taken in the mapped coordinates. Exact.
pub fn mapped_curl(a: &[MappedExpr; 3]) -> [MappedExpr; 3] {
    [
        a[2].diff(1).sub(&a[1].diff(2)),
        a[0].diff(2).sub(&a[2].diff(0)),
        a[1].diff(0).sub(&a[0].diff(1)),
    ]
}

/// Univariate sum of elementary factors in the mapped coordinate `w = t^mu`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MappedSeries {
    pub terms: Vec<(f64, Unary)>,
}

impl MappedSeries {
    pub fn new(terms: Vec<(f64, Unary)>) -> Self {
        MappedSeries { terms }
    }

    pub fn constant(c: f64) -> Self {
        MappedSeries {
            terms: vec![(c, Unary::One)],
        }
    }

    pub fn eval(&self, w: f64) -> f64 {
        self.terms.iter().map(|(c, f)| c * f.eval(w)).sum()
    }

    /// Exact derivative with respect to the mapped coordinate.
    pub fn diff(&self) -> MappedSeries {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, f) in &self.terms {
            let (s, g) = f.diff();
            let coeff = c * s;
            if coeff != 0.0 {
                terms.push((coeff, g));
            }
        }
        MappedSeries { terms }
    }
}
