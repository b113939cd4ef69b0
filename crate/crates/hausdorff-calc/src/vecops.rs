//! Fractal differential operators: gradient, divergence, curl, Laplacian, and
//! directional derivative, each under two component conventions.
//!
//! The two conventions read the operator components differently:
//!
//! * [`Convention::Physical`] carries the `mu x^(mu-1)` weight on each
//!   component, so every component equals the classical partial in physical
//!   coordinates (and the operators collapse to the classical ones).
//! * [`Convention::Mapped`] uses the bare partials with respect to the mapped
//!   coordinates `x^mu`; these are the operators selected by the
//!   flux-quotient limit definitions, and the only ones under which the
//!   integral theorems hold against the fractal measures for `mu < 1`.
//!
//! Both are exposed because the source formulation uses them interchangeably;
//! the verification suite asserts the mapped convention and reports the
//! physical one.

use crate::error::{CalcError, Result};
use crate::fields::{chen_partial, ScalarField, VectorField};
use crate::fractal::FractalDimension;
use crate::vec3::{dot, Point3};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Physical,
    Mapped,
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Convention::Physical => write!(f, "physical"),
            Convention::Mapped => write!(f, "mapped"),
        }
    }
}

/// Which reading of the second-order operator to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LaplacianForm {
    /// Divergence of the gradient under the active convention.
    Composed,
    /// The pure second-order form `sum_i mu^2 x_i^(2mu-2) d^2/d(x_i^mu)^2`,
    /// which differs from the composed physical operator by first-order terms.
    SecondOrder,
}

pub(crate) fn first_step(w: f64) -> f64 {
    1e-5 * w.abs().max(1.0)
}

pub(crate) fn second_step(w: f64) -> f64 {
    1e-4 * w.abs().max(1.0)
}

fn check_coordinate(x: f64, mu: FractalDimension) -> Result<()> {
    if x < 0.0 {
        return Err(CalcError::NegativeAbscissa(x));
    }
    if x == 0.0 && !mu.is_classical() {
        return Err(CalcError::SingularOrigin);
    }
    Ok(())
}

/// Partial with respect to the mapped coordinate of `axis` (exact fast path,
/// finite-difference fallback).
pub(crate) fn mapped_partial(
    f: &ScalarField,
    axis: usize,
    p: Point3,
    mu: FractalDimension,
) -> Result<f64> {
    check_coordinate(p[axis], mu)?;
    if let Some(d) = f.mapped_partial_exact(axis, p, mu) {
        return Ok(d);
    }
    chen_partial(f, axis, p, mu, first_step(mu.map(p[axis])))
}

/// Convention component operator applied to `f` along `axis`.
pub(crate) fn component_derivative(
    f: &ScalarField,
    axis: usize,
    p: Point3,
    mu: FractalDimension,
    convention: Convention,
) -> Result<f64> {
    let d = mapped_partial(f, axis, p, mu)?;
    Ok(match convention {
        Convention::Mapped => d,
        Convention::Physical => mu.weight(p[axis]) * d,
    })
}

/// Second partial with respect to the mapped coordinate of `axis`.
pub(crate) fn mapped_second(
    f: &ScalarField,
    axis: usize,
    p: Point3,
    mu: FractalDimension,
) -> Result<f64> {
    check_coordinate(p[axis], mu)?;
    if let Some(d) = f.mapped_second_exact(axis, axis, p, mu) {
        return Ok(d);
    }
    let w0 = mu.map(p[axis]);
    let h = if mu.is_classical() {
        second_step(w0)
    } else {
        second_step(w0).min(0.5 * w0)
    };
    // Differentiate the exact first partial when one exists; otherwise use a
    // second central difference of the values.
    if f.mapped_partial_exact(axis, p, mu).is_some() {
        let at = |w: f64| {
            let mut q = p;
            q[axis] = mu.unmap(w);
            f.mapped_partial_exact(axis, q, mu)
                .expect("exact partial available at neighboring points")
        };
        return Ok((at(w0 + h) - at(w0 - h)) / (2.0 * h));
    }
    let at = |w: f64| {
        let mut q = p;
        q[axis] = mu.unmap(w);
        f.eval(q)
    };
    Ok((at(w0 + h) - 2.0 * f.eval(p) + at(w0 - h)) / (h * h))
}

/// Chen gradient under the convention.
pub fn gradient(
    f: &ScalarField,
    p: Point3,
    mu: FractalDimension,
    convention: Convention,
) -> Result<[f64; 3]> {
    let mut g = [0.0; 3];
    for axis in 0..3 {
        g[axis] = component_derivative(f, axis, p, mu, convention)?;
    }
    Ok(g)
}

/// Hausdorff divergence under the convention.
pub fn divergence(
    w: &VectorField,
    p: Point3,
    mu: FractalDimension,
    convention: Convention,
) -> Result<f64> {
    let mut sum = 0.0;
    for axis in 0..3 {
        sum += component_derivative(&w.components[axis], axis, p, mu, convention)?;
    }
    Ok(sum)
}

/// Hausdorff curl under the convention (determinant expansion with the
/// convention's component operators).
pub fn curl(
    w: &VectorField,
    p: Point3,
    mu: FractalDimension,
    convention: Convention,
) -> Result<[f64; 3]> {
    let d = |component: usize, axis: usize| {
        component_derivative(&w.components[component], axis, p, mu, convention)
    };
    Ok([
        d(2, 1)? - d(1, 2)?,
        d(0, 2)? - d(2, 0)?,
        d(1, 0)? - d(0, 1)?,
    ])
}

/// Laplace-Chen operator.
pub fn laplace_chen(
    f: &ScalarField,
    p: Point3,
    mu: FractalDimension,
    form: LaplacianForm,
    convention: Convention,
) -> Result<f64> {
    match (form, convention) {
        (LaplacianForm::SecondOrder, _) => {
            let mut sum = 0.0;
            for axis in 0..3 {
                let wgt = mu.weight(p[axis]);
                sum += wgt * wgt * mapped_second(f, axis, p, mu)?;
            }
            Ok(sum)
        }
        (LaplacianForm::Composed, Convention::Mapped) => {
            let mut sum = 0.0;
            for axis in 0..3 {
                sum += mapped_second(f, axis, p, mu)?;
            }
            Ok(sum)
        }
        (LaplacianForm::Composed, Convention::Physical) => {
            // Classical Laplacian. With exact mapped derivatives:
            // d^2f/dx^2 = mu(mu-1) x^(mu-2) f_u + (mu x^(mu-1))^2 f_uu.
            let mut sum = 0.0;
            for axis in 0..3 {
                check_coordinate(p[axis], mu)?;
                let exact = match (
                    f.mapped_partial_exact(axis, p, mu),
                    f.mapped_second_exact(axis, axis, p, mu),
                ) {
                    (Some(fu), Some(fuu)) => {
                        let x = p[axis];
                        let m = mu.get();
                        let wgt = mu.weight(x);
                        let dwgt = if mu.is_classical() {
                            0.0
                        } else {
                            m * (m - 1.0) * x.powf(m - 2.0)
                        };
                        Some(dwgt * fu + wgt * wgt * fuu)
                    }
                    _ => None,
                };
                sum += match exact {
                    Some(v) => v,
                    None => {
                        // Second central difference in the physical coordinate.
                        let x = p[axis];
                        let h = if mu.is_classical() {
                            second_step(x)
                        } else {
                            second_step(x).min(0.5 * x)
                        };
                        let at = |xv: f64| {
                            let mut q = p;
                            q[axis] = xv;
                            f.eval(q)
                        };
                        (at(x + h) - 2.0 * f.eval(p) + at(x - h)) / (h * h)
                    }
                };
            }
            Ok(sum)
        }
    }
}

/// Hausdorff directional derivative along the unit vector `n`.
pub fn directional_derivative(
    f: &ScalarField,
    p: Point3,
    n: [f64; 3],
    mu: FractalDimension,
    convention: Convention,
) -> Result<f64> {
    let norm = dot(n, n).sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(CalcError::NotNormalized(norm));
    }
    Ok(dot(gradient(f, p, mu, convention)?, n))
}

/// Maximum residual of the gradient product rule and of the
/// divergence-of-scaled-gradient identity over the samples, both evaluated
/// under the given convention (the composed Laplacian is used).
pub fn product_identities_check(
    psi: &ScalarField,
    theta: &ScalarField,
    mu: FractalDimension,
    convention: Convention,
    samples: &[Point3],
) -> Result<f64> {
    if samples.is_empty() {
        return Err(CalcError::InvalidParameter("no sample points".into()));
    }
    let product = product_field(psi, theta);
    let mut max_res: f64 = 0.0;
    for &p in samples {
        // grad(psi theta) = psi grad(theta) + theta grad(psi)
        let lhs = gradient(&product, p, mu, convention)?;
        let gpsi = gradient(psi, p, mu, convention)?;
        let gtheta = gradient(theta, p, mu, convention)?;
        let (pv, tv) = (psi.eval(p), theta.eval(p));
        for i in 0..3 {
            max_res = max_res.max((lhs[i] - (pv * gtheta[i] + tv * gpsi[i])).abs());
        }

        // div(theta grad(psi)) = theta lap(psi) + grad(psi) . grad(theta)
        let x = scaled_gradient_field(psi, theta, mu, convention);
        let lhs = divergence(&x, p, mu, convention)?;
        let lap = laplace_chen(psi, p, mu, LaplacianForm::Composed, convention)?;
        let rhs = tv * lap + dot(gpsi, gtheta);
        max_res = max_res.max((lhs - rhs).abs());
    }
    Ok(max_res)
}

/// Pointwise product as a field, with an exact classical gradient when both
/// factors expose one.
pub fn product_field(a: &ScalarField, b: &ScalarField) -> ScalarField {
    let (a1, b1) = (a.clone(), b.clone());
    if a.has_exact_grad() && b.has_exact_grad() {
        let (a2, b2) = (a.clone(), b.clone());
        ScalarField::from_fn_with_grad(
            move |p| a1.eval(p) * b1.eval(p),
            move |p| {
                let ga = a2.exact_classical_grad(p).expect("factor carries a gradient");
                let gb = b2.exact_classical_grad(p).expect("factor carries a gradient");
                let (av, bv) = (a2.eval(p), b2.eval(p));
                std::array::from_fn(|i| av * gb[i] + bv * ga[i])
            },
        )
    } else {
        ScalarField::from_fn(move |p| a1.eval(p) * b1.eval(p))
    }
}

/// The vector field `theta * grad(psi)` under the given convention, with
/// exact classical gradients when both inputs are mapped expressions.
pub fn scaled_gradient_field(
    psi: &ScalarField,
    theta: &ScalarField,
    mu: FractalDimension,
    convention: Convention,
) -> VectorField {
    let components = std::array::from_fn(|i| {
        let (psi_i, theta_i) = (psi.clone(), theta.clone());
        ScalarField::from_fn(move |p| {
            let g = gradient(&psi_i, p, mu, convention)
                .expect("interior point for scaled gradient field");
            theta_i.eval(p) * g[i]
        })
    });
    VectorField::new(components)
}
