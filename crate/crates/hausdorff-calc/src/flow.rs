//! Flow-layer operators: material Hausdorff derivative, mass-conservation
//! residuals, strain and stress tensors, and the pointwise momentum residual
//! of the fractal power-law system. No 3-D time integration happens here;
//! the momentum system is verified through manufactured states only.

use crate::error::{CalcError, Result};
use crate::fields::{ScalarField, VectorField};
use crate::fractal::FractalDimension;
use crate::vec3::{dot, Point3};
use crate::vecops::{divergence, gradient, laplace_chen, Convention, LaplacianForm};
use std::sync::Arc;

type TimeFn = Arc<dyn Fn(f64, Point3) -> f64 + Send + Sync>;
type TimeGrad = Arc<dyn Fn(f64, Point3) -> [f64; 3] + Send + Sync>;

/// Scalar field of time and space, with optional exact time derivative and
/// exact classical spatial gradient.
#[derive(Clone)]
pub struct SpacetimeScalar {
    eval: TimeFn,
    dt: Option<TimeFn>,
    spatial_grad: Option<TimeGrad>,
}

impl SpacetimeScalar {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(f64, Point3) -> f64 + Send + Sync + 'static,
    {
        SpacetimeScalar {
            eval: Arc::new(f),
            dt: None,
            spatial_grad: None,
        }
    }

    pub fn with_derivatives<F, D, G>(f: F, dt: D, grad: G) -> Self
    where
        F: Fn(f64, Point3) -> f64 + Send + Sync + 'static,
        D: Fn(f64, Point3) -> f64 + Send + Sync + 'static,
        G: Fn(f64, Point3) -> [f64; 3] + Send + Sync + 'static,
    {
        SpacetimeScalar {
            eval: Arc::new(f),
            dt: Some(Arc::new(dt)),
            spatial_grad: Some(Arc::new(grad)),
        }
    }

    /// Time-independent field.
    pub fn steady(field: ScalarField) -> Self {
        let f = field.clone();
        let has_grad = field.has_exact_grad();
        let grad_field = field.clone();
        SpacetimeScalar {
            eval: Arc::new(move |_, p| f.eval(p)),
            dt: Some(Arc::new(|_, _| 0.0)),
            spatial_grad: if has_grad {
                Some(Arc::new(move |_, p| {
                    grad_field
                        .exact_classical_grad(p)
                        .expect("steady field carries a gradient")
                }))
            } else {
                None
            },
        }
    }

    /// `exp(rate * t) * field`, with exact time derivative.
    pub fn exponential_in_time(field: ScalarField, rate: f64) -> Self {
        let f = field.clone();
        let fd = field.clone();
        let has_grad = field.has_exact_grad();
        let grad_field = field.clone();
        SpacetimeScalar {
            eval: Arc::new(move |t, p| (rate * t).exp() * f.eval(p)),
            dt: Some(Arc::new(move |t, p| {
                rate * (rate * t).exp() * fd.eval(p)
            })),
            spatial_grad: if has_grad {
                Some(Arc::new(move |t, p| {
                    let g = grad_field
                        .exact_classical_grad(p)
                        .expect("field carries a gradient");
                    let s = (rate * t).exp();
                    [s * g[0], s * g[1], s * g[2]]
                }))
            } else {
                None
            },
        }
    }

    pub fn constant(c: f64) -> Self {
        SpacetimeScalar {
            eval: Arc::new(move |_, _| c),
            dt: Some(Arc::new(|_, _| 0.0)),
            spatial_grad: Some(Arc::new(|_, _| [0.0; 3])),
        }
    }

    pub fn eval(&self, t: f64, p: Point3) -> f64 {
        (self.eval)(t, p)
    }

    /// Exact time derivative, or a central difference in `t`.
    pub fn time_derivative(&self, t: f64, p: Point3) -> f64 {
        match &self.dt {
            Some(d) => d(t, p),
            None => {
                let h = 1e-6 * t.abs().max(1.0);
                ((self.eval)(t + h, p) - (self.eval)(t - h, p)) / (2.0 * h)
            }
        }
    }

    /// The spatial field at a fixed time.
    pub fn at_time(&self, t: f64) -> ScalarField {
        let f = self.eval.clone();
        match &self.spatial_grad {
            Some(g) => {
                let g = g.clone();
                ScalarField::from_fn_with_grad(move |p| f(t, p), move |p| g(t, p))
            }
            None => ScalarField::from_fn(move |p| f(t, p)),
        }
    }
}

/// Vector field of time and space.
#[derive(Clone)]
pub struct SpacetimeVector {
    pub components: [SpacetimeScalar; 3],
    constant_value: Option<[f64; 3]>,
}

impl SpacetimeVector {
    pub fn new(components: [SpacetimeScalar; 3]) -> Self {
        SpacetimeVector {
            components,
            constant_value: None,
        }
    }

    /// Constant velocity; enables the divergence-form cross-check of the
    /// continuity residual.
    pub fn constant(v: [f64; 3]) -> Self {
        SpacetimeVector {
            components: [
                SpacetimeScalar::constant(v[0]),
                SpacetimeScalar::constant(v[1]),
                SpacetimeScalar::constant(v[2]),
            ],
            constant_value: Some(v),
        }
    }

    pub fn zero() -> Self {
        Self::constant([0.0; 3])
    }

    pub fn eval(&self, t: f64, p: Point3) -> [f64; 3] {
        std::array::from_fn(|i| self.components[i].eval(t, p))
    }

    pub fn at_time(&self, t: f64) -> VectorField {
        VectorField::new(std::array::from_fn(|i| self.components[i].at_time(t)))
    }

    pub fn constant_value(&self) -> Option<[f64; 3]> {
        self.constant_value
    }
}

/// Material Hausdorff derivative `d_t phi + v . grad^mu phi` at a point.
pub fn material_derivative(
    phi: &SpacetimeScalar,
    upsilon: &SpacetimeVector,
    point: Point3,
    time: f64,
    mu: FractalDimension,
    convention: Convention,
) -> Result<f64> {
    let spatial = phi.at_time(time);
    let g = gradient(&spatial, point, mu, convention)?;
    Ok(phi.time_derivative(time, point) + dot(upsilon.eval(time, point), g))
}

/// Mass-conservation residual `d_t rho + v . grad^mu rho`. For velocities
/// constructed as constant, the divergence form `d_t rho + div^mu(v rho)` is
/// also evaluated and must agree to 1e-8; disagreement is reported as an
/// error since it indicates an inconsistent state.
pub fn continuity_residual(
    rho: &SpacetimeScalar,
    upsilon: &SpacetimeVector,
    point: Point3,
    time: f64,
    mu: FractalDimension,
    convention: Convention,
) -> Result<f64> {
    let advective = material_derivative(rho, upsilon, point, time, mu, convention)?;
    if let Some(v) = upsilon.constant_value() {
        let rho_t = rho.clone();
        let flux = VectorField::new(std::array::from_fn(|i| {
            let r = rho_t.at_time(time);
            let r2 = r.clone();
            if r.has_exact_grad() {
                ScalarField::from_fn_with_grad(
                    move |p| v[i] * r.eval(p),
                    move |p| {
                        let g = r2.exact_classical_grad(p).expect("gradient available");
                        [v[i] * g[0], v[i] * g[1], v[i] * g[2]]
                    },
                )
            } else {
                ScalarField::from_fn(move |p| v[i] * r.eval(p))
            }
        }));
        let divergence_form =
            rho.time_derivative(time, point) + divergence(&flux, point, mu, convention)?;
        let scale = advective.abs().max(divergence_form.abs()).max(1.0);
        if (advective - divergence_form).abs() > 1e-8 * scale {
            return Err(CalcError::InvalidParameter(format!(
                "continuity forms disagree for constant velocity: {advective} vs {divergence_form}"
            )));
        }
    }
    Ok(advective)
}

/// Velocity-gradient, strain, and stress tensors at a point:
/// `sigma_ij = D_i v_j`, `eta = (sigma + sigma^T)/2`, `H = -p I + 2 eps eta`.
pub fn stress_tensor(
    upsilon: &VectorField,
    pressure: &ScalarField,
    epsilon: f64,
    point: Point3,
    mu: FractalDimension,
    convention: Convention,
) -> Result<[[f64; 3]; 3]> {
    if epsilon < 0.0 {
        return Err(CalcError::InvalidParameter(
            "shear modulus must be nonnegative".into(),
        ));
    }
    let mut sigma = [[0.0; 3]; 3];
    for j in 0..3 {
        let g = gradient(&upsilon.components[j], point, mu, convention)?;
        for i in 0..3 {
            sigma[i][j] = g[i];
        }
    }
    let p = pressure.eval(point);
    let mut stress = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let eta = 0.5 * (sigma[i][j] + sigma[j][i]);
            stress[i][j] = 2.0 * epsilon * eta - if i == j { p } else { 0.0 };
        }
    }
    Ok(stress)
}

/// Complete flow state for the momentum residual.
pub struct FlowState {
    pub density: SpacetimeScalar,
    pub velocity: SpacetimeVector,
    pub pressure: SpacetimeScalar,
    pub body_force: SpacetimeVector,
    pub shear_modulus: f64,
    pub diffusivity: f64,
}

impl FlowState {
    /// The diffusivity is derived as `epsilon / rho_ref`.
    pub fn new(
        density: SpacetimeScalar,
        velocity: SpacetimeVector,
        pressure: SpacetimeScalar,
        body_force: SpacetimeVector,
        epsilon: f64,
        rho_ref: f64,
    ) -> Result<Self> {
        if epsilon < 0.0 {
            return Err(CalcError::InvalidParameter(
                "shear modulus must be nonnegative".into(),
            ));
        }
        if !(rho_ref > 0.0) {
            return Err(CalcError::InvalidParameter(
                "reference density must be positive".into(),
            ));
        }
        Ok(FlowState {
            density,
            velocity,
            pressure,
            body_force,
            shear_modulus: epsilon,
            diffusivity: epsilon / rho_ref,
        })
    }
}

/// Pointwise residual of the momentum system and the incompressibility
/// constraint.
#[derive(Debug, Clone, Copy)]
pub struct MomentumResidual {
    /// `rho (d_t v + v . grad^mu v) + grad^mu p - eps lap^mu v - b`, per component.
    pub momentum: [f64; 3],
    /// `div^mu v`.
    pub incompressibility: f64,
}

pub fn momentum_residual(
    state: &FlowState,
    point: Point3,
    time: f64,
    mu: FractalDimension,
    convention: Convention,
    laplacian_form: LaplacianForm,
) -> Result<MomentumResidual> {
    let rho = state.density.eval(time, point);
    if !(rho > 0.0) {
        return Err(CalcError::InvalidParameter(format!(
            "density must be positive at the sample point, got {rho}"
        )));
    }
    let vel_now = state.velocity.at_time(time);
    let v = state.velocity.eval(time, point);
    let grad_p = gradient(&state.pressure.at_time(time), point, mu, convention)?;

    let mut momentum = [0.0; 3];
    for i in 0..3 {
        let dv_dt = state.velocity.components[i].time_derivative(time, point);
        let grad_vi = gradient(&vel_now.components[i], point, mu, convention)?;
        let convective = dot(v, grad_vi);
        let lap_vi = laplace_chen(&vel_now.components[i], point, mu, laplacian_form, convention)?;
        let b_i = state.body_force.components[i].eval(time, point);
        momentum[i] =
            rho * (dv_dt + convective) + grad_p[i] - state.shear_modulus * lap_vi - b_i;
    }
    let incompressibility = divergence(&vel_now, point, mu, convention)?;
    Ok(MomentumResidual {
        momentum,
        incompressibility,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapped::{MappedExpr, Unary};
    use crate::vec3::max_abs;
    use approx::assert_abs_diff_eq;

    fn mu(v: f64) -> FractalDimension {
        FractalDimension::new(v).unwrap()
    }

    #[test]
    fn material_derivative_prefactored_advection() {
        // phi = t + x^mu, v = (1, 0, 0): d_t phi + classical d_x(x^mu)
        // = 1 + mu x^(mu-1) = 1.5 at x = 1, mu = 1/2.
        let m = mu(0.5);
        let base = ScalarField::from_mapped(MappedExpr::coordinate(0), m);
        let phi = SpacetimeScalar::with_derivatives(
            {
                let b = base.clone();
                move |t, p| t + b.eval(p)
            },
            |_, _| 1.0,
            {
                let b = base.clone();
                move |_, p| b.exact_classical_grad(p).unwrap()
            },
        );
        let v = SpacetimeVector::constant([1.0, 0.0, 0.0]);
        let d = material_derivative(&phi, &v, [1.0, 1.0, 1.0], 0.3, m, Convention::Physical)
            .unwrap();
        assert_abs_diff_eq!(d, 1.5, epsilon = 1e-6);

        // No advection: the time derivative alone.
        let d = material_derivative(&phi, &SpacetimeVector::zero(), [1.0, 1.0, 1.0], 0.3, m,
            Convention::Physical)
        .unwrap();
        assert_abs_diff_eq!(d, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn material_derivative_classical() {
        // phi = x t, v = (1,0,0): d_t phi + v . grad phi = x + t.
        let m = mu(1.0);
        let phi = SpacetimeScalar::with_derivatives(
            |t, p| p[0] * t,
            |_, p| p[0],
            |t, _| [t, 0.0, 0.0],
        );
        let v = SpacetimeVector::constant([1.0, 0.0, 0.0]);
        let d = material_derivative(&phi, &v, [2.0, 1.0, 1.0], 0.7, m, Convention::Physical)
            .unwrap();
        assert_abs_diff_eq!(d, 2.7, epsilon = 1e-8);
    }

    #[test]
    fn continuity_residuals() {
        let m = mu(0.5);
        // Constant density: residual zero for any velocity.
        let rho = SpacetimeScalar::constant(2.0);
        let v = SpacetimeVector::constant([1.0, -0.5, 0.25]);
        let r = continuity_residual(&rho, &v, [1.0, 2.0, 1.5], 0.1, m, Convention::Physical)
            .unwrap();
        assert_abs_diff_eq!(r, 0.0, epsilon = 1e-10);

        // rho = exp(-t) exp(x^mu), v = (v0, 0, 0): residual
        // rho (-1 + v0 mu x^(mu-1)) under the physical convention.
        let spatial = ScalarField::from_mapped(
            MappedExpr::term(1.0, [Unary::Exp(1.0), Unary::One, Unary::One]),
            m,
        );
        let rho = SpacetimeScalar::exponential_in_time(spatial, -1.0);
        let x: f64 = 1.44;
        let v0 = 1.0 / (0.5 * x.powf(-0.5));
        let v = SpacetimeVector::constant([v0, 0.0, 0.0]);
        let r = continuity_residual(&rho, &v, [x, 1.0, 1.0], 0.2, m, Convention::Physical)
            .unwrap();
        assert!(r.abs() <= 1e-6, "residual {r}");

        // Classical traveling wave rho = f(x - v0 t).
        let m1 = mu(1.0);
        let v0 = 0.8;
        let rho = SpacetimeScalar::with_derivatives(
            move |t, p| ((p[0] - v0 * t) * 1.3).sin(),
            move |t, p| -v0 * 1.3 * ((p[0] - v0 * t) * 1.3).cos(),
            move |t, p| [1.3 * ((p[0] - v0 * t) * 1.3).cos(), 0.0, 0.0],
        );
        let v = SpacetimeVector::constant([v0, 0.0, 0.0]);
        let r = continuity_residual(&rho, &v, [2.0, 1.0, 1.0], 0.5, m1, Convention::Physical)
            .unwrap();
        assert!(r.abs() <= 1e-6, "residual {r}");
    }

    #[test]
    fn stress_tensor_cases() {
        let m = mu(0.5);
        // Rest state: purely hydrostatic.
        let v = VectorField::from_mapped(
            [MappedExpr::zero(), MappedExpr::zero(), MappedExpr::zero()],
            m,
        );
        let p = ScalarField::constant(3.0);
        let h = stress_tensor(&v, &p, 1.5, [1.0, 1.0, 1.0], m, Convention::Mapped).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { -3.0 } else { 0.0 };
                assert_abs_diff_eq!(h[i][j], expected, epsilon = 1e-12);
            }
        }

        // Symmetric shear in the mapped coordinates.
        let v = VectorField::from_mapped(
            [
                MappedExpr::coordinate(1),
                MappedExpr::coordinate(0),
                MappedExpr::zero(),
            ],
            m,
        );
        let p = ScalarField::constant(0.0);
        let h = stress_tensor(&v, &p, 1.0, [1.0, 2.0, 1.0], m, Convention::Mapped).unwrap();
        assert_abs_diff_eq!(h[0][1], 2.0, epsilon = 1e-6);
        assert_abs_diff_eq!(h[1][0], 2.0, epsilon = 1e-6);
        assert_abs_diff_eq!(h[0][0], 0.0, epsilon = 1e-8);

        // Classical Newtonian reduction.
        let m1 = mu(1.0);
        let v = VectorField::from_mapped(
            [
                MappedExpr::monomial(1.0, [0, 1, 0]),
                MappedExpr::zero(),
                MappedExpr::zero(),
            ],
            m1,
        );
        let p = ScalarField::constant(1.0);
        let h = stress_tensor(&v, &p, 2.0, [1.0, 1.0, 1.0], m1, Convention::Physical).unwrap();
        // sigma_21 = d v_x / d y = 1; eta_12 = 1/2; H_12 = 2 eps eta = 2.
        assert_abs_diff_eq!(h[0][1], 2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(h[0][0], -1.0, epsilon = 1e-8);
    }

    #[test]
    fn strain_tensor_is_symmetric() {
        let m = mu(0.7);
        let v = VectorField::from_mapped(
            [
                MappedExpr::term(1.0, [Unary::Pow(2), Unary::Sin(0.8), Unary::One]),
                MappedExpr::term(0.5, [Unary::One, Unary::Pow(1), Unary::Exp(0.4)]),
                MappedExpr::term(-0.3, [Unary::Cos(0.6), Unary::One, Unary::Pow(2)]),
            ],
            m,
        );
        let p = ScalarField::constant(0.7);
        let h = stress_tensor(&v, &p, 1.3, [1.2, 1.5, 0.9], m, Convention::Mapped).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(h[i][j], h[j][i], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn momentum_rest_state() {
        let m = mu(0.5);
        let state = FlowState::new(
            SpacetimeScalar::constant(1.0),
            SpacetimeVector::zero(),
            SpacetimeScalar::constant(2.5),
            SpacetimeVector::zero(),
            1.0,
            1.0,
        )
        .unwrap();
        let r = momentum_residual(
            &state,
            [1.0, 1.5, 2.0],
            0.0,
            m,
            Convention::Mapped,
            LaplacianForm::Composed,
        )
        .unwrap();
        assert!(max_abs(r.momentum) <= 1e-10, "{:?}", r.momentum);
        assert_abs_diff_eq!(r.incompressibility, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn momentum_residual_tracks_term_perturbations() {
        // Perturbing the body force of a balanced state by delta moves the
        // residual by exactly delta.
        let m = mu(0.5);
        let delta = 1e-3;
        let state = FlowState::new(
            SpacetimeScalar::constant(1.0),
            SpacetimeVector::zero(),
            SpacetimeScalar::constant(2.0),
            SpacetimeVector::constant([delta, 0.0, 0.0]),
            0.5,
            1.0,
        )
        .unwrap();
        let r = momentum_residual(
            &state,
            [1.0, 1.5, 2.0],
            0.0,
            m,
            Convention::Mapped,
            LaplacianForm::Composed,
        )
        .unwrap();
        assert!(
            (r.momentum[0] + delta).abs() <= 1e-8,
            "residual {} vs -delta",
            r.momentum[0]
        );
        assert!(r.momentum[1].abs() <= 1e-10 && r.momentum[2].abs() <= 1e-10);
    }

    #[test]
    fn diffusivity_derivation_is_checked() {
        let err = FlowState::new(
            SpacetimeScalar::constant(1.0),
            SpacetimeVector::zero(),
            SpacetimeScalar::constant(0.0),
            SpacetimeVector::zero(),
            1.0,
            0.0,
        )
        .err()
        .unwrap();
        assert!(err.to_string().contains("reference density"));
        let state = FlowState::new(
            SpacetimeScalar::constant(1.0),
            SpacetimeVector::zero(),
            SpacetimeScalar::constant(0.0),
            SpacetimeVector::zero(),
            3.0,
            2.0,
        )
        .unwrap();
        assert!((state.diffusivity - 1.5).abs() <= 1e-14);
    }
}
