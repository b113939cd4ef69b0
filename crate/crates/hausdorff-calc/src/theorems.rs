//! Both sides of each integral identity, evaluated under a chosen convention,
//! with residual and convergence-order reporting, plus the limit-definition
//! estimators for divergence and curl.

use crate::error::{CalcError, Result};
use crate::fields::{BoxDomain, Plane, Rectangle, ScalarField, VectorField};
use crate::fractal::FractalDimension;
use crate::integrals::{
    box_quadrature, flux_closed, line_integral_chain, rect_quadrature,
};
use crate::quad::QuadratureSpec;
use crate::vec3::{dot, Point3};
use crate::vecops::{
    curl, divergence, gradient, laplace_chen, Convention, LaplacianForm,
};
use serde::Serialize;

/// Evaluation record for one identity instance.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub identity: String,
    pub convention: Convention,
    pub mu: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence_order: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

impl TheoremReport {
    pub fn new(
        identity: impl Into<String>,
        convention: Convention,
        mu: FractalDimension,
        lhs: f64,
        rhs: f64,
    ) -> Self {
        let abs_residual = (lhs - rhs).abs();
        TheoremReport {
            identity: identity.into(),
            convention,
            mu: mu.get(),
            lhs,
            rhs,
            abs_residual,
            rel_residual: abs_residual / lhs.abs().max(rhs.abs()).max(1e-300),
            convergence_order: None,
            warnings: Vec::new(),
        }
    }

    /// Pass check: relative residual against the tolerance when the sides
    /// have measurable size, absolute otherwise.
    pub fn passes(&self, tol: f64) -> bool {
        let scale = self.lhs.abs().max(self.rhs.abs());
        if scale >= 1e-6 {
            self.rel_residual <= tol
        } else {
            self.abs_residual <= tol
        }
    }
}

/// Gauss-like identity on a box: volume integral of the divergence against
/// the closed outward flux.
pub fn gauss_like(
    w: &VectorField,
    bx: &BoxDomain,
    convention: Convention,
    quad: QuadratureSpec,
) -> Result<TheoremReport> {
    let mu = bx.mu();
    let lhs = box_quadrature(bx, quad, |p| divergence(w, p, mu, convention))?;
    let rhs = flux_closed(w, bx, quad)?;
    Ok(TheoremReport::new("gauss", convention, mu, lhs, rhs))
}

/// Stokes-like identity on an oriented rectangle: flux of the curl against
/// the boundary circulation.
pub fn stokes_like(
    w: &VectorField,
    surface: &Rectangle,
    convention: Convention,
    quad: QuadratureSpec,
) -> Result<TheoremReport> {
    let mu = surface.mu;
    let axis = surface.plane.normal_axis();
    let sign = surface.orientation as f64;
    let lhs = sign
        * rect_quadrature(surface, quad, |p| {
            Ok(curl(w, p, mu, convention)?[axis])
        })?;
    let rhs = line_integral_chain(w, &surface.boundary_edges(), quad)?;
    Ok(TheoremReport::new("stokes", convention, mu, lhs, rhs))
}

/// Green-like identity on an xy-plane rectangle for an in-plane field
/// `T = (T_x, T_y, 0)`: boundary circulation against the curl flux.
pub fn green_like(
    t: &VectorField,
    region: &Rectangle,
    convention: Convention,
    quad: QuadratureSpec,
) -> Result<TheoremReport> {
    if region.plane != Plane::Xy {
        return Err(CalcError::InvalidParameter(
            "green-like identity is stated on an xy-plane rectangle".into(),
        ));
    }
    let mu = region.mu;
    let lhs = line_integral_chain(t, &region.boundary_edges(), quad)?;
    let sign = region.orientation as f64;
    let rhs = sign
        * rect_quadrature(region, quad, |p| {
            Ok(curl(t, p, mu, convention)?[2])
        })?;
    Ok(TheoremReport::new("green", convention, mu, lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreenIdentityKind {
    First,
    Second,
}

/// Green identities on a box (the composed Laplacian is used):
/// first: iiint(theta lap psi + grad psi . grad theta) dV = oiint theta d_n psi dS;
/// second: iiint(theta lap psi - psi lap theta) dV = oiint(theta d_n psi - psi d_n theta) dS.
pub fn green_identity(
    kind: GreenIdentityKind,
    psi: &ScalarField,
    theta: &ScalarField,
    bx: &BoxDomain,
    convention: Convention,
    quad: QuadratureSpec,
) -> Result<TheoremReport> {
    let mu = bx.mu();
    let lap = |f: &ScalarField, p: Point3| laplace_chen(f, p, mu, LaplacianForm::Composed, convention);
    let lhs = match kind {
        GreenIdentityKind::First => box_quadrature(bx, quad, |p| {
            Ok(theta.eval(p) * lap(psi, p)?
                + dot(
                    gradient(psi, p, mu, convention)?,
                    gradient(theta, p, mu, convention)?,
                ))
        })?,
        GreenIdentityKind::Second => box_quadrature(bx, quad, |p| {
            Ok(theta.eval(p) * lap(psi, p)? - psi.eval(p) * lap(theta, p)?)
        })?,
    };
    let mut rhs = 0.0;
    for face in bx.faces() {
        let n = face.unit_normal();
        rhs += rect_quadrature(&face, quad, |p| {
            let dn_psi = dot(gradient(psi, p, mu, convention)?, n);
            Ok(match kind {
                GreenIdentityKind::First => theta.eval(p) * dn_psi,
                GreenIdentityKind::Second => {
                    let dn_theta = dot(gradient(theta, p, mu, convention)?, n);
                    theta.eval(p) * dn_psi - psi.eval(p) * dn_theta
                }
            })
        })?;
    }
    let id = match kind {
        GreenIdentityKind::First => "green_identity_first",
        GreenIdentityKind::Second => "green_identity_second",
    };
    Ok(TheoremReport::new(id, convention, mu, lhs, rhs))
}

/// Transport kernel on a box: `iiint v . grad G dV = oiint G v . dS`, valid
/// for divergence-free velocity. A warning is recorded when the sampled
/// divergence of `v` is measurably nonzero.
pub fn transport_identity_check(
    g: &ScalarField,
    upsilon: &VectorField,
    bx: &BoxDomain,
    convention: Convention,
    quad: QuadratureSpec,
) -> Result<TheoremReport> {
    let mu = bx.mu();
    let lhs = box_quadrature(bx, quad, |p| {
        Ok(dot(upsilon.eval(p), gradient(g, p, mu, convention)?))
    })?;
    let mut rhs = 0.0;
    for face in bx.faces() {
        let n = face.unit_normal();
        rhs += rect_quadrature(&face, quad, |p| {
            Ok(g.eval(p) * dot(upsilon.eval(p), n))
        })?;
    }
    let mut report = TheoremReport::new("transport", convention, mu, lhs, rhs);
    let mut max_div: f64 = 0.0;
    let c = bx.center();
    let lo = bx.lo();
    let hi = bx.hi();
    let probes = [
        c,
        [0.75 * lo[0] + 0.25 * hi[0], c[1], c[2]],
        [c[0], 0.25 * lo[1] + 0.75 * hi[1], c[2]],
        [c[0], c[1], 0.6 * lo[2] + 0.4 * hi[2]],
    ];
    for p in probes {
        max_div = max_div.max(divergence(upsilon, p, mu, convention)?.abs());
    }
    if max_div > 1e-8 {
        report.warnings.push(format!(
            "velocity field is not divergence-free: max sampled divergence {max_div:.3e}"
        ));
    }
    Ok(report)
}

/// Flux-quotient estimates of the divergence at a point: closed flux over
/// fractal volume for a sequence of shrinking boxes.
pub fn divergence_flux_quotient(
    w: &VectorField,
    point: Point3,
    mu: FractalDimension,
    halfwidths: &[f64],
    quad: QuadratureSpec,
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(halfwidths.len());
    for &h in halfwidths {
        if h <= 0.0 {
            return Err(CalcError::InvalidParameter("halfwidth must be positive".into()));
        }
        let lo = [point[0] - h, point[1] - h, point[2] - h];
        if lo.iter().any(|&c| c <= 0.0) && !mu.is_classical() {
            return Err(CalcError::SingularOrigin);
        }
        let hi = [point[0] + h, point[1] + h, point[2] + h];
        let bx = BoxDomain::new(lo, hi, mu)?;
        out.push(flux_closed(w, &bx, quad)? / bx.fractal_volume());
    }
    Ok(out)
}

/// Circulation-quotient estimates of one curl component: boundary circulation
/// of a shrinking rectangle perpendicular to `normal_axis`, over its fractal
/// area.
pub fn curl_circulation_quotient(
    w: &VectorField,
    point: Point3,
    normal_axis: usize,
    mu: FractalDimension,
    halfwidths: &[f64],
    quad: QuadratureSpec,
) -> Result<Vec<f64>> {
    let plane = Plane::perpendicular_to(normal_axis);
    let (a1, a2) = plane.axes();
    let mut out = Vec::with_capacity(halfwidths.len());
    for &h in halfwidths {
        if h <= 0.0 {
            return Err(CalcError::InvalidParameter("halfwidth must be positive".into()));
        }
        if (point[a1] - h <= 0.0 || point[a2] - h <= 0.0) && !mu.is_classical() {
            return Err(CalcError::SingularOrigin);
        }
        let rect = Rectangle::new(
            plane,
            (point[a1] - h, point[a1] + h),
            (point[a2] - h, point[a2] + h),
            point[normal_axis],
            1,
            mu,
        )?;
        let circulation = line_integral_chain(w, &rect.boundary_edges(), quad)?;
        out.push(circulation / rect.fractal_area());
    }
    Ok(out)
}

/// Least-squares slope of `log(err)` against `log(h)`; entries at the
/// rounding floor are dropped.
pub fn order_from_errors(hs: &[f64], errs: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = hs
        .iter()
        .zip(errs)
        .filter(|(_, &e)| e > 1e-14)
        .map(|(&h, &e)| (h.ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    Some((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

/// Runs an identity at the base resolution and two refinements, attaching a
/// convergence-order estimate from the residual triple (panels, 2x, 4x) to
/// the finest report. Residuals at the 1e-13 floor leave the order empty.
pub fn with_refinement<F>(quad: QuadratureSpec, f: F) -> Result<TheoremReport>
where
    F: Fn(QuadratureSpec) -> Result<TheoremReport>,
{
    let _r1 = f(quad)?;
    let r2 = f(quad.refined(2))?;
    let mut r4 = f(quad.refined(4))?;
    let (e2, e4) = (r2.abs_residual, r4.abs_residual);
    r4.convergence_order = if e2 > 1e-13 && e4 > 1e-13 {
        Some((e2 / e4).log2())
    } else {
        None
    };
    Ok(r4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapped::{mapped_curl, MappedExpr, Unary};
    use approx::assert_abs_diff_eq;

    fn mu(v: f64) -> FractalDimension {
        FractalDimension::new(v).unwrap()
    }

    fn quad() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn radial_mapped(m: FractalDimension) -> VectorField {
        VectorField::from_mapped(
            [
                MappedExpr::coordinate(0),
                MappedExpr::coordinate(1),
                MappedExpr::coordinate(2),
            ],
            m,
        )
    }

    #[test]
    fn gauss_like_mapped_convention_holds() {
        let m = mu(0.5);
        let bx = BoxDomain::cube(1.0, 16.0, m).unwrap();
        let r = gauss_like(&radial_mapped(m), &bx, Convention::Mapped, quad()).unwrap();
        assert_abs_diff_eq!(r.lhs, 81.0, epsilon = 1e-7);
        assert_abs_diff_eq!(r.rhs, 81.0, epsilon = 1e-7);
        assert!(r.rel_residual <= 1e-8, "rel {}", r.rel_residual);
    }

    #[test]
    fn gauss_like_physical_convention_gap() {
        // Physical divergence integrated against the fractal volume measure:
        // 0.5 * 3 * ln(4) * 9 = 27 ln 2, far from the flux 81.
        let m = mu(0.5);
        let bx = BoxDomain::cube(1.0, 16.0, m).unwrap();
        let r = gauss_like(&radial_mapped(m), &bx, Convention::Physical, quad()).unwrap();
        let expected_lhs = 27.0 * 2f64.ln();
        assert_abs_diff_eq!(r.lhs, expected_lhs, epsilon = 1e-6);
        assert_abs_diff_eq!(r.rhs, 81.0, epsilon = 1e-7);
        assert!(r.abs_residual > 60.0);
    }

    #[test]
    fn gauss_like_classical_agreement() {
        let m = mu(1.0);
        let w = VectorField::from_mapped(
            [
                MappedExpr::term(1.0, [Unary::Sin(0.8), Unary::Pow(1), Unary::One]),
                MappedExpr::monomial(0.5, [0, 2, 0]),
                MappedExpr::term(1.0, [Unary::One, Unary::One, Unary::Exp(0.4)]),
            ],
            m,
        );
        let bx = BoxDomain::new([0.5, 1.0, 0.5], [2.0, 2.5, 1.5], m).unwrap();
        for conv in [Convention::Physical, Convention::Mapped] {
            let r = gauss_like(&w, &bx, conv, quad()).unwrap();
            assert!(r.rel_residual <= 1e-8, "{conv:?}: rel {}", r.rel_residual);
        }
    }

    #[test]
    fn stokes_like_mapped_and_physical() {
        let m = mu(0.5);
        let w = VectorField::from_mapped(
            [MappedExpr::zero(), MappedExpr::coordinate(0), MappedExpr::zero()],
            m,
        );
        let rect = Rectangle::new(Plane::Xy, (1.0, 4.0), (1.0, 9.0), 2.0, 1, m).unwrap();
        let r = stokes_like(&w, &rect, Convention::Mapped, quad()).unwrap();
        assert_abs_diff_eq!(r.lhs, 2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(r.rhs, 2.0, epsilon = 1e-8);
        assert!(r.rel_residual <= 1e-8);

        // Physical pairing: the curl flux collapses to ln 2.
        let r = stokes_like(&w, &rect, Convention::Physical, quad()).unwrap();
        assert_abs_diff_eq!(r.lhs, 2f64.ln(), epsilon = 1e-6);
        assert_abs_diff_eq!(r.rhs, 2.0, epsilon = 1e-8);
    }

    #[test]
    fn stokes_like_classical_rotation() {
        let m = mu(1.0);
        let w = VectorField::from_mapped(
            [
                MappedExpr::coordinate(1).scale(-1.0),
                MappedExpr::coordinate(0),
                MappedExpr::zero(),
            ],
            m,
        );
        let rect = Rectangle::new(Plane::Xy, (0.0, 1.0), (0.0, 1.0), 0.0, 1, m).unwrap();
        let r = stokes_like(&w, &rect, Convention::Mapped, quad()).unwrap();
        assert_abs_diff_eq!(r.lhs, 2.0, epsilon = 1e-8);
        assert!(r.rel_residual <= 1e-8);
    }

    #[test]
    fn green_like_conventions() {
        let m = mu(0.5);
        let t = VectorField::from_mapped(
            [MappedExpr::zero(), MappedExpr::coordinate(0), MappedExpr::zero()],
            m,
        );
        let region = Rectangle::new(Plane::Xy, (1.0, 4.0), (1.0, 9.0), 1.0, 1, m).unwrap();
        let r = green_like(&t, &region, Convention::Mapped, quad()).unwrap();
        assert_abs_diff_eq!(r.lhs, 2.0, epsilon = 1e-8);
        assert!(r.rel_residual <= 1e-8);

        let r = green_like(&t, &region, Convention::Physical, quad()).unwrap();
        assert_abs_diff_eq!(r.lhs, 2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(r.rhs, 2f64.ln(), epsilon = 1e-6);

        let m1 = mu(1.0);
        let t = VectorField::from_mapped(
            [
                MappedExpr::coordinate(1).scale(-1.0),
                MappedExpr::coordinate(0),
                MappedExpr::zero(),
            ],
            m1,
        );
        let region = Rectangle::new(Plane::Xy, (0.0, 1.0), (0.0, 1.0), 0.0, 1, m1).unwrap();
        let r = green_like(&t, &region, Convention::Mapped, quad()).unwrap();
        assert_abs_diff_eq!(r.lhs, 2.0, epsilon = 1e-8);
        assert!(r.rel_residual <= 1e-8);
    }

    #[test]
    fn green_identity_polynomial_case() {
        // psi = x^mu, theta = y^mu on [1,4]^3: both sides vanish identically.
        let m = mu(0.5);
        let psi = ScalarField::from_mapped(MappedExpr::coordinate(0), m);
        let theta = ScalarField::from_mapped(MappedExpr::coordinate(1), m);
        let bx = BoxDomain::cube(1.0, 4.0, m).unwrap();
        let r = green_identity(
            GreenIdentityKind::First,
            &psi,
            &theta,
            &bx,
            Convention::Mapped,
            quad(),
        )
        .unwrap();
        assert!(r.passes(1e-7), "rel {} abs {}", r.rel_residual, r.abs_residual);
    }

    #[test]
    fn green_identity_first_reduces_to_gauss_for_unit_theta() {
        let m = mu(0.5);
        let expr = MappedExpr::term(1.0, [Unary::Pow(2), Unary::Sin(0.9), Unary::One]);
        let psi = ScalarField::from_mapped(expr.clone(), m);
        let one = ScalarField::constant(1.0);
        let bx = BoxDomain::cube(1.0, 4.0, m).unwrap();
        let r1 = green_identity(
            GreenIdentityKind::First,
            &psi,
            &one,
            &bx,
            Convention::Mapped,
            quad(),
        )
        .unwrap();
        // Gauss applied to the exact mapped gradient of psi.
        let grad_field = VectorField::from_mapped(
            [expr.diff(0), expr.diff(1), expr.diff(2)],
            m,
        );
        let r2 = gauss_like(&grad_field, &bx, Convention::Mapped, quad()).unwrap();
        assert!(
            (r1.abs_residual - r2.abs_residual).abs() <= 1e-10,
            "green {} vs gauss {}",
            r1.abs_residual,
            r2.abs_residual
        );
    }

    #[test]
    fn green_identity_second_antisymmetry() {
        let m = mu(0.5);
        let expr = MappedExpr::term(1.0, [Unary::Sin(0.8), Unary::One, Unary::Pow(2)]);
        let psi = ScalarField::from_mapped(expr.clone(), m);
        let bx = BoxDomain::cube(1.0, 4.0, m).unwrap();
        let r = green_identity(
            GreenIdentityKind::Second,
            &psi,
            &psi,
            &bx,
            Convention::Mapped,
            quad(),
        )
        .unwrap();
        assert!(r.lhs.abs() <= 1e-8 && r.rhs.abs() <= 1e-8, "{} {}", r.lhs, r.rhs);
    }

    #[test]
    fn transport_identity_divergence_free() {
        let m = mu(0.5);
        // v = (y^mu, 0, 0) is divergence-free in the mapped coordinates.
        let v = VectorField::from_mapped(
            [MappedExpr::coordinate(1), MappedExpr::zero(), MappedExpr::zero()],
            m,
        );
        let g = ScalarField::from_mapped(MappedExpr::monomial(1.0, [1, 1, 0]), m);
        let bx = BoxDomain::cube(1.0, 4.0, m).unwrap();
        let r = transport_identity_check(&g, &v, &bx, Convention::Mapped, quad()).unwrap();
        assert!(r.rel_residual <= 1e-7, "rel {}", r.rel_residual);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn transport_records_divergence_warning() {
        let m = mu(0.5);
        let v = radial_mapped(m);
        let g = ScalarField::from_mapped(MappedExpr::coordinate(0), m);
        let bx = BoxDomain::cube(1.0, 4.0, m).unwrap();
        let r = transport_identity_check(&g, &v, &bx, Convention::Mapped, quad()).unwrap();
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn transport_constant_g_and_classical() {
        let m = mu(0.5);
        let v = VectorField::from_mapped(
            [MappedExpr::coordinate(1), MappedExpr::zero(), MappedExpr::zero()],
            m,
        );
        let g = ScalarField::constant(2.5);
        let bx = BoxDomain::cube(1.0, 4.0, m).unwrap();
        let r = transport_identity_check(&g, &v, &bx, Convention::Mapped, quad()).unwrap();
        assert!(r.lhs.abs() <= 1e-8 && r.rhs.abs() <= 1e-8);

        let m1 = mu(1.0);
        let v = VectorField::from_mapped(
            [
                MappedExpr::coordinate(1).scale(-1.0),
                MappedExpr::coordinate(0),
                MappedExpr::zero(),
            ],
            m1,
        );
        let g = ScalarField::from_mapped(MappedExpr::coordinate(0), m1);
        let bx = BoxDomain::new([0.5, 0.5, 0.5], [1.5, 1.5, 1.5], m1).unwrap();
        let r = transport_identity_check(&g, &v, &bx, Convention::Mapped, quad()).unwrap();
        assert!(r.passes(1e-8), "rel {}", r.rel_residual);
    }

    #[test]
    fn flux_quotient_selects_mapped_divergence() {
        let m = mu(0.5);
        // Non-constant mapped divergence so the limit is informative.
        let w = VectorField::from_mapped(
            [
                MappedExpr::monomial(1.0, [2, 0, 0]),
                MappedExpr::monomial(1.0, [0, 1, 1]),
                MappedExpr::coordinate(2),
            ],
            m,
        );
        let p = [4.0, 4.0, 4.0];
        let hs = [0.8, 0.4, 0.2, 0.1];
        let ests =
            divergence_flux_quotient(&w, p, m, &hs, QuadratureSpec::new(16, 1).unwrap()).unwrap();
        let target = divergence(&w, p, m, Convention::Mapped).unwrap();
        let physical = divergence(&w, p, m, Convention::Physical).unwrap();
        let errs: Vec<f64> = ests.iter().map(|e| (e - target).abs()).collect();
        let order = order_from_errors(&hs, &errs).unwrap();
        assert!(order >= 1.0, "order {order}");
        // The estimates stay far from the physical-convention value.
        for e in &ests {
            assert!((e - physical).abs() > 0.5 * (target - physical).abs());
        }
    }

    #[test]
    fn flux_quotient_classical_and_solenoidal() {
        let m1 = mu(1.0);
        let w = VectorField::from_mapped(
            [MappedExpr::monomial(1.0, [3, 0, 0]), MappedExpr::zero(), MappedExpr::zero()],
            m1,
        );
        let p = [1.0, 1.0, 1.0];
        let hs = [0.4, 0.2, 0.1];
        let ests =
            divergence_flux_quotient(&w, p, m1, &hs, QuadratureSpec::new(16, 1).unwrap()).unwrap();
        let errs: Vec<f64> = ests.iter().map(|e| (e - 3.0).abs()).collect();
        assert!(order_from_errors(&hs, &errs).unwrap() >= 1.0);

        // Divergence of a curl: estimates collapse to zero.
        let m = mu(0.5);
        let a = [
            MappedExpr::term(1.0, [Unary::Pow(2), Unary::Sin(0.9), Unary::One]),
            MappedExpr::term(0.5, [Unary::One, Unary::Pow(2), Unary::Cos(0.7)]),
            MappedExpr::zero(),
        ];
        let w = VectorField::from_mapped(mapped_curl(&a), m);
        let ests = divergence_flux_quotient(&w, [4.0, 4.0, 4.0], m, &[0.4, 0.2], QuadratureSpec::new(16, 1).unwrap())
            .unwrap();
        for e in ests {
            assert!(e.abs() <= 1e-7, "estimate {e}");
        }
    }

    #[test]
    fn curl_quotient_converges_to_mapped_component() {
        let m = mu(0.5);
        let w = VectorField::from_mapped(
            [
                MappedExpr::monomial(-1.0, [0, 2, 0]),
                MappedExpr::monomial(1.0, [1, 1, 0]),
                MappedExpr::zero(),
            ],
            m,
        );
        let p = [4.0, 4.0, 4.0];
        let hs = [0.8, 0.4, 0.2, 0.1];
        let ests = curl_circulation_quotient(&w, p, 2, m, &hs, QuadratureSpec::new(16, 1).unwrap())
            .unwrap();
        let target = curl(&w, p, m, Convention::Mapped).unwrap()[2];
        let errs: Vec<f64> = ests.iter().map(|e| (e - target).abs()).collect();
        let order = order_from_errors(&hs, &errs).unwrap();
        assert!(order >= 1.0, "order {order}");
    }

    #[test]
    fn refinement_reports_order_or_floor() {
        let m = mu(0.5);
        let w = VectorField::from_mapped(
            [
                MappedExpr::term(1.0, [Unary::Exp(0.8), Unary::One, Unary::One]),
                MappedExpr::term(1.0, [Unary::One, Unary::Sin(1.1), Unary::One]),
                MappedExpr::zero(),
            ],
            m,
        );
        let bx = BoxDomain::cube(1.0, 4.0, m).unwrap();
        let base = QuadratureSpec::new(4, 1).unwrap();
        let report = with_refinement(base, |q| gauss_like(&w, &bx, Convention::Mapped, q)).unwrap();
        // Either a clean convergence order or already at the floor.
        if let Some(order) = report.convergence_order {
            assert!(order > 2.0, "order {order}");
        } else {
            assert!(report.abs_residual <= 1e-12);
        }
    }
}
