//! Fractal-measure quadrature: line, double, volume, surface, and
//! closed-surface flux integrals over the supported geometry.
//!
//! Every integral is computed by the exact change of variables to the mapped
//! coordinates, where the fractal weight is absorbed and classical composite
//! Gauss-Legendre quadrature applies panel by panel. No singular-endpoint
//! quadrature is ever needed, even when a bound touches zero.

use crate::error::{CalcError, Result};
use crate::fields::{BoxDomain, ParametricCurve, Rectangle, ScalarField, VectorField};
use crate::quad::QuadratureSpec;
use crate::vec3::Point3;

/// A surface to integrate over: one rectangle or the whole box boundary.
#[derive(Debug, Clone)]
pub enum Surface {
    Rectangle(Rectangle),
    BoxBoundary(BoxDomain),
}

/// Quadrature over a curve parameter range; the callback receives the
/// parameter, the physical point, and the fractal line element `dl/ds`.
pub(crate) fn curve_quadrature<F>(
    curve: &ParametricCurve,
    quad: QuadratureSpec,
    mut f: F,
) -> Result<f64>
where
    F: FnMut(f64, Point3, [f64; 3]) -> Result<f64>,
{
    quad.check_budget(1)?;
    let mu = curve.mu();
    let (t0, t1) = curve.range();
    let rule = quad.rule();
    let mut sum = 0.0;
    for (s, w) in rule.panel_points(t0, t1, quad.panels) {
        let p = curve.point(s);
        let v = curve.velocity(s);
        let dl = std::array::from_fn(|i| mu.weight(p[i]) * v[i]);
        let val = f(s, p, dl)?;
        if !val.is_finite() {
            return Err(CalcError::SingularCurvePoint(s));
        }
        sum += w * val;
    }
    Ok(sum)
}

/// Quadrature of `f` against the unsigned fractal surface measure of a
/// rectangle (the classical measure of the mapped rectangle).
pub(crate) fn rect_quadrature<F>(rect: &Rectangle, quad: QuadratureSpec, mut f: F) -> Result<f64>
where
    F: FnMut(Point3) -> Result<f64>,
{
    quad.check_budget(2)?;
    let mu = rect.mu;
    let (a1, a2) = rect.plane.axes();
    let rule = quad.rule();
    let (b1, b2) = (rect.bounds1, rect.bounds2);
    let pts1 = rule.panel_points(mu.map(b1.0), mu.map(b1.1), quad.panels);
    let pts2 = rule.panel_points(mu.map(b2.0), mu.map(b2.1), quad.panels);
    let mut sum = 0.0;
    for &(w1, g1) in &pts1 {
        let mut inner = 0.0;
        for &(w2, g2) in &pts2 {
            let mut p = [rect.fixed; 3];
            p[a1] = mu.unmap(w1);
            p[a2] = mu.unmap(w2);
            inner += g2 * f(p)?;
        }
        sum += g1 * inner;
    }
    Ok(sum)
}

/// Triple quadrature against the fractal volume measure, with a configurable
/// nesting order for the Fubini checks.
fn box_quadrature_ordered<F>(
    bx: &BoxDomain,
    quad: QuadratureSpec,
    order: [usize; 3],
    mut f: F,
) -> Result<f64>
where
    F: FnMut(Point3) -> Result<f64>,
{
    quad.check_budget(3)?;
    let mu = bx.mu();
    let rule = quad.rule();
    let pts: [Vec<(f64, f64)>; 3] = std::array::from_fn(|axis| {
        let (a, b) = bx.mapped_bounds(axis);
        rule.panel_points(a, b, quad.panels)
    });
    let [o0, o1, o2] = order;
    let mut sum = 0.0;
    for &(w0, g0) in &pts[o0] {
        let mut s1 = 0.0;
        for &(w1, g1) in &pts[o1] {
            let mut s2 = 0.0;
            for &(w2, g2) in &pts[o2] {
                let mut p = [0.0; 3];
                p[o0] = mu.unmap(w0);
                p[o1] = mu.unmap(w1);
                p[o2] = mu.unmap(w2);
                s2 += g2 * f(p)?;
            }
            s1 += g1 * s2;
        }
        sum += g0 * s1;
    }
    Ok(sum)
}

pub(crate) fn box_quadrature<F>(bx: &BoxDomain, quad: QuadratureSpec, f: F) -> Result<f64>
where
    F: FnMut(Point3) -> Result<f64>,
{
    box_quadrature_ordered(bx, quad, [0, 1, 2], f)
}

/// Line Hausdorff integral of a vector field along a curve:
/// `mu * int T_x x^(mu-1) dx + T_y y^(mu-1) dy + T_z z^(mu-1) dz`.
pub fn line_integral(t: &VectorField, curve: &ParametricCurve, quad: QuadratureSpec) -> Result<f64> {
    curve_quadrature(curve, quad, |_, p, dl| {
        let tv = t.eval(p);
        Ok(tv[0] * dl[0] + tv[1] * dl[1] + tv[2] * dl[2])
    })
}

/// Sum of line integrals over a chain of curves (e.g. the edges of a
/// rectangle boundary).
pub fn line_integral_chain(
    t: &VectorField,
    curves: &[ParametricCurve],
    quad: QuadratureSpec,
) -> Result<f64> {
    let mut sum = 0.0;
    for c in curves {
        sum += line_integral(t, c, quad)?;
    }
    Ok(sum)
}

/// Double Hausdorff integral `mu^2 iint M x^(mu-1) y^(mu-1) dx dy` of a scalar
/// field over a rectangle (orientation ignored: the measure is unsigned).
pub fn double_integral(m: &ScalarField, region: &Rectangle, quad: QuadratureSpec) -> Result<f64> {
    rect_quadrature(region, quad, |p| Ok(m.eval(p)))
}

/// Volume Hausdorff integral `mu^3 iiint N (xyz)^(mu-1) dx dy dz` over a box.
pub fn volume_integral(n: &ScalarField, bx: &BoxDomain, quad: QuadratureSpec) -> Result<f64> {
    box_quadrature(bx, quad, |p| Ok(n.eval(p)))
}

/// Surface Hausdorff integral of a vector field: the flux `iint W . dS` with
/// the vector fractal surface element.
pub fn surface_integral(w: &VectorField, surface: &Surface, quad: QuadratureSpec) -> Result<f64> {
    match surface {
        Surface::Rectangle(rect) => {
            let normal_axis = rect.plane.normal_axis();
            let sign = rect.orientation as f64;
            let flux = rect_quadrature(rect, quad, |p| Ok(w.components[normal_axis].eval(p)))?;
            Ok(sign * flux)
        }
        Surface::BoxBoundary(bx) => {
            let mut sum = 0.0;
            for face in bx.faces() {
                sum += surface_integral(w, &Surface::Rectangle(face), quad)?;
            }
            Ok(sum)
        }
    }
}

/// Closed-surface flux through the outward-oriented boundary of a box.
pub fn flux_closed(w: &VectorField, bx: &BoxDomain, quad: QuadratureSpec) -> Result<f64> {
    surface_integral(w, &Surface::BoxBoundary(*bx), quad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Plane;
    use crate::fractal::FractalDimension;
    use crate::mapped::{mapped_curl, MappedExpr, Unary};
    use approx::assert_abs_diff_eq;

    fn mu(v: f64) -> FractalDimension {
        FractalDimension::new(v).unwrap()
    }

    fn quad() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn rect_xy(m: FractalDimension, b1: (f64, f64), b2: (f64, f64), z: f64) -> Rectangle {
        Rectangle::new(Plane::Xy, b1, b2, z, 1, m).unwrap()
    }

    #[test]
    fn line_integral_mapped_area_form() {
        // T = (0, x^mu, 0) around the rectangle boundary x in [1,4], y in [1,9]:
        // the mapped circulation of u dv encloses area (2-1)(3-1) = 2.
        let m = mu(0.5);
        let t = VectorField::from_mapped(
            [
                MappedExpr::zero(),
                MappedExpr::coordinate(0),
                MappedExpr::zero(),
            ],
            m,
        );
        let rect = rect_xy(m, (1.0, 4.0), (1.0, 9.0), 1.0);
        let v = line_integral_chain(&t, &rect.boundary_edges(), quad()).unwrap();
        assert_abs_diff_eq!(v, 2.0, epsilon = 1e-8);
    }

    #[test]
    fn line_integral_classical_circulation() {
        // T = (y, 0, 0) around the unit square, counterclockwise: -1.
        let m = mu(1.0);
        let t = VectorField::from_mapped(
            [
                MappedExpr::coordinate(1),
                MappedExpr::zero(),
                MappedExpr::zero(),
            ],
            m,
        );
        let rect = rect_xy(m, (0.0, 1.0), (0.0, 1.0), 0.0);
        let v = line_integral_chain(&t, &rect.boundary_edges(), quad()).unwrap();
        assert_abs_diff_eq!(v, -1.0, epsilon = 1e-12);
    }

    #[test]
    fn conservative_field_closed_circulation_vanishes() {
        // T = mapped gradient of a smooth potential: zero circulation.
        let m = mu(0.5);
        let potential = MappedExpr::term(1.0, [Unary::Sin(1.0), Unary::Pow(2), Unary::One]);
        let t = VectorField::from_mapped(
            [potential.diff(0), potential.diff(1), potential.diff(2)],
            m,
        );
        let rect = rect_xy(m, (1.0, 3.0), (1.0, 4.0), 2.0);
        let v = line_integral_chain(&t, &rect.boundary_edges(), quad()).unwrap();
        assert!(v.abs() <= 1e-8, "circulation {v}");
    }

    #[test]
    fn curve_reversal_negates_line_integral() {
        let m = mu(0.6);
        let t = VectorField::from_mapped(
            [
                MappedExpr::coordinate(1),
                MappedExpr::coordinate(0),
                MappedExpr::constant(0.5),
            ],
            m,
        );
        let c = ParametricCurve::segment([1.0, 2.0, 1.0], [3.0, 2.5, 1.5], m).unwrap();
        let fwd = line_integral(&t, &c, quad()).unwrap();
        let bwd = line_integral(&t, &c.reversed(), quad()).unwrap();
        assert_abs_diff_eq!(fwd, -bwd, epsilon = 1e-12);
    }

    #[test]
    fn double_integral_mapped_area_and_product() {
        let m = mu(0.5);
        let one = ScalarField::constant(1.0);
        let region = rect_xy(m, (0.0, 4.0), (0.0, 9.0), 0.0);
        let v = double_integral(&one, &region, quad()).unwrap();
        assert_abs_diff_eq!(v, 6.0, epsilon = 1e-10);

        // M = x^mu y^mu: iint uv du dv = (4/2)(9/2) = 9.
        let f = ScalarField::from_mapped(MappedExpr::monomial(1.0, [1, 1, 0]), m);
        let v = double_integral(&f, &region, quad()).unwrap();
        assert_abs_diff_eq!(v, 9.0, epsilon = 1e-8);

        let m1 = mu(1.0);
        let region = rect_xy(m1, (0.0, 1.0), (0.0, 1.0), 0.0);
        let one = ScalarField::constant(1.0);
        let v = double_integral(&one, &region, quad()).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn volume_integral_cases() {
        let m = mu(0.5);
        let one = ScalarField::constant(1.0);
        let bx = BoxDomain::cube(0.0, 4.0, m).unwrap();
        assert_abs_diff_eq!(volume_integral(&one, &bx, quad()).unwrap(), 8.0, epsilon = 1e-10);

        let m1 = mu(1.0);
        let f = ScalarField::from_mapped(MappedExpr::coordinate(0), m1);
        let bx = BoxDomain::cube(0.0, 1.0, m1).unwrap();
        assert_abs_diff_eq!(volume_integral(&f, &bx, quad()).unwrap(), 0.5, epsilon = 1e-12);

        // N = sin(x^mu) over [1,4]^3 at mu = 1/2: (cos 1 - cos 2) * (2-1)^2.
        let m = mu(0.5);
        let f = ScalarField::from_mapped(
            MappedExpr::term(1.0, [Unary::Sin(1.0), Unary::One, Unary::One]),
            m,
        );
        let bx = BoxDomain::cube(1.0, 4.0, m).unwrap();
        let expected = 1f64.cos() - 2f64.cos();
        assert_abs_diff_eq!(volume_integral(&f, &bx, quad()).unwrap(), expected, epsilon = 1e-8);
    }

    #[test]
    fn volume_additivity_under_splitting() {
        let m = mu(0.7);
        let f = ScalarField::from_mapped(
            MappedExpr::term(1.3, [Unary::Pow(2), Unary::Exp(0.4), Unary::Sin(0.8)]),
            m,
        );
        let bx = BoxDomain::new([0.5, 1.0, 1.0], [3.0, 2.0, 4.0], m).unwrap();
        let whole = volume_integral(&f, &bx, quad()).unwrap();
        let (left, right) = bx.split(0);
        let parts = volume_integral(&f, &left, quad()).unwrap()
            + volume_integral(&f, &right, quad()).unwrap();
        assert_abs_diff_eq!(whole, parts, epsilon = 1e-12 * whole.abs().max(1.0));
    }

    #[test]
    fn fubini_orderings_agree() {
        let m = mu(0.6);
        let f = ScalarField::from_mapped(
            MappedExpr::term(1.0, [Unary::Sin(0.9), Unary::Pow(1), Unary::Exp(0.3)]),
            m,
        );
        let bx = BoxDomain::new([0.2, 1.0, 0.5], [2.0, 3.0, 1.5], m).unwrap();
        let orders = [[0usize, 1, 2], [1, 2, 0], [2, 0, 1]];
        let vals: Vec<f64> = orders
            .iter()
            .map(|&o| box_quadrature_ordered(&bx, quad(), o, |p| Ok(f.eval(p))).unwrap())
            .collect();
        for v in &vals[1..] {
            assert_abs_diff_eq!(*v, vals[0], epsilon = 1e-12 * vals[0].abs().max(1.0));
        }
    }

    #[test]
    fn surface_integral_box_flux() {
        // W = (x^mu, 0, 0) on the boundary of [1,16]^3 at mu = 1/2: only the
        // x faces contribute, total (4-1) * 9 = 27.
        let m = mu(0.5);
        let w = VectorField::from_mapped(
            [MappedExpr::coordinate(0), MappedExpr::zero(), MappedExpr::zero()],
            m,
        );
        let bx = BoxDomain::cube(1.0, 16.0, m).unwrap();
        let v = flux_closed(&w, &bx, quad()).unwrap();
        assert_abs_diff_eq!(v, 27.0, epsilon = 1e-8);
    }

    #[test]
    fn tangent_field_has_zero_flux_through_rectangle() {
        let m = mu(0.5);
        let w = VectorField::from_mapped(
            [MappedExpr::coordinate(0), MappedExpr::coordinate(1), MappedExpr::zero()],
            m,
        );
        let rect = rect_xy(m, (1.0, 2.0), (1.0, 3.0), 1.0);
        let v = surface_integral(&w, &Surface::Rectangle(rect), quad()).unwrap();
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn classical_unit_cube_flux() {
        let m = mu(1.0);
        let w = VectorField::from_mapped(
            [
                MappedExpr::coordinate(0),
                MappedExpr::coordinate(1),
                MappedExpr::coordinate(2),
            ],
            m,
        );
        let bx = BoxDomain::cube(0.0, 1.0, m).unwrap();
        assert_abs_diff_eq!(flux_closed(&w, &bx, quad()).unwrap(), 3.0, epsilon = 1e-10);
    }

    #[test]
    fn full_mapped_gauss_value() {
        // W = (x^mu, y^mu, z^mu) on [1,16]^3 at mu = 1/2: flux 81.
        let m = mu(0.5);
        let w = VectorField::from_mapped(
            [
                MappedExpr::coordinate(0),
                MappedExpr::coordinate(1),
                MappedExpr::coordinate(2),
            ],
            m,
        );
        let bx = BoxDomain::cube(1.0, 16.0, m).unwrap();
        assert_abs_diff_eq!(flux_closed(&w, &bx, quad()).unwrap(), 81.0, epsilon = 1e-7);
    }

    #[test]
    fn flux_of_curl_through_closed_surface_vanishes() {
        let m = mu(0.5);
        let a = [
            MappedExpr::term(1.0, [Unary::Sin(0.7), Unary::Pow(2), Unary::One]),
            MappedExpr::term(-0.6, [Unary::Pow(1), Unary::One, Unary::Exp(0.3)]),
            MappedExpr::term(0.4, [Unary::One, Unary::Cos(0.9), Unary::Pow(2)]),
        ];
        let w = VectorField::from_mapped(mapped_curl(&a), m);
        let bx = BoxDomain::cube(1.0, 9.0, m).unwrap();
        let v = flux_closed(&w, &bx, quad()).unwrap();
        assert!(v.abs() <= 1e-6, "flux {v}");
    }

    #[test]
    fn constant_field_zero_closed_flux() {
        let m = mu(1.0);
        let w = VectorField::from_mapped(
            [
                MappedExpr::constant(2.0),
                MappedExpr::constant(-1.0),
                MappedExpr::constant(0.5),
            ],
            m,
        );
        let bx = BoxDomain::cube(0.0, 2.0, m).unwrap();
        assert_abs_diff_eq!(flux_closed(&w, &bx, quad()).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn orientation_flip_negates_flux() {
        let m = mu(0.5);
        let w = VectorField::from_mapped(
            [MappedExpr::zero(), MappedExpr::zero(), MappedExpr::monomial(1.0, [1, 1, 0])],
            m,
        );
        let rect = rect_xy(m, (1.0, 2.0), (1.0, 3.0), 2.0);
        let a = surface_integral(&w, &Surface::Rectangle(rect), quad()).unwrap();
        let b = surface_integral(&w, &Surface::Rectangle(rect.flipped()), quad()).unwrap();
        assert_abs_diff_eq!(a, -b, epsilon = 1e-13);
        assert!(a.abs() > 0.1);
    }

    proptest::proptest! {
        // The fractal measure of any box is the classical volume of the
        // mapped box, for any admissible dimension and bounds.
        #[test]
        fn box_measure_matches_mapped_volume(
            mu_val in 0.2f64..=1.0,
            lo in 0.0f64..2.0,
            len in 0.5f64..3.0,
        ) {
            let m = FractalDimension::new(mu_val).unwrap();
            let bx = BoxDomain::cube(lo, lo + len, m).unwrap();
            let one = ScalarField::constant(1.0);
            let v = volume_integral(&one, &bx, QuadratureSpec::default()).unwrap();
            let exact = bx.fractal_volume();
            proptest::prop_assert!((v - exact).abs() <= 1e-12 * exact.max(1.0));
        }

        // Reversing a curve negates every line integral along it.
        #[test]
        fn reversal_negates_line_integral(
            mu_val in 0.2f64..=1.0,
            x0 in 0.5f64..2.0,
            y1 in 0.5f64..3.0,
        ) {
            let m = FractalDimension::new(mu_val).unwrap();
            let t = VectorField::from_mapped(
                [
                    MappedExpr::coordinate(1),
                    MappedExpr::monomial(1.0, [1, 1, 0]),
                    MappedExpr::constant(0.4),
                ],
                m,
            );
            let c = ParametricCurve::segment([x0, 1.0, 1.0], [x0 + 1.0, y1, 2.0], m).unwrap();
            let fwd = line_integral(&t, &c, QuadratureSpec::default()).unwrap();
            let bwd = line_integral(&t, &c.reversed(), QuadratureSpec::default()).unwrap();
            proptest::prop_assert!((fwd + bwd).abs() <= 1e-12 * fwd.abs().max(1.0));
        }
    }

    #[test]
    fn budget_error_carries_attempt_count() {
        let m = mu(0.5);
        let mut q = QuadratureSpec::new(32, 8).unwrap();
        q.budget = 1_000_000;
        let one = ScalarField::constant(1.0);
        let bx = BoxDomain::cube(1.0, 2.0, m).unwrap();
        let err = volume_integral(&one, &bx, q).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("quadrature budget exceeded"), "{msg}");
        assert!(msg.contains("16777216"), "{msg}");
    }
}
