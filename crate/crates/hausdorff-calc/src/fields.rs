//! Geometric supports (axis-aligned boxes, rectangles, parametric curves),
//! scalar and vector fields over them, the fractal measure densities, and the
//! Chen partial derivative.

use crate::error::{CalcError, Result};
use crate::fractal::FractalDimension;
use crate::mapped::MappedExpr;
use crate::quad::QuadratureSpec;
use crate::vec3::Point3;
use serde::Serialize;
use std::sync::Arc;

type Fn3 = Arc<dyn Fn(Point3) -> f64 + Send + Sync>;
type Grad3 = Arc<dyn Fn(Point3) -> [f64; 3] + Send + Sync>;

/// Scalar field on (x, y, z).
///
/// Fields built from a [`MappedExpr`] carry exact partial derivatives of every
/// order in the mapped coordinates; closure-built fields may declare an exact
/// classical gradient. Operators fall back to finite differences when no
/// exact data is available.
#[derive(Clone)]
pub struct ScalarField {
    repr: ScalarRepr,
}

#[derive(Clone)]
enum ScalarRepr {
    Mapped {
        expr: MappedExpr,
        grad: Box<[MappedExpr; 3]>,
        hess: Box<[[MappedExpr; 3]; 3]>,
        mu: FractalDimension,
    },
    Custom {
        eval: Fn3,
        grad: Option<Grad3>,
    },
}

impl ScalarField {
    /// Field `expr(x^mu, y^mu, z^mu)`. Exact derivatives are valid for this
    /// `mu` only; operators called with a different dimension fall back to
    /// finite differences.
    pub fn from_mapped(expr: MappedExpr, mu: FractalDimension) -> Self {
        let grad = [expr.diff(0), expr.diff(1), expr.diff(2)];
        let hess = std::array::from_fn(|i| std::array::from_fn(|j| grad[i].diff(j)));
        ScalarField {
            repr: ScalarRepr::Mapped {
                expr,
                grad: Box::new(grad),
                hess: Box::new(hess),
                mu,
            },
        }
    }

    pub fn constant(c: f64) -> Self {
        ScalarField::from_mapped(MappedExpr::constant(c), FractalDimension::CLASSICAL)
    }

    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(Point3) -> f64 + Send + Sync + 'static,
    {
        ScalarField {
            repr: ScalarRepr::Custom {
                eval: Arc::new(f),
                grad: None,
            },
        }
    }

    pub fn from_fn_with_grad<F, G>(f: F, grad: G) -> Self
    where
        F: Fn(Point3) -> f64 + Send + Sync + 'static,
        G: Fn(Point3) -> [f64; 3] + Send + Sync + 'static,
    {
        ScalarField {
            repr: ScalarRepr::Custom {
                eval: Arc::new(f),
                grad: Some(Arc::new(grad)),
            },
        }
    }

    pub fn eval(&self, p: Point3) -> f64 {
        match &self.repr {
            ScalarRepr::Mapped { expr, mu, .. } => {
                expr.eval([mu.map(p[0]), mu.map(p[1]), mu.map(p[2])])
            }
            ScalarRepr::Custom { eval, .. } => eval(p),
        }
    }

    /// Whether the field carries exact derivative data.
    pub fn has_exact_grad(&self) -> bool {
        match &self.repr {
            ScalarRepr::Mapped { .. } => true,
            ScalarRepr::Custom { grad, .. } => grad.is_some(),
        }
    }

    /// Exact classical gradient, when available.
    pub fn exact_classical_grad(&self, p: Point3) -> Option<[f64; 3]> {
        match &self.repr {
            ScalarRepr::Mapped { grad, mu, .. } => {
                let uvw = [mu.map(p[0]), mu.map(p[1]), mu.map(p[2])];
                Some(std::array::from_fn(|i| {
                    grad[i].eval(uvw) * mu.weight(p[i])
                }))
            }
            ScalarRepr::Custom { grad, .. } => grad.as_ref().map(|g| g(p)),
        }
    }

    /// Exact partial with respect to the mapped coordinate of `axis`, when
    /// derivable. For closure fields with a classical gradient this is the
    /// chain rule `g_i / (mu x^(mu-1))`, defined only off the axis planes.
    pub(crate) fn mapped_partial_exact(
        &self,
        axis: usize,
        p: Point3,
        mu: FractalDimension,
    ) -> Option<f64> {
        match &self.repr {
            ScalarRepr::Mapped {
                grad, mu: own_mu, ..
            } => {
                if own_mu.get() != mu.get() {
                    return None;
                }
                let uvw = [mu.map(p[0]), mu.map(p[1]), mu.map(p[2])];
                Some(grad[axis].eval(uvw))
            }
            ScalarRepr::Custom { grad, .. } => {
                let g = grad.as_ref()?(p);
                if mu.is_classical() {
                    return Some(g[axis]);
                }
                if p[axis] <= 0.0 {
                    return None;
                }
                Some(g[axis] / mu.weight(p[axis]))
            }
        }
    }

    /// Exact second mapped partial `d^2 f / d(axis_i^mu) d(axis_j^mu)`,
    /// available for mapped-expression fields only.
    pub(crate) fn mapped_second_exact(
        &self,
        i: usize,
        j: usize,
        p: Point3,
        mu: FractalDimension,
    ) -> Option<f64> {
        match &self.repr {
            ScalarRepr::Mapped {
                hess, mu: own_mu, ..
            } => {
                if own_mu.get() != mu.get() {
                    return None;
                }
                let uvw = [mu.map(p[0]), mu.map(p[1]), mu.map(p[2])];
                Some(hess[i][j].eval(uvw))
            }
            ScalarRepr::Custom { .. } => None,
        }
    }
}

/// Vector field as three scalar components.
#[derive(Clone)]
pub struct VectorField {
    pub components: [ScalarField; 3],
}

impl VectorField {
    pub fn new(components: [ScalarField; 3]) -> Self {
        VectorField { components }
    }

    pub fn from_mapped(exprs: [MappedExpr; 3], mu: FractalDimension) -> Self {
        VectorField {
            components: exprs.map(|e| ScalarField::from_mapped(e, mu)),
        }
    }

    pub fn eval(&self, p: Point3) -> [f64; 3] {
        std::array::from_fn(|i| self.components[i].eval(p))
    }
}

/// Chen partial derivative `df/d(axis^mu)` by central difference in the
/// mapped coordinate of that axis. Uses the field's exact data when present.
pub fn chen_partial(
    f: &ScalarField,
    axis: usize,
    p: Point3,
    mu: FractalDimension,
    step: f64,
) -> Result<f64> {
    if axis > 2 {
        return Err(CalcError::InvalidParameter(format!("axis {axis} out of range")));
    }
    if !(step > 0.0) {
        return Err(CalcError::InvalidParameter("step must be positive".into()));
    }
    let xa = p[axis];
    if xa < 0.0 {
        return Err(CalcError::NegativeAbscissa(xa));
    }
    if xa == 0.0 && !mu.is_classical() {
        return Err(CalcError::SingularOrigin);
    }
    if let Some(d) = f.mapped_partial_exact(axis, p, mu) {
        return Ok(d);
    }
    let w0 = mu.map(xa);
    // Keep the stencil on the positive side of the mapped axis.
    let h = if mu.is_classical() {
        step
    } else {
        step.min(0.5 * w0)
    };
    let mut pp = p;
    let mut pm = p;
    pp[axis] = mu.unmap(w0 + h);
    pm[axis] = mu.unmap(w0 - h);
    let d = (f.eval(pp) - f.eval(pm)) / (2.0 * h);
    if d.is_finite() {
        Ok(d)
    } else {
        Err(CalcError::OutsideDomain(format!(
            "non-finite field value near {p:?}"
        )))
    }
}

/// Axis-aligned box in the nonnegative orthant, carrying its dimension.
#[derive(Debug, Clone, Copy)]
pub struct BoxDomain {
    lo: Point3,
    hi: Point3,
    mu: FractalDimension,
}

impl BoxDomain {
    pub fn new(lo: Point3, hi: Point3, mu: FractalDimension) -> Result<Self> {
        for i in 0..3 {
            if lo[i] < 0.0 {
                return Err(CalcError::NegativeAbscissa(lo[i]));
            }
            if lo[i] >= hi[i] {
                return Err(CalcError::EmptyInterval(lo[i], hi[i]));
            }
        }
        Ok(BoxDomain { lo, hi, mu })
    }

    pub fn cube(lo: f64, hi: f64, mu: FractalDimension) -> Result<Self> {
        Self::new([lo; 3], [hi; 3], mu)
    }

    pub fn lo(&self) -> Point3 {
        self.lo
    }

    pub fn hi(&self) -> Point3 {
        self.hi
    }

    pub fn mu(&self) -> FractalDimension {
        self.mu
    }

    pub fn mapped_bounds(&self, axis: usize) -> (f64, f64) {
        (self.mu.map(self.lo[axis]), self.mu.map(self.hi[axis]))
    }

    pub fn center(&self) -> Point3 {
        std::array::from_fn(|i| 0.5 * (self.lo[i] + self.hi[i]))
    }

    /// Fractal volume: the classical volume of the mapped box.
    pub fn fractal_volume(&self) -> f64 {
        (0..3)
            .map(|i| {
                let (a, b) = self.mapped_bounds(i);
                b - a
            })
            .product()
    }

    /// Splits along `axis` at the physical midpoint.
    pub fn split(&self, axis: usize) -> (BoxDomain, BoxDomain) {
        let mid = 0.5 * (self.lo[axis] + self.hi[axis]);
        let mut hi1 = self.hi;
        hi1[axis] = mid;
        let mut lo2 = self.lo;
        lo2[axis] = mid;
        (
            BoxDomain {
                lo: self.lo,
                hi: hi1,
                mu: self.mu,
            },
            BoxDomain {
                lo: lo2,
                hi: self.hi,
                mu: self.mu,
            },
        )
    }

    /// The six outward-oriented faces.
    pub fn faces(&self) -> [Rectangle; 6] {
        let face = |axis: usize, at_hi: bool| {
            let plane = Plane::perpendicular_to(axis);
            let (a1, a2) = plane.axes();
            Rectangle {
                plane,
                bounds1: (self.lo[a1], self.hi[a1]),
                bounds2: (self.lo[a2], self.hi[a2]),
                fixed: if at_hi { self.hi[axis] } else { self.lo[axis] },
                orientation: if at_hi { 1 } else { -1 },
                mu: self.mu,
            }
        };
        [
            face(0, false),
            face(0, true),
            face(1, false),
            face(1, true),
            face(2, false),
            face(2, true),
        ]
    }
}

/// Coordinate plane of a rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    Xy,
    Yz,
    Xz,
}

impl Plane {
    /// In-plane axes, in ascending index order.
    pub fn axes(self) -> (usize, usize) {
        match self {
            Plane::Xy => (0, 1),
            Plane::Yz => (1, 2),
            Plane::Xz => (0, 2),
        }
    }

    pub fn normal_axis(self) -> usize {
        match self {
            Plane::Xy => 2,
            Plane::Yz => 0,
            Plane::Xz => 1,
        }
    }

    pub fn perpendicular_to(axis: usize) -> Plane {
        match axis {
            0 => Plane::Yz,
            1 => Plane::Xz,
            _ => Plane::Xy,
        }
    }

    /// In-plane axes ordered so that `e_p x e_q` points along the +normal.
    fn right_handed_axes(self) -> (usize, usize) {
        match self {
            Plane::Xy => (0, 1), // x cross y = +z
            Plane::Yz => (1, 2), // y cross z = +x
            Plane::Xz => (2, 0), // z cross x = +y
        }
    }
}

/// Axis-aligned oriented rectangle in a coordinate plane.
#[derive(Debug, Clone, Copy)]
pub struct Rectangle {
    pub plane: Plane,
    /// Bounds along the lower-indexed in-plane axis.
    pub bounds1: (f64, f64),
    /// Bounds along the higher-indexed in-plane axis.
    pub bounds2: (f64, f64),
    pub fixed: f64,
    /// +1 for the +normal_axis normal, -1 for the opposite.
    pub orientation: i8,
    pub mu: FractalDimension,
}

impl Rectangle {
    pub fn new(
        plane: Plane,
        bounds1: (f64, f64),
        bounds2: (f64, f64),
        fixed: f64,
        orientation: i8,
        mu: FractalDimension,
    ) -> Result<Self> {
        for (a, b) in [bounds1, bounds2] {
            if a < 0.0 {
                return Err(CalcError::NegativeAbscissa(a));
            }
            if a >= b {
                return Err(CalcError::EmptyInterval(a, b));
            }
        }
        if fixed < 0.0 {
            return Err(CalcError::NegativeAbscissa(fixed));
        }
        if orientation != 1 && orientation != -1 {
            return Err(CalcError::InvalidParameter(
                "orientation must be +1 or -1".into(),
            ));
        }
        Ok(Rectangle {
            plane,
            bounds1,
            bounds2,
            fixed,
            orientation,
            mu,
        })
    }

    pub fn unit_normal(&self) -> [f64; 3] {
        let mut n = [0.0; 3];
        n[self.plane.normal_axis()] = self.orientation as f64;
        n
    }

    pub fn flipped(&self) -> Rectangle {
        Rectangle {
            orientation: -self.orientation,
            ..*self
        }
    }

    /// Bounds along a given in-plane axis index.
    fn bounds_for_axis(&self, axis: usize) -> (f64, f64) {
        let (a1, _) = self.plane.axes();
        if axis == a1 {
            self.bounds1
        } else {
            self.bounds2
        }
    }

    /// Fractal area: the classical area of the mapped rectangle.
    pub fn fractal_area(&self) -> f64 {
        let (a1, a2) = self.plane.axes();
        let (p, q) = (self.bounds_for_axis(a1), self.bounds_for_axis(a2));
        (self.mu.map(p.1) - self.mu.map(p.0)) * (self.mu.map(q.1) - self.mu.map(q.0))
    }

    pub fn corner(&self) -> Point3 {
        let (a1, a2) = self.plane.axes();
        let mut p = [self.fixed; 3];
        p[a1] = self.bounds1.0;
        p[a2] = self.bounds2.0;
        p
    }

    /// The four boundary edges, traversed consistently with the normal by the
    /// right-hand rule.
    pub fn boundary_edges(&self) -> [ParametricCurve; 4] {
        let (p_axis, q_axis) = self.plane.right_handed_axes();
        let (pa, pb) = self.bounds_for_axis(p_axis);
        let (qa, qb) = self.bounds_for_axis(q_axis);
        let corner = |pv: f64, qv: f64| {
            let mut pt = [self.fixed; 3];
            pt[p_axis] = pv;
            pt[q_axis] = qv;
            pt
        };
        let (c00, c10, c11, c01) = (
            corner(pa, qa),
            corner(pb, qa),
            corner(pb, qb),
            corner(pa, qb),
        );
        let seg = |from: Point3, to: Point3| {
            ParametricCurve::segment(from, to, self.mu).expect("edges of a valid rectangle")
        };
        if self.orientation == 1 {
            [seg(c00, c10), seg(c10, c11), seg(c11, c01), seg(c01, c00)]
        } else {
            [seg(c00, c01), seg(c01, c11), seg(c11, c10), seg(c10, c00)]
        }
    }
}

type Fn1 = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Smooth parametric curve with classical component derivatives.
#[derive(Clone)]
pub struct ParametricCurve {
    components: [Fn1; 3],
    derivatives: [Fn1; 3],
    range: (f64, f64),
    closed: bool,
    mu: FractalDimension,
}

impl ParametricCurve {
    pub fn new(
        components: [Fn1; 3],
        derivatives: [Fn1; 3],
        range: (f64, f64),
        closed: bool,
        mu: FractalDimension,
    ) -> Result<Self> {
        if !(range.0 < range.1) {
            return Err(CalcError::EmptyInterval(range.0, range.1));
        }
        if closed {
            for i in 0..3 {
                let gap = (components[i](range.0) - components[i](range.1)).abs();
                if gap > 1e-12 {
                    return Err(CalcError::InvalidParameter(format!(
                        "closed curve endpoints differ by {gap} in component {i}"
                    )));
                }
            }
        }
        Ok(ParametricCurve {
            components,
            derivatives,
            range,
            closed,
            mu,
        })
    }

    /// Straight segment from `a` to `b`, parametrized on [0, 1].
    pub fn segment(a: Point3, b: Point3, mu: FractalDimension) -> Result<Self> {
        let comp = |i: usize| -> Fn1 {
            let (ai, bi) = (a[i], b[i]);
            Arc::new(move |s| ai + s * (bi - ai))
        };
        let deriv = |i: usize| -> Fn1 {
            let d = b[i] - a[i];
            Arc::new(move |_| d)
        };
        Self::new(
            [comp(0), comp(1), comp(2)],
            [deriv(0), deriv(1), deriv(2)],
            (0.0, 1.0),
            false,
            mu,
        )
    }

    pub fn range(&self) -> (f64, f64) {
        self.range
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn mu(&self) -> FractalDimension {
        self.mu
    }

    pub fn point(&self, s: f64) -> Point3 {
        std::array::from_fn(|i| self.components[i](s))
    }

    pub fn velocity(&self, s: f64) -> [f64; 3] {
        std::array::from_fn(|i| self.derivatives[i](s))
    }

    /// Same trace, opposite direction.
    pub fn reversed(&self) -> ParametricCurve {
        let (t0, t1) = self.range;
        let comp = |i: usize| -> Fn1 {
            let f = self.components[i].clone();
            Arc::new(move |s| f(t0 + t1 - s))
        };
        let deriv = |i: usize| -> Fn1 {
            let d = self.derivatives[i].clone();
            Arc::new(move |s| -d(t0 + t1 - s))
        };
        ParametricCurve {
            components: [comp(0), comp(1), comp(2)],
            derivatives: [deriv(0), deriv(1), deriv(2)],
            range: self.range,
            closed: self.closed,
            mu: self.mu,
        }
    }
}

/// Hausdorff arc length: the integral of `|dl|` with the fractal line element,
/// equal to the classical arc length of the mapped curve.
pub fn arc_length(curve: &ParametricCurve, quad: QuadratureSpec) -> Result<f64> {
    quad.check_budget(1)?;
    let mu = curve.mu();
    let rule = quad.rule();
    let (t0, t1) = curve.range();
    let mut failure: Option<f64> = None;
    let value = crate::quad::composite(&rule, t0, t1, quad.panels, |s| {
        let p = curve.point(s);
        let v = curve.velocity(s);
        let mut sq = 0.0;
        for i in 0..3 {
            let d = mu.weight(p[i]) * v[i];
            sq += d * d;
        }
        let val = sq.sqrt();
        if !val.is_finite() && failure.is_none() {
            failure = Some(s);
        }
        val
    });
    if let Some(s) = failure {
        return Err(CalcError::SingularCurvePoint(s));
    }
    Ok(value)
}

/// Volume density of the fractal measure relative to the classical one,
/// `mu^3 (xyz)^(mu-1)`.
pub fn volume_density(mu: FractalDimension, p: Point3) -> Result<f64> {
    let mut d = 1.0;
    for &c in &p {
        if c <= 0.0 && !mu.is_classical() {
            return Err(CalcError::SingularMeasure);
        }
        d *= mu.weight(c);
    }
    Ok(d)
}

/// Surface density `mu^2 (ab)^(mu-1)` in the two in-plane coordinates.
pub fn surface_density(plane: Plane, mu: FractalDimension, p: Point3) -> Result<f64> {
    let (a1, a2) = plane.axes();
    let mut d = 1.0;
    for axis in [a1, a2] {
        if p[axis] <= 0.0 && !mu.is_classical() {
            return Err(CalcError::SingularMeasure);
        }
        d *= mu.weight(p[axis]);
    }
    Ok(d)
}

/// Line density along the curve direction at parameter `s`: `|dl| / |dr|`.
pub fn line_density(curve: &ParametricCurve, s: f64) -> Result<f64> {
    let mu = curve.mu();
    let p = curve.point(s);
    let v = curve.velocity(s);
    let mut fractal_sq = 0.0;
    let mut classical_sq = 0.0;
    for i in 0..3 {
        let d = mu.weight(p[i]) * v[i];
        fractal_sq += d * d;
        classical_sq += v[i] * v[i];
    }
    let density = (fractal_sq / classical_sq).sqrt();
    if density.is_finite() {
        Ok(density)
    } else {
        Err(CalcError::SingularCurvePoint(s))
    }
}
