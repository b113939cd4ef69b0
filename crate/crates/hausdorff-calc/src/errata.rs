//! Machine-checked errata: statements of the source formulation whose literal
//! form fails numerically, each with the adopted reading and a reproducible
//! witness value.
//!
//! Witnesses are computed, not quoted: each item evaluates the literal and
//! the adopted reading on a concrete input and reports the gap. Items whose
//! gap is an artifact of `mu < 1` carry `vanishes_classically = true`; the
//! antiderivative misprint (`eq37`) and the repeated-partial misprint
//! (`eq42_43`) persist at `mu = 1`.

use crate::error::Result;
use crate::fields::{
    arc_length, BoxDomain, ParametricCurve, Plane, Rectangle, ScalarField, VectorField,
};
use crate::fractal::FractalDimension;
use crate::mapped::MappedExpr;
use crate::quad::QuadratureSpec;
use crate::table::eq37_literal_gap;
use crate::theorems::{gauss_like, green_like, stokes_like};
use crate::vecops::{laplace_chen, mapped_partial, Convention, LaplacianForm};
use serde::Serialize;

/// One errata entry: where, what the text says, what is adopted instead, and
/// a numerical witness of the gap.
#[derive(Debug, Clone, Serialize)]
pub struct ErrataItem {
    pub id: String,
    pub location: String,
    pub literal_reading: String,
    pub adopted_reading: String,
    pub mu: f64,
    pub witness: f64,
    pub witness_description: String,
    pub vanishes_classically: bool,
}

/// Builds the ledger at one dimension. Sample abscissae for the pointwise
/// witnesses are fixed, so the ledger is deterministic.
pub fn errata_ledger(mu: FractalDimension, quad: QuadratureSpec) -> Result<Vec<ErrataItem>> {
    let mut items = Vec::new();
    let samples = [0.8, 1.0, 1.6, 2.4];

    // eq37: antiderivative of the stretched exponential.
    let beta = 2.0;
    items.push(ErrataItem {
        id: "eq37".into(),
        location: "eq. 37".into(),
        literal_reading: "integral of exp(b t^mu) is b exp(b t^mu) + C".into(),
        adopted_reading: "integral of exp(b t^mu) is (1/b) exp(b t^mu) + C".into(),
        mu: mu.get(),
        witness: eq37_literal_gap(mu, beta, &samples)?,
        witness_description: format!(
            "max pointwise gap |b - 1/b| exp(b t^mu) between the two antiderivatives at b = {beta}"
        ),
        vanishes_classically: false,
    });

    // eq42/eq43: the y and z Chen partials printed with the x-form.
    // psi = x^mu y^(2 mu): literal d_y returns v^2, adopted returns 2uv.
    let psi = ScalarField::from_mapped(MappedExpr::monomial(1.0, [1, 2, 0]), mu);
    let p = [1.0, 9.0, 2.0];
    let literal = mapped_partial(&psi, 0, p, mu)?; // x-form applied in place of d_y
    let adopted = mapped_partial(&psi, 1, p, mu)?;
    items.push(ErrataItem {
        id: "eq42_43".into(),
        location: "eq. 42-43".into(),
        literal_reading: "y and z partials repeat the x-coordinate operator (x^(1-mu)/mu) d/dx".into(),
        adopted_reading: "each axis differentiates its own coordinate: d/d(y^mu), d/d(z^mu)".into(),
        mu: mu.get(),
        witness: (literal - adopted).abs(),
        witness_description:
            "gap between the literal and adopted y-partial of x^mu y^(2mu) at (1, 9, 2)".into(),
        vanishes_classically: false,
    });

    // eq50: the pure second-order form versus the composed operator.
    let power = ScalarField::from_mapped(MappedExpr::monomial(1.0, [2, 0, 0]), mu);
    let gp = [2.0, 1.5, 1.5];
    let composed = laplace_chen(&power, gp, mu, LaplacianForm::Composed, Convention::Physical)?;
    let second = laplace_chen(&power, gp, mu, LaplacianForm::SecondOrder, Convention::Physical)?;
    items.push(ErrataItem {
        id: "eq50".into(),
        location: "eq. 50 (second equality)".into(),
        literal_reading:
            "(x^(mu-1) d/d(x^mu))^2 rewritten as the pure second-order x^(2mu-2) d^2/d(x^mu)^2"
                .into(),
        adopted_reading:
            "the composed operator div(grad) keeps its first-order terms; both forms are exposed"
                .into(),
        mu: mu.get(),
        witness: (composed - second).abs(),
        witness_description:
            "|composed - second_order| on x^(2mu) at x = 2, analytically |2mu(2mu-1) - 2mu^2| x^(2mu-2)"
                .into(),
        vanishes_classically: true,
    });

    // eq57: the arc-length formula omits the overall factor mu of the line
    // element.
    let seg = ParametricCurve::segment([1.0, 2.0, 2.0], [4.0, 2.0, 2.0], mu)?;
    let with_factor = arc_length(&seg, quad)?;
    let literal_len = with_factor / mu.get();
    items.push(ErrataItem {
        id: "eq57".into(),
        location: "eq. 57".into(),
        literal_reading: "arc length integrand sqrt(sum x^(2mu-2) (dx/dt)^2) without the factor mu".into(),
        adopted_reading: "arc length is the integral of |dl|, which carries the factor mu".into(),
        mu: mu.get(),
        witness: (with_factor - literal_len).abs(),
        witness_description:
            "length gap on the segment x: 1 -> 4 at constant y = z = 2; literal form is 1/mu times larger"
                .into(),
        vanishes_classically: true,
    });

    // eq77: all three operator slots of the curl determinant print x^(mu-1).
    let w_field = VectorField::from_mapped(
        [
            MappedExpr::zero(),
            MappedExpr::zero(),
            MappedExpr::monomial(1.0, [0, 2, 0]),
        ],
        mu,
    );
    let cp = [1.0, 4.0, 2.0];
    // x-component of the curl: row prefactor applied to d W_z / d(y^mu).
    let dwz_dv = mapped_partial(&w_field.components[2], 1, cp, mu)?;
    let literal_curl_x = mu.weight(cp[0]) * dwz_dv;
    let adopted_curl_x = mu.weight(cp[1]) * dwz_dv;
    items.push(ErrataItem {
        id: "eq77".into(),
        location: "eq. 77".into(),
        literal_reading: "curl determinant row carries mu x^(mu-1) in all three slots".into(),
        adopted_reading: "row prefactors follow their axes: mu x^(mu-1), mu y^(mu-1), mu z^(mu-1)".into(),
        mu: mu.get(),
        witness: (literal_curl_x - adopted_curl_x).abs(),
        witness_description:
            "gap in the physical curl x-component of W = (0, 0, y^(2mu)) at (1, 4, 2)".into(),
        vanishes_classically: true,
    });

    // Flux-identity pairings: physical-convention operators against fractal
    // measures fail for mu < 1.
    let radial = VectorField::from_mapped(
        [
            MappedExpr::coordinate(0),
            MappedExpr::coordinate(1),
            MappedExpr::coordinate(2),
        ],
        mu,
    );
    let bx = BoxDomain::cube(1.0, 16.0, mu)?;
    let gauss = gauss_like(&radial, &bx, Convention::Physical, quad)?;
    items.push(ErrataItem {
        id: "gauss_pairing".into(),
        location: "eq. 79-80".into(),
        literal_reading:
            "divergence with classical-partial components paired with the fractal volume and surface measures"
                .into(),
        adopted_reading: "mapped-coordinate components make the identity exact".into(),
        mu: mu.get(),
        witness: gauss.abs_residual,
        witness_description: format!(
            "|lhs - rhs| for W = (x^mu, y^mu, z^mu) on [1,16]^3: lhs {:.6}, rhs {:.6}",
            gauss.lhs, gauss.rhs
        ),
        vanishes_classically: true,
    });

    let planar = VectorField::from_mapped(
        [MappedExpr::zero(), MappedExpr::coordinate(0), MappedExpr::zero()],
        mu,
    );
    let rect = Rectangle::new(Plane::Xy, (1.0, 4.0), (1.0, 9.0), 2.0, 1, mu)?;
    let stokes = stokes_like(&planar, &rect, Convention::Physical, quad)?;
    items.push(ErrataItem {
        id: "stokes_pairing".into(),
        location: "eq. 82-83".into(),
        literal_reading: "curl with classical-partial components paired with the fractal surface measure".into(),
        adopted_reading: "mapped-coordinate components make the identity exact".into(),
        mu: mu.get(),
        witness: stokes.abs_residual,
        witness_description: format!(
            "|lhs - rhs| for W = (0, x^mu, 0) on x in [1,4], y in [1,9]: lhs {:.6}, rhs {:.6}",
            stokes.lhs, stokes.rhs
        ),
        vanishes_classically: true,
    });

    let green = green_like(&planar, &rect, Convention::Physical, quad)?;
    items.push(ErrataItem {
        id: "green_pairing".into(),
        location: "eq. 87-88".into(),
        literal_reading: "planar curl with classical-partial components against the fractal area measure".into(),
        adopted_reading: "mapped-coordinate components make the identity exact".into(),
        mu: mu.get(),
        witness: green.abs_residual,
        witness_description: format!(
            "|lhs - rhs| for T = (0, x^mu) on x in [1,4], y in [1,9]: lhs {:.6}, rhs {:.6}",
            green.lhs, green.rhs
        ),
        vanishes_classically: true,
    });

    Ok(items)
}
