//! Numerical Hausdorff (fractal) calculus.
//!
//! The crate implements the Chen Hausdorff calculus in one dimension
//! (derivative, integral, algebraic rules, fundamental theorems, closed-form
//! tables), the fractal vector operators under two component conventions,
//! integrals against fractal measures over boxes, rectangles, and curves, a
//! verification harness for the Gauss-, Stokes-, and Green-like integral
//! identities, flow-layer operators for the fractal power-law momentum
//! system, and explicit 1-D solvers for the anomalous diffusion and fractal
//! Burgers equations.
//!
//! The organizing principle: in the mapped coordinates `w = t^mu` (and
//! `u = x^mu`, `v = y^mu` in space) every Hausdorff operator and fractal
//! measure is classical. All numerics run there; the prefactored "physical"
//! operator convention is kept alongside the mapped one so the identities
//! can be checked, and falsified, under both readings.

pub mod chen;
pub mod corpus;
pub mod errata;
pub mod error;
pub mod fields;
pub mod flow;
pub mod fractal;
pub mod func1d;
pub mod integrals;
pub mod mapped;
pub mod quad;
pub mod solver;
pub mod suite;
pub mod table;
pub mod theorems;
pub mod vec3;
pub mod vecops;

pub use chen::{
    chen_derivative, chen_integral, chen_integral_with, check_rule, check_rule_detailed,
    fundamental_theorem_residuals, kww, mean_value_point, net_change_residual, DerivMethod,
    KwwMode, RuleId,
};
pub use errata::{errata_ledger, ErrataItem};
pub use error::{CalcError, Result};
pub use fields::{
    arc_length, chen_partial, line_density, surface_density, volume_density, BoxDomain,
    ParametricCurve, Plane, Rectangle, ScalarField, VectorField,
};
pub use flow::{
    continuity_residual, material_derivative, momentum_residual, stress_tensor, FlowState,
    MomentumResidual, SpacetimeScalar, SpacetimeVector,
};
pub use fractal::FractalDimension;
pub use func1d::Function1d;
pub use integrals::{
    double_integral, flux_closed, line_integral, line_integral_chain, surface_integral,
    volume_integral, Surface,
};
pub use mapped::{MappedExpr, MappedSeries, SepTerm, Unary};
pub use quad::QuadratureSpec;
pub use solver::{
    solve_anomalous_diffusion, solve_fractal_burgers, Boundary1d, CflCertificate, Grid1dSolution,
    Snapshot, SolverConfig, SourceFn, TimeStep,
};
pub use suite::{all_asserted_pass, run_verification_suite, SuiteConfig, SuiteEntry};
pub use table::{
    closed_form_residual, eq37_literal_gap, seeded_samples, table_cases, TableCase, TableKind,
    TableParams,
};
pub use theorems::{
    curl_circulation_quotient, divergence_flux_quotient, gauss_like, green_identity, green_like,
    order_from_errors, stokes_like, transport_identity_check, with_refinement, GreenIdentityKind,
    TheoremReport,
};
pub use vecops::{
    curl, directional_derivative, divergence, gradient, laplace_chen, product_identities_check,
    Convention, LaplacianForm,
};
