//! Explicit solvers for the 1-D anomalous diffusion and fractal Burgers
//! equations.
//!
//! The grid is uniform in the mapped coordinate `u = x^mu`, where the
//! fractal second derivative is the plain `d^2/du^2`; the variable physical
//! coefficients `mu^2 x^(2mu-2)` and `mu x^(mu-1)` are evaluated exactly at
//! the node positions `x = u^(1/mu)`. Time integration is classical RK4 under
//! a combined advective/diffusive step bound with safety factor 0.4. Source
//! terms exist to support manufactured-solution verification; the source-free
//! mode is the governing equation itself.

use crate::error::{CalcError, Result};
use crate::fractal::FractalDimension;
use crate::func1d::Function1d;
use serde::Serialize;
use std::sync::Arc;

pub type BoundaryFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type SourceFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Boundary conditions for the 1-D solvers.
#[derive(Clone)]
pub enum Boundary1d {
    /// Prescribed values at both ends, as functions of time.
    Dirichlet { left: BoundaryFn, right: BoundaryFn },
    /// Zero derivative in the mapped coordinate at both ends (mirror ghosts).
    Reflective,
}

impl Boundary1d {
    pub fn dirichlet_const(left: f64, right: f64) -> Self {
        Boundary1d::Dirichlet {
            left: Arc::new(move |_| left),
            right: Arc::new(move |_| right),
        }
    }

    pub fn dirichlet<L, R>(left: L, right: R) -> Self
    where
        L: Fn(f64) -> f64 + Send + Sync + 'static,
        R: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Boundary1d::Dirichlet {
            left: Arc::new(left),
            right: Arc::new(right),
        }
    }
}

/// Time-step selection.
#[derive(Debug, Clone, Copy)]
pub enum TimeStep {
    /// `dt = safety * min(diffusive bound, advective bound)`, re-evaluated
    /// each step from the current state.
    Auto { safety: f64 },
    /// Fixed step, validated against the stability bound.
    Fixed(f64),
}

impl Default for TimeStep {
    fn default() -> Self {
        TimeStep::Auto { safety: 0.4 }
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub mu: FractalDimension,
    pub domain: (f64, f64),
    pub nodes: usize,
    /// Diffusivity.
    pub theta: f64,
    pub t_end: f64,
    pub time_step: TimeStep,
    /// Times at which to record snapshots; the final time is always recorded.
    pub snapshot_times: Vec<f64>,
}

/// Stability certificate stored with every solution.
#[derive(Debug, Clone, Serialize)]
pub struct CflCertificate {
    /// Nominal step selected at start.
    pub dt: f64,
    /// `du^2 / (2 max theta mu^2 x^(2mu-2))` from the initial data.
    pub diffusive_bound: f64,
    /// `du / max |v mu x^(mu-1)|` from the initial data (infinite when the
    /// advective speed vanishes).
    pub advective_bound: f64,
    pub safety: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Snapshot {
    pub time: f64,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Grid1dSolution {
    pub mu: f64,
    pub domain: (f64, f64),
    pub nodes: usize,
    /// Node positions in the mapped coordinate (uniform spacing).
    pub mapped_coords: Vec<f64>,
    /// Physical node positions `x = u^(1/mu)`.
    pub coords: Vec<f64>,
    pub cfl: CflCertificate,
    pub steps: usize,
    pub snapshots: Vec<Snapshot>,
}

impl Grid1dSolution {
    pub fn mapped_spacing(&self) -> f64 {
        self.mapped_coords[1] - self.mapped_coords[0]
    }

    /// Fractal mass `mu int v x^(mu-1) dx = int v du` of a snapshot,
    /// by the trapezoid rule on the uniform mapped grid.
    pub fn fractal_mass(&self, snapshot: &Snapshot) -> f64 {
        let du = self.mapped_spacing();
        let inner: f64 = snapshot.values[1..snapshot.values.len() - 1].iter().sum();
        du * (inner + 0.5 * (snapshot.values[0] + snapshot.values[snapshot.values.len() - 1]))
    }

    /// Discrete L2 error against a reference profile of the physical
    /// coordinate, in the mapped-grid norm.
    pub fn l2_error(&self, snapshot: &Snapshot, reference: impl Fn(f64) -> f64) -> f64 {
        let du = self.mapped_spacing();
        let sum: f64 = snapshot
            .values
            .iter()
            .zip(&self.coords)
            .map(|(&v, &x)| {
                let d = v - reference(x);
                d * d
            })
            .sum();
        (du * sum).sqrt()
    }

    pub fn final_snapshot(&self) -> &Snapshot {
        self.snapshots.last().expect("at least the final time is recorded")
    }
}

enum EquationKind {
    Diffusion,
    Burgers,
}

/// Linear anomalous diffusion `d_t v = theta mu^2 x^(2mu-2) d^2 v/du^2 + q`.
pub fn solve_anomalous_diffusion(
    initial: &Function1d,
    boundary: &Boundary1d,
    cfg: &SolverConfig,
    source: Option<&SourceFn>,
) -> Result<Grid1dSolution> {
    solve(EquationKind::Diffusion, initial, boundary, cfg, source)
}

/// Fractal Burgers `d_t v + v mu x^(mu-1) d v/du = theta mu^2 x^(2mu-2) d^2 v/du^2 + q`.
pub fn solve_fractal_burgers(
    initial: &Function1d,
    boundary: &Boundary1d,
    cfg: &SolverConfig,
    source: Option<&SourceFn>,
) -> Result<Grid1dSolution> {
    solve(EquationKind::Burgers, initial, boundary, cfg, source)
}

fn solve(
    kind: EquationKind,
    initial: &Function1d,
    boundary: &Boundary1d,
    cfg: &SolverConfig,
    source: Option<&SourceFn>,
) -> Result<Grid1dSolution> {
    let (a, b) = cfg.domain;
    let mu = cfg.mu;
    if a < 0.0 {
        return Err(CalcError::NegativeAbscissa(a));
    }
    if a == 0.0 && !mu.is_classical() {
        return Err(CalcError::SingularDiffusion);
    }
    if a >= b {
        return Err(CalcError::EmptyInterval(a, b));
    }
    if cfg.nodes < 3 {
        return Err(CalcError::InvalidParameter(
            "solver needs at least 3 nodes".into(),
        ));
    }
    if !(cfg.theta > 0.0) {
        return Err(CalcError::InvalidParameter(
            "diffusivity must be positive".into(),
        ));
    }
    if !(cfg.t_end > 0.0) {
        return Err(CalcError::InvalidParameter(
            "final time must be positive".into(),
        ));
    }

    let n = cfg.nodes;
    let (ua, ub) = (mu.map(a), mu.map(b));
    let du = (ub - ua) / (n - 1) as f64;
    let mapped: Vec<f64> = (0..n).map(|i| ua + i as f64 * du).collect();
    let coords: Vec<f64> = mapped.iter().map(|&u| mu.unmap(u)).collect();
    // Diffusion coefficient theta mu^2 x^(2mu-2) and advective weight mu x^(mu-1).
    let diff_coef: Vec<f64> = coords
        .iter()
        .map(|&x| {
            let w = mu.weight(x);
            cfg.theta * w * w
        })
        .collect();
    let adv_weight: Vec<f64> = coords.iter().map(|&x| mu.weight(x)).collect();

    let mut v: Vec<f64> = coords.iter().map(|&x| initial.eval(x)).collect();
    if let Boundary1d::Dirichlet { left, right } = boundary {
        v[0] = left(0.0);
        v[n - 1] = right(0.0);
    }

    let max_diff = diff_coef.iter().cloned().fold(0.0f64, f64::max);
    let diffusive_bound = du * du / (2.0 * max_diff);
    let advective_speed = |v: &[f64]| -> f64 {
        match kind {
            EquationKind::Diffusion => 0.0,
            EquationKind::Burgers => v
                .iter()
                .zip(&adv_weight)
                .map(|(&vi, &w)| (vi * w).abs())
                .fold(0.0f64, f64::max),
        }
    };
    let bound_for = |v: &[f64]| -> f64 {
        let s = advective_speed(v);
        if s > 0.0 {
            diffusive_bound.min(du / s)
        } else {
            diffusive_bound
        }
    };
    let initial_adv = advective_speed(&v);
    let advective_bound = if initial_adv > 0.0 {
        du / initial_adv
    } else {
        f64::INFINITY
    };

    let (dt_nominal, safety) = match cfg.time_step {
        TimeStep::Auto { safety } => {
            if !(safety > 0.0 && safety <= 1.0) {
                return Err(CalcError::InvalidParameter(
                    "safety factor must lie in (0, 1]".into(),
                ));
            }
            (safety * bound_for(&v), safety)
        }
        TimeStep::Fixed(dt) => {
            if !(dt > 0.0) {
                return Err(CalcError::InvalidParameter(
                    "time step must be positive".into(),
                ));
            }
            let bound = bound_for(&v);
            if dt > bound {
                return Err(CalcError::CflViolation { dt, bound });
            }
            (dt, dt / bound)
        }
    };

    let certificate = CflCertificate {
        dt: dt_nominal,
        diffusive_bound,
        advective_bound,
        safety,
    };

    // Semi-discrete right-hand side on the mapped grid.
    let rhs = |t: f64, y: &[f64], out: &mut [f64]| {
        let get = |i: isize| -> f64 {
            // Mirror ghosts for reflective boundaries.
            if i < 0 {
                y[(-i) as usize]
            } else if i as usize >= n {
                y[2 * (n - 1) - i as usize]
            } else {
                y[i as usize]
            }
        };
        let interior = match boundary {
            Boundary1d::Dirichlet { .. } => 1..n - 1,
            Boundary1d::Reflective => 0..n,
        };
        for i in 0..n {
            out[i] = 0.0;
        }
        for i in interior {
            let ii = i as isize;
            let lap = (get(ii - 1) - 2.0 * y[i] + get(ii + 1)) / (du * du);
            let mut d = diff_coef[i] * lap;
            if let EquationKind::Burgers = kind {
                let speed = y[i] * adv_weight[i];
                // Upwind-biased second-order slope; central fallback next to
                // the boundary on the upwind side.
                let slope = if speed >= 0.0 {
                    if i >= 2 {
                        (3.0 * y[i] - 4.0 * y[i - 1] + get(ii - 2)) / (2.0 * du)
                    } else {
                        (get(ii + 1) - get(ii - 1)) / (2.0 * du)
                    }
                } else if i + 2 < n {
                    (-3.0 * y[i] + 4.0 * y[i + 1] - get(ii + 2)) / (2.0 * du)
                } else {
                    (get(ii + 1) - get(ii - 1)) / (2.0 * du)
                };
                d -= speed * slope;
            }
            if let Some(q) = source {
                d += q(t, coords[i]);
            }
            out[i] = d;
        }
    };

    let apply_boundary = |t: f64, y: &mut [f64]| {
        if let Boundary1d::Dirichlet { left, right } = boundary {
            y[0] = left(t);
            y[n - 1] = right(t);
        }
    };

    // Snapshot schedule: requested times plus the final time, deduplicated.
    let mut stops: Vec<f64> = cfg
        .snapshot_times
        .iter()
        .cloned()
        .filter(|&t| t > 0.0 && t <= cfg.t_end)
        .chain(std::iter::once(cfg.t_end))
        .collect();
    stops.sort_by(|x, y| x.partial_cmp(y).expect("finite snapshot times"));
    stops.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * cfg.t_end);

    let mut snapshots = Vec::with_capacity(stops.len() + 1);
    if cfg.snapshot_times.contains(&0.0) {
        snapshots.push(Snapshot {
            time: 0.0,
            values: v.clone(),
        });
    }

    let mut t = 0.0;
    let mut steps = 0usize;
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut stage = vec![0.0; n];

    for &stop in &stops {
        while t < stop - 1e-14 * cfg.t_end {
            let bound = match cfg.time_step {
                TimeStep::Auto { safety } => safety * bound_for(&v),
                TimeStep::Fixed(dt) => {
                    let b = bound_for(&v);
                    if dt > b {
                        return Err(CalcError::CflViolation { dt, bound: b });
                    }
                    dt
                }
            };
            let dt = bound.min(stop - t);

            apply_boundary(t, &mut v);
            rhs(t, &v, &mut k1);
            for i in 0..n {
                stage[i] = v[i] + 0.5 * dt * k1[i];
            }
            apply_boundary(t + 0.5 * dt, &mut stage);
            rhs(t + 0.5 * dt, &stage, &mut k2);
            for i in 0..n {
                stage[i] = v[i] + 0.5 * dt * k2[i];
            }
            apply_boundary(t + 0.5 * dt, &mut stage);
            rhs(t + 0.5 * dt, &stage, &mut k3);
            for i in 0..n {
                stage[i] = v[i] + dt * k3[i];
            }
            apply_boundary(t + dt, &mut stage);
            rhs(t + dt, &stage, &mut k4);
            for i in 0..n {
                v[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
            t += dt;
            apply_boundary(t, &mut v);
            steps += 1;

            let max_now = v.iter().cloned().fold(0.0f64, |m, x| m.max(x.abs()));
            if max_now > 1e6 {
                return Err(CalcError::SolutionOverflow(t));
            }
            if steps > 50_000_000 {
                return Err(CalcError::InvalidParameter(
                    "step budget exhausted; final time unreachable".into(),
                ));
            }
        }
        snapshots.push(Snapshot {
            time: stop,
            values: v.clone(),
        });
    }

    Ok(Grid1dSolution {
        mu: mu.get(),
        domain: cfg.domain,
        nodes: n,
        mapped_coords: mapped,
        coords,
        cfl: certificate,
        steps,
        snapshots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn mu(v: f64) -> FractalDimension {
        FractalDimension::new(v).unwrap()
    }

    fn heat_config(nodes: usize) -> SolverConfig {
        SolverConfig {
            mu: mu(1.0),
            domain: (0.0, 1.0),
            nodes,
            theta: 1.0,
            t_end: 0.1,
            time_step: TimeStep::default(),
            snapshot_times: vec![],
        }
    }

    #[test]
    fn classical_heat_eigenmode() {
        let initial = Function1d::new((0.0, 1.0), |x| (PI * x).sin()).unwrap();
        let boundary = Boundary1d::dirichlet_const(0.0, 0.0);
        let sol =
            solve_anomalous_diffusion(&initial, &boundary, &heat_config(200), None).unwrap();
        let snap = sol.final_snapshot();
        let decay = (-PI * PI * 0.1).exp();
        let err = sol.l2_error(snap, |x| decay * (PI * x).sin());
        assert!(err <= 1e-3, "L2 error {err}");
    }

    #[test]
    fn constant_state_is_equilibrium() {
        let initial = Function1d::new((0.0, 10.0), |_| 2.75).unwrap();
        let boundary = Boundary1d::dirichlet_const(2.75, 2.75);
        let cfg = SolverConfig {
            mu: mu(0.5),
            domain: (1.0, 4.0),
            nodes: 51,
            theta: 0.7,
            t_end: 0.5,
            time_step: TimeStep::default(),
            snapshot_times: vec![0.25],
        };
        for solve_fn in [solve_anomalous_diffusion, solve_fractal_burgers] {
            let sol = solve_fn(&initial, &boundary, &cfg, None).unwrap();
            for snap in &sol.snapshots {
                for &v in &snap.values {
                    assert!((v - 2.75).abs() <= 1e-12, "drift {v}");
                }
            }
        }
    }

    #[test]
    fn diffusion_manufactured_solution_second_order() {
        // v*(t, x) = exp(-t) sin(x^mu) on [1, 4] at mu = 1/2.
        let m = mu(0.5);
        let theta = 0.8;
        let exact = move |t: f64, x: f64| (-t as f64).exp() * m.map(x).sin();
        let source: SourceFn = Arc::new(move |t, x| {
            let u = m.map(x);
            let w = m.weight(x);
            // d_t v* - theta mu^2 x^(2mu-2) d^2 v*/du^2
            -(-t as f64).exp() * u.sin() + theta * w * w * (-t as f64).exp() * u.sin()
        });
        let mut errors = Vec::new();
        let mut spacings = Vec::new();
        for nodes in [26usize, 51, 101] {
            let initial = Function1d::new((0.0, 10.0), move |x| exact(0.0, x)).unwrap();
            let boundary = Boundary1d::dirichlet(
                move |t| exact(t, 1.0),
                move |t| exact(t, 4.0),
            );
            let cfg = SolverConfig {
                mu: m,
                domain: (1.0, 4.0),
                nodes,
                theta,
                t_end: 0.25,
                time_step: TimeStep::default(),
                snapshot_times: vec![],
            };
            let sol = solve_anomalous_diffusion(&initial, &boundary, &cfg, Some(&source)).unwrap();
            errors.push(sol.l2_error(sol.final_snapshot(), |x| exact(0.25, x)));
            spacings.push(sol.mapped_spacing());
        }
        for k in 0..errors.len() - 1 {
            let ratio = errors[k] / errors[k + 1];
            assert!(
                (3.6..=4.4).contains(&ratio),
                "halving ratio {ratio} outside [3.6, 4.4]; errors {errors:?}"
            );
        }
        let _ = spacings;
    }

    #[test]
    fn burgers_manufactured_solution_second_order() {
        let m = mu(0.5);
        let theta = 0.5;
        let exact = move |t: f64, x: f64| (-t as f64).exp() * m.map(x).sin();
        let source: SourceFn = Arc::new(move |t, x| {
            let u = m.map(x);
            let w = m.weight(x);
            let v = (-t as f64).exp() * u.sin();
            let dv_du = (-t as f64).exp() * u.cos();
            let d2v_du2 = -(-t as f64).exp() * u.sin();
            // d_t v* + v* w dv*/du - theta w^2 d^2v*/du^2
            -v + v * w * dv_du - theta * w * w * d2v_du2
        });
        let mut errors = Vec::new();
        for nodes in [26usize, 51, 101] {
            let initial = Function1d::new((0.0, 10.0), move |x| exact(0.0, x)).unwrap();
            let boundary = Boundary1d::dirichlet(
                move |t| exact(t, 1.0),
                move |t| exact(t, 4.0),
            );
            let cfg = SolverConfig {
                mu: m,
                domain: (1.0, 4.0),
                nodes,
                theta,
                t_end: 0.25,
                time_step: TimeStep::default(),
                snapshot_times: vec![],
            };
            let sol = solve_fractal_burgers(&initial, &boundary, &cfg, Some(&source)).unwrap();
            errors.push(sol.l2_error(sol.final_snapshot(), |x| exact(0.25, x)));
        }
        for k in 0..errors.len() - 1 {
            let ratio = errors[k] / errors[k + 1];
            assert!(
                (3.6..=4.4).contains(&ratio),
                "halving ratio {ratio} outside [3.6, 4.4]; errors {errors:?}"
            );
        }
    }

    #[test]
    fn burgers_fine_grid_self_convergence() {
        // Smooth classical profile compared against a 4x finer grid.
        let initial =
            Function1d::new((0.0, 1.0), |x| 1.0 + 0.3 * (PI * x).sin()).unwrap();
        let boundary = Boundary1d::dirichlet_const(1.0, 1.0);
        let run = |nodes: usize| {
            let cfg = SolverConfig {
                mu: mu(1.0),
                domain: (0.0, 1.0),
                nodes,
                theta: 0.1,
                t_end: 0.05,
                time_step: TimeStep::default(),
                snapshot_times: vec![],
            };
            solve_fractal_burgers(&initial, &boundary, &cfg, None).unwrap()
        };
        let coarse = run(101);
        let fine = run(401);
        // Compare on shared nodes (every 4th fine node).
        let du = coarse.mapped_spacing();
        let mut sum = 0.0;
        for (i, &vc) in coarse.final_snapshot().values.iter().enumerate() {
            let vf = fine.final_snapshot().values[4 * i];
            sum += (vc - vf) * (vc - vf);
        }
        let diff = (du * sum).sqrt();
        assert!(diff <= 1e-3, "self-convergence difference {diff}");
    }

    #[test]
    fn reflective_boundaries_conserve_mass_classically() {
        let initial = Function1d::new((0.0, 1.0), |x| (PI * x).cos() + 1.5).unwrap();
        let cfg = SolverConfig {
            mu: mu(1.0),
            domain: (0.0, 1.0),
            nodes: 101,
            theta: 0.5,
            t_end: 1.0,
            time_step: TimeStep::Fixed(2e-5),
            snapshot_times: vec![0.0],
        };
        let sol =
            solve_anomalous_diffusion(&initial, &Boundary1d::Reflective, &cfg, None).unwrap();
        assert!(sol.steps >= 1000, "want >= 1000 steps, got {}", sol.steps);
        let m0 = sol.fractal_mass(&sol.snapshots[0]);
        let m1 = sol.fractal_mass(sol.final_snapshot());
        assert!(
            ((m1 - m0) / m0).abs() <= 1e-8,
            "relative drift {}",
            ((m1 - m0) / m0).abs()
        );
    }

    #[test]
    fn maximum_principle_source_free() {
        let initial = Function1d::new((0.0, 10.0), |x| (1.3 * x).sin() + 0.2 * x).unwrap();
        let boundary = Boundary1d::dirichlet(move |_| (1.3f64).sin() + 0.2, move |_| {
            (1.3f64 * 4.0).sin() + 0.8
        });
        let cfg = SolverConfig {
            mu: mu(0.5),
            domain: (1.0, 4.0),
            nodes: 101,
            theta: 0.6,
            t_end: 0.3,
            time_step: TimeStep::default(),
            snapshot_times: vec![0.1, 0.2],
        };
        let sol = solve_anomalous_diffusion(&initial, &boundary, &cfg, None).unwrap();
        let lo = sol.snapshots[0]
            .values
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        let hi = sol.snapshots[0]
            .values
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        // Initial-and-boundary range bounds every later snapshot.
        let (lo, hi) = (
            lo.min((1.3f64).sin() + 0.2).min((5.2f64).sin() + 0.8),
            hi.max((1.3f64).sin() + 0.2).max((5.2f64).sin() + 0.8),
        );
        for snap in &sol.snapshots {
            for &v in &snap.values {
                assert!(
                    v >= lo - 1e-12 && v <= hi + 1e-12,
                    "value {v} escapes [{lo}, {hi}]"
                );
            }
        }
    }

    #[test]
    fn rejects_invalid_configurations() {
        let initial = Function1d::new((0.0, 10.0), |_| 1.0).unwrap();
        let boundary = Boundary1d::dirichlet_const(1.0, 1.0);
        let base = SolverConfig {
            mu: mu(0.5),
            domain: (0.0, 4.0),
            nodes: 51,
            theta: 1.0,
            t_end: 0.1,
            time_step: TimeStep::default(),
            snapshot_times: vec![],
        };
        let err = solve_anomalous_diffusion(&initial, &boundary, &base, None).unwrap_err();
        assert!(err
            .to_string()
            .contains("singular diffusion coefficient at origin"));

        let cfg = SolverConfig {
            domain: (1.0, 4.0),
            time_step: TimeStep::Fixed(1.0),
            ..base.clone()
        };
        let err = solve_anomalous_diffusion(&initial, &boundary, &cfg, None).unwrap_err();
        assert!(err.to_string().contains("time step exceeds stability bound"));
    }

    #[test]
    fn burgers_overflow_detection() {
        // A strong source drives the state past the 1e6 guard; the solver
        // reports the overflow instead of returning garbage.
        let initial = Function1d::new((0.0, 200.0), |_| 10.0).unwrap();
        let boundary = Boundary1d::Reflective;
        let cfg = SolverConfig {
            mu: mu(1.0),
            domain: (1.0, 101.0),
            nodes: 11,
            theta: 1.0,
            t_end: 10.0,
            time_step: TimeStep::Auto { safety: 0.4 },
            snapshot_times: vec![],
        };
        let ramp: SourceFn = Arc::new(|_, _| 4e5);
        let err = solve_fractal_burgers(&initial, &boundary, &cfg, Some(&ramp)).unwrap_err();
        assert!(err.to_string().contains("solution magnitude overflow"));
    }
}
