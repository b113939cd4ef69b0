//! Run configuration: TOML config file plus command-line flags, with flags
//! taking precedence. All numbers are parsed as plain decimals.

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use hausdorff_calc::{Convention, QuadratureSpec};
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => bail!("unknown format {other:?}; expected csv or json"),
        }
    }

}

/// Flags shared by every subcommand.
#[derive(Debug, Args, Clone, Default)]
pub struct CommonArgs {
    /// Configuration file (TOML; sections [run], [quad], [solver]).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Fractal dimensions to run, comma separated (each in (0, 1]).
    #[arg(long, global = true, value_delimiter = ',')]
    pub mu: Option<Vec<f64>>,
    /// Operator convention: paper (alias physical), mapped, or both.
    #[arg(long, global = true)]
    pub convention: Option<String>,
    /// Quadrature as POINTSxPANELS, e.g. 16x2 (points one of 4, 8, 16, 32).
    #[arg(long, global = true)]
    pub quad: Option<String>,
    /// Seed for the reproducible field corpus.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory for report files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Payload format for single-file reports: csv or json.
    #[arg(long, global = true)]
    pub format: Option<String>,
}

/// Solver-specific flags.
#[derive(Debug, Args, Clone, Default)]
pub struct SolveArgs {
    /// Equation: diffusion or burgers.
    #[arg(long)]
    pub equation: Option<String>,
    /// Number of grid nodes.
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Fixed time step (conflicts with --auto-cfl).
    #[arg(long, conflicts_with = "auto_cfl")]
    pub dt: Option<f64>,
    /// Select the automatic CFL-bounded step.
    #[arg(long)]
    pub auto_cfl: bool,
    /// Final time.
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Diffusivity.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Physical interval as a,b.
    #[arg(long)]
    pub domain: Option<String>,
    /// Initial profile: const, eigenmode, mapped_sine, shifted_sine, mapped_exp, or mapped_poly.
    #[arg(long)]
    pub initial: Option<String>,
    /// Boundary condition: dirichlet or reflective.
    #[arg(long)]
    pub boundary: Option<String>,
    /// Source term: none or mms (manufactured-solution verification).
    #[arg(long)]
    pub source: Option<String>,
    /// Snapshot times, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub snapshots: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    run: Option<RunSection>,
    quad: Option<QuadSection>,
    solver: Option<SolverSection>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RunSection {
    mu: Option<Vec<f64>>,
    convention: Option<String>,
    seed: Option<u64>,
    format: Option<String>,
    out: Option<String>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct QuadSection {
    points: Option<usize>,
    panels: Option<usize>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SolverSection {
    equation: Option<String>,
    mu: Option<f64>,
    domain: Option<[f64; 2]>,
    nodes: Option<usize>,
    theta: Option<f64>,
    t_end: Option<f64>,
    dt: Option<f64>,
    auto_cfl: Option<bool>,
    safety: Option<f64>,
    snapshots: Option<Vec<f64>>,
    initial: Option<String>,
    initial_value: Option<f64>,
    boundary: Option<String>,
    source: Option<String>,
    mms_grids: Option<usize>,
    origin_standoff: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equation {
    Diffusion,
    Burgers,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundaryKind {
    Dirichlet,
    Reflective,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceKind {
    None,
    Mms,
}

#[derive(Debug, Clone)]
pub struct SolverSettings {
    pub equation: Equation,
    pub mu: f64,
    pub domain: (f64, f64),
    pub nodes: usize,
    pub theta: f64,
    pub t_end: f64,
    pub dt: Option<f64>,
    pub safety: f64,
    pub snapshots: Vec<f64>,
    pub initial: String,
    pub initial_value: f64,
    pub boundary: BoundaryKind,
    pub source: SourceKind,
    pub mms_grids: usize,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mus: Vec<f64>,
    pub conventions: Vec<Convention>,
    pub quad: QuadratureSpec,
    pub seed: u64,
    pub out: PathBuf,
    pub format: OutputFormat,
    pub solver: SolverSettings,
}

pub fn parse_conventions(s: &str) -> Result<Vec<Convention>> {
    match s {
        "paper" | "physical" => Ok(vec![Convention::Physical]),
        "mapped" => Ok(vec![Convention::Mapped]),
        "both" => Ok(vec![Convention::Physical, Convention::Mapped]),
        other => bail!("unknown convention {other:?}; expected paper, mapped, or both"),
    }
}

fn parse_quad(s: &str) -> Result<QuadratureSpec> {
    let (points, panels) = s
        .split_once('x')
        .ok_or_else(|| anyhow!("quadrature spec {s:?} is not of the form POINTSxPANELS"))?;
    let points: usize = points
        .parse()
        .with_context(|| format!("bad points in quadrature spec {s:?}"))?;
    let panels: usize = panels
        .parse()
        .with_context(|| format!("bad panels in quadrature spec {s:?}"))?;
    Ok(QuadratureSpec::new(points, panels)?)
}

fn parse_domain(s: &str) -> Result<(f64, f64)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| anyhow!("domain {s:?} is not of the form a,b"))?;
    Ok((
        a.trim().parse().with_context(|| format!("bad domain start {a:?}"))?,
        b.trim().parse().with_context(|| format!("bad domain end {b:?}"))?,
    ))
}

fn load_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("malformed config {}", path.display()))
}

/// Resolves defaults, file, and flags into a run configuration.
pub fn resolve(common: &CommonArgs, solve: Option<&SolveArgs>) -> Result<RunConfig> {
    let file = match &common.config {
        Some(path) => load_file(path)?,
        None => FileConfig::default(),
    };
    let run = file.run.unwrap_or_default();
    let quad_sec = file.quad.unwrap_or_default();
    let solver_sec = file.solver.unwrap_or_default();

    let mus = common
        .mu
        .clone()
        .or(run.mu)
        .unwrap_or_else(|| vec![0.5, 1.0]);
    for &m in &mus {
        if !(m > 0.0 && m <= 1.0) {
            bail!("mu = {m} outside (0, 1]");
        }
    }
    let conventions = match common.convention.as_deref().or(run.convention.as_deref()) {
        Some(s) => parse_conventions(s)?,
        None => vec![Convention::Physical, Convention::Mapped],
    };
    let quad = match &common.quad {
        Some(s) => parse_quad(s)?,
        None => QuadratureSpec::new(
            quad_sec.points.unwrap_or(16),
            quad_sec.panels.unwrap_or(2),
        )?,
    };
    let seed = common.seed.or(run.seed).unwrap_or(42);
    let out = common
        .out
        .clone()
        .or_else(|| run.out.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let format = match common.format.as_deref().or(run.format.as_deref()) {
        Some(s) => OutputFormat::parse(s)?,
        None => OutputFormat::Json,
    };

    let sa = solve.cloned().unwrap_or_default();
    let equation = match sa
        .equation
        .as_deref()
        .or(solver_sec.equation.as_deref())
        .unwrap_or("diffusion")
    {
        "diffusion" => Equation::Diffusion,
        "burgers" => Equation::Burgers,
        other => bail!("unknown equation {other:?}; expected diffusion or burgers"),
    };
    let solver_mu = solver_sec.mu.unwrap_or(mus[0]);
    if !(solver_mu > 0.0 && solver_mu <= 1.0) {
        bail!("solver mu = {solver_mu} outside (0, 1]");
    }
    let domain = match &sa.domain {
        Some(s) => parse_domain(s)?,
        None => solver_sec
            .domain
            .map(|d| (d[0], d[1]))
            .unwrap_or((1.0, 4.0)),
    };
    // Left endpoint guard: the diffusion coefficient diverges at the origin
    // for mu < 1, so sub-classical runs keep a configurable standoff.
    let standoff = solver_sec.origin_standoff.unwrap_or(0.1);
    if solver_mu < 1.0 && domain.0 < standoff {
        bail!(
            "domain start {} is below the {standoff} standoff required for mu < 1 \
             (the diffusion coefficient is singular at the origin); \
             set [solver] origin_standoff to override",
            domain.0
        );
    }
    let dt = if sa.auto_cfl {
        None
    } else {
        sa.dt.or(if solver_sec.auto_cfl.unwrap_or(true) {
            None
        } else {
            solver_sec.dt
        })
    };
    let boundary = match sa
        .boundary
        .as_deref()
        .or(solver_sec.boundary.as_deref())
        .unwrap_or("dirichlet")
    {
        "dirichlet" => BoundaryKind::Dirichlet,
        "reflective" => BoundaryKind::Reflective,
        other => bail!("unknown boundary {other:?}; expected dirichlet or reflective"),
    };
    let source = match sa
        .source
        .as_deref()
        .or(solver_sec.source.as_deref())
        .unwrap_or("none")
    {
        "none" => SourceKind::None,
        "mms" => SourceKind::Mms,
        other => bail!("unknown source {other:?}; expected none or mms"),
    };
    let initial = sa
        .initial
        .or(solver_sec.initial)
        .unwrap_or_else(|| "eigenmode".into());
    const INITIAL_FAMILIES: [&str; 6] = [
        "const",
        "eigenmode",
        "mapped_sine",
        "shifted_sine",
        "mapped_exp",
        "mapped_poly",
    ];
    if !INITIAL_FAMILIES.contains(&initial.as_str()) {
        bail!(
            "unknown initial profile {initial:?}; expected one of {}",
            INITIAL_FAMILIES.join(", ")
        );
    }
    let t_end = sa.t_end.or(solver_sec.t_end).unwrap_or(0.25);
    let solver = SolverSettings {
        equation,
        mu: solver_mu,
        domain,
        nodes: sa.nodes.or(solver_sec.nodes).unwrap_or(101),
        theta: sa.theta.or(solver_sec.theta).unwrap_or(1.0),
        t_end,
        dt,
        safety: solver_sec.safety.unwrap_or(0.4),
        snapshots: sa
            .snapshots
            .clone()
            .or(solver_sec.snapshots)
            .unwrap_or_else(|| vec![t_end]),
        initial,
        initial_value: solver_sec.initial_value.unwrap_or(1.0),
        boundary,
        source,
        mms_grids: solver_sec.mms_grids.unwrap_or(3),
    };

    Ok(RunConfig {
        mus,
        conventions,
        quad,
        seed,
        out,
        format,
        solver,
    })
}
