//! The `saw` command line: lattice management, enumeration, Fisher
//! transforms, identity checks, fixed-point runs and figures.
//!
//! Exit status is 0 on success, 1 when an identity check fails, 2 on usage
//! or configuration errors and 3 on resource errors.

pub mod output;
pub mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use saw_core::analysis::{
    estimate_mu, exponent_diagnostics, g_eval, h_eval, iterate_mu, solve_mu_tilde, DiagnosticsParams, Real,
    DEFAULT_DIGITS,
};
use saw_core::fisher::{compose_edge_maps, fisher_black, fisher_full, gasket_iterate, iterate_fisher, FisherResult};
use saw_core::lattice::{
    build_ball_capped, builtin, load_spec, BallGraph, Builtin, LatticeSpec, MidEdge, VertexId, DEFAULT_MAX_VERTICES,
};
use saw_core::pipeline::{Pipeline, VERTEX_TRANSITIVE};
use saw_core::saw::{
    count_from_midedges, count_from_vertices, displacement_series, two_point_series, weighted_black_white,
    weighted_pqr, EndFilter, EnumConfig,
};

pub use output::Format;
use output::{emit, require};
use render::{Curve, Embedding};

/// Environment variable capping the number of ball vertices.
pub const MAX_VERTICES_ENV: &str = "SAW_MAX_VERTICES";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] saw_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// Stable error kind, e.g. `InsufficientRadius`.
    pub fn kind(&self) -> String {
        match self {
            CliError::Usage(_) => "Usage".into(),
            CliError::Io(_) => "Io".into(),
            CliError::Verification(_) => "VerificationFailed".into(),
            CliError::Core(e) => format!("{e:?}").chars().take_while(|c| c.is_alphanumeric()).collect(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Core(saw_core::Error::ResourceLimit { .. }) | CliError::Io(_) => 3,
            CliError::Core(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "saw", version, about = "Exact self-avoiding walk enumeration and Fisher transformation checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Built-in lattice name.
    #[arg(long, global = true)]
    pub lattice: Option<String>,
    /// JSON lattice spec; overrides the built-in default.
    #[arg(long, global = true, conflicts_with = "lattice")]
    pub spec_file: Option<PathBuf>,
    /// Ball radius; defaults to the smallest exact radius.
    #[arg(long, global = true)]
    pub radius: Option<usize>,
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Worker threads for enumeration; defaults to the available cores.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
    /// Significant decimal digits for fixed-point work.
    #[arg(long, global = true, default_value_t = DEFAULT_DIGITS)]
    pub precision: usize,
    /// Output file, written atomically; stdout if absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List, show or validate lattice specs.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Build finite balls.
    #[command(subcommand)]
    Ball(BallCmd),
    /// Exact SAW counts; `vertices` when no subcommand is given.
    Count(CountArgs),
    /// Fisher transforms and gasket iterates.
    #[command(subcommand)]
    Transform(TransformCmd),
    /// Exact coefficient-wise identity checks; exit 1 on a mismatch.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Connective-constant estimates and fixed-point runs.
    #[command(subcommand)]
    Mu(MuCmd),
    /// Heuristic γ and ν regressions with truncated-sum tables.
    Exponents(ExponentsArgs),
    /// SVG or DOT figures.
    Render(RenderArgs),
}

#[derive(Debug, Subcommand)]
pub enum LatticeCmd {
    /// Built-in lattices and their structure.
    List,
    /// The selected spec as JSON.
    Show,
    /// Validates the selected spec and reports its structure.
    Validate,
}

#[derive(Debug, Subcommand)]
pub enum BallCmd {
    /// Finite ball around the fundamental domain.
    Build,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TransformKind {
    None,
    Full,
    Black,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EndKind {
    Any,
    Original,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeightKind {
    BlackWhite,
    Pqr,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(subcommand)]
    pub what: Option<CountCmd>,
}

#[derive(Debug, Subcommand)]
pub enum CountCmd {
    /// σ_n from vertices (default: the first domain vertex).
    Vertices {
        /// Start vertex as `cell/local`, e.g. `0,0/1`; repeatable.
        #[arg(long)]
        start: Vec<String>,
    },
    /// Walks from the mid-edges X of the fundamental domain.
    Midedges {
        /// Count on the Fisher image, starting from the images of X.
        #[arg(long, value_enum, default_value = "none")]
        transform: TransformKind,
        #[arg(long, value_enum, default_value = "any")]
        end: EndKind,
    },
    /// σ_n(v, w).
    Twopoint {
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: String,
    },
    /// Counts and summed squared end-to-end distance from X.
    Displacement,
    /// Multivariate tallies from X (or its Fisher image for pqr).
    Weighted {
        #[arg(long, value_enum)]
        mode: WeightKind,
        #[arg(long, value_enum, default_value = "black")]
        transform: TransformKind,
    },
}

#[derive(Debug, Subcommand)]
pub enum TransformCmd {
    /// Fisher transform at every vertex.
    Full,
    /// Fisher transform at black vertices only.
    Black,
    /// k rounds of the full transform.
    Iterate {
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// k rounds of triangle replacement on a single edge.
    Gasket {
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SandwichKind {
    Full,
    Black,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Z₀(x²(1+x)) = Z₁*(x).
    Fisher,
    /// Coefficient-wise sandwich bounds on the Fisher image.
    Sandwich {
        #[arg(long, value_enum, default_value = "full")]
        kind: SandwichKind,
    },
    /// Z̃(p,q,r) = Z(q²(1+p), r) for the black transform.
    Bipartite,
    /// Each n-step walk lifts to 2ⁿ walks on the full transform.
    Circumnavigation,
}

#[derive(Debug, Subcommand)]
pub enum MuCmd {
    /// Root and ratio estimates from single-vertex counts.
    Estimate,
    /// μ_{k+1}⁻¹ = g⁻¹(μ_k⁻¹) from a start value.
    Iterate {
        #[arg(long, default_value = "0.5")]
        start: String,
        #[arg(long, default_value_t = 60)]
        k_max: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// μ̃ with x³ + x⁴ = μ⁻², x = 1/μ̃; μ defaults to √(2+√2).
    SolveTilde {
        #[arg(long)]
        mu: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct ExponentsArgs {
    /// Connective constant used for normalization.
    #[arg(long)]
    pub mu: f64,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0,0.5,1,1.5,2")]
    pub y_grid: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.5,0.75,1,1.25")]
    pub z_grid: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FigureKind {
    LatticeBall,
    FisherImage,
    Gasket,
    ConvergencePlot,
    SeriesPlot,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, value_enum)]
    pub kind: FigureKind,
    /// Gasket iterate.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Transform drawn by `fisher-image`.
    #[arg(long, value_enum, default_value = "black")]
    pub transform: TransformKind,
    /// Start value for `convergence-plot`.
    #[arg(long, default_value = "0.5")]
    pub start: String,
    #[arg(long, default_value_t = 40)]
    pub k_max: usize,
}

/// Resolved global options.
pub struct RunConfig {
    pub spec: LatticeSpec,
    pub radius: Option<usize>,
    pub n_max: Option<usize>,
    pub degree: Option<usize>,
    pub workers: usize,
    pub precision: usize,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub max_vertices: usize,
}

impl RunConfig {
    pub fn from_args(g: &GlobalArgs, max_vertices: Option<&str>) -> Result<Self, CliError> {
        let spec = match (&g.spec_file, &g.lattice) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read spec file {}: {e}", path.display())))?;
                load_spec(&text)?
            }
            (None, name) => builtin(name.as_deref().unwrap_or("hexagonal"))?,
        };
        let max_vertices = match max_vertices {
            None => DEFAULT_MAX_VERTICES,
            Some(text) => text.trim().parse::<usize>().ok().filter(|&m| m > 0).ok_or_else(|| {
                CliError::Usage(format!("{MAX_VERTICES_ENV} must be a positive integer, got `{text}`"))
            })?,
        };
        let workers = match g.workers {
            Some(w) => w as usize,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        if g.precision < 10 {
            return Err(CliError::Usage(format!("--precision must be at least 10 digits, got {}", g.precision)));
        }
        Ok(RunConfig {
            spec,
            radius: g.radius,
            n_max: g.n_max,
            degree: g.degree,
            workers,
            precision: g.precision,
            out: g.out.clone(),
            format: g.format,
            max_vertices,
        })
    }

    fn cfg(&self) -> EnumConfig {
        EnumConfig::with_workers(self.workers)
    }

    fn pipeline(&self) -> Pipeline {
        Pipeline {
            cfg: self.cfg(),
            max_vertices: self.max_vertices,
        }
    }

    fn n_max(&self, default: usize) -> usize {
        self.n_max.unwrap_or(default)
    }

    fn degree(&self, default: usize) -> usize {
        self.degree.or(self.n_max).unwrap_or(default)
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    /// Checks an explicit radius against the need for exact counts to
    /// length `n_max`, before anything is built.
    fn check_radius(&self, n_max: usize) -> Result<(), CliError> {
        match self.radius {
            Some(r) if r < n_max + 1 => Err(saw_core::Error::InsufficientRadius {
                have: r,
                need: n_max + 1,
            }
            .into()),
            _ => Ok(()),
        }
    }

    fn ball_of(&self, spec: &LatticeSpec, n_max: usize) -> Result<BallGraph, CliError> {
        self.check_radius(n_max)?;
        Ok(build_ball_capped(spec, self.radius.unwrap_or(n_max + 1), self.max_vertices)?)
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        emit(self.out.as_deref(), text)
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serialization cannot fail")
}

fn real(text: &str, digits: usize) -> Result<Real, CliError> {
    Real::parse(text, digits).ok_or_else(|| CliError::Usage(format!("`{text}` is not a decimal number")))
}

fn transform(spec: &LatticeSpec, kind: TransformKind) -> Result<Option<FisherResult>, CliError> {
    Ok(match kind {
        TransformKind::None => None,
        TransformKind::Full => Some(fisher_full(spec)?),
        TransformKind::Black => Some(fisher_black(spec)?),
    })
}

/// The graph to enumerate on and its start mid-edges: X itself, or the
/// images of X under the transform.
fn midedge_setup(spec: &LatticeSpec, kind: TransformKind) -> Result<(LatticeSpec, Vec<MidEdge>), CliError> {
    let x = spec.domain_midedges();
    Ok(match transform(spec, kind)? {
        None => (spec.clone(), x),
        Some(f) => {
            let starts = x.iter().map(|m| f.map_midedge(m)).collect();
            (f.transformed, starts)
        }
    })
}

/// Parses argv and runs; returns the process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let env = std::env::var(MAX_VERTICES_ENV).ok();
    match RunConfig::from_args(&cli.global, env.as_deref()).and_then(|rc| dispatch(&cli.command, &rc)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("saw: {}: {e}", e.kind());
            e.exit_code()
        }
    }
}

pub fn dispatch(command: &Command, rc: &RunConfig) -> Result<(), CliError> {
    match command {
        Command::Lattice(c) => lattice(c, rc),
        Command::Ball(BallCmd::Build) => ball_build(rc),
        Command::Count(a) => count(a.what.as_ref().unwrap_or(&CountCmd::Vertices { start: Vec::new() }), rc),
        Command::Transform(c) => transform_cmd(c, rc),
        Command::Verify(c) => verify(c, rc),
        Command::Mu(c) => mu(c, rc),
        Command::Exponents(a) => exponents(a, rc),
        Command::Render(a) => render_cmd(a, rc),
    }
}

fn lattice(c: &LatticeCmd, rc: &RunConfig) -> Result<(), CliError> {
    let fmt = rc.format(Format::Json);
    match c {
        LatticeCmd::List => {
            require(fmt, &[Format::Json, Format::Csv], "lattice list")?;
            let rows: Vec<(LatticeSpec, bool)> = Builtin::ALL
                .iter()
                .map(|b| (b.spec(), VERTEX_TRANSITIVE.contains(&b.name())))
                .collect();
            if fmt == Format::Csv {
                let mut out = String::from("name,dimension,cell_vertices,cubic,bipartite_coloured,simple,vertex_transitive\n");
                for (s, vt) in &rows {
                    let r = s.validate_structure();
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{vt}\n",
                        s.name,
                        s.dimension,
                        s.vertices.len(),
                        r.is_cubic,
                        r.is_bipartite_coloured,
                        r.is_simple
                    ));
                }
                return rc.emit(&out);
            }
            let list: Vec<serde_json::Value> = rows
                .iter()
                .map(|(s, vt)| {
                    json!({
                        "name": s.name,
                        "dimension": s.dimension,
                        "cell_vertices": s.vertices.len(),
                        "structure": s.validate_structure(),
                        "vertex_transitive": vt,
                    })
                })
                .collect();
            rc.emit(&pretty(&json!(list)))
        }
        LatticeCmd::Show => {
            require(fmt, &[Format::Json, Format::Dot, Format::Svg], "lattice show")?;
            match fmt {
                Format::Json => rc.emit(&rc.spec.to_json()),
                _ => ball_build(rc),
            }
        }
        LatticeCmd::Validate => {
            require(fmt, &[Format::Json], "lattice validate")?;
            rc.spec.validate()?;
            rc.emit(&pretty(&json!({
                "name": rc.spec.name,
                "valid": true,
                "periodic": rc.spec.is_periodic(),
                "structure": rc.spec.validate_structure(),
                "domain_midedges": rc.spec.domain_midedges().len(),
            })))
        }
    }
}

fn ball_build(rc: &RunConfig) -> Result<(), CliError> {
    let fmt = rc.format(Format::Json);
    require(fmt, &[Format::Json, Format::Dot, Format::Svg], "ball build")?;
    let radius = rc.radius.unwrap_or(3);
    let ball = build_ball_capped(&rc.spec, radius, rc.max_vertices)?;
    match fmt {
        Format::Dot => rc.emit(&ball.to_dot()),
        Format::Svg => rc.emit(&render::ball_svg(&ball, Embedding::for_spec(&rc.spec).as_ref())),
        _ => rc.emit(&pretty(&json!({
            "spec": ball.spec_name,
            "radius": ball.radius,
            "vertices": ball.vertex_count(),
            "edges": ball.edge_count(),
            "boundary_vertices": ball.boundary().len(),
            "seed": ball.seed.iter().map(|&i| ball.vertices[i].to_string()).collect::<Vec<_>>(),
        }))),
    }
}

fn count(c: &CountCmd, rc: &RunConfig) -> Result<(), CliError> {
    let fmt = rc.format(Format::Json);
    require(fmt, &[Format::Json, Format::Csv], "count")?;
    let n = rc.n_max(12);
    let (json, csv) = match c {
        CountCmd::Vertices { start } => {
            let ball = rc.ball_of(&rc.spec, n)?;
            let mut s = if start.is_empty() {
                let v = rc.spec.seed_vertices()[0].clone();
                let mut s = count_from_vertices(&ball, &[v], n, rc.cfg())?;
                s.vertex_transitive = VERTEX_TRANSITIVE.contains(&rc.spec.name.as_str());
                s
            } else {
                let starts = start.iter().map(|t| VertexId::parse(t)).collect::<Result<Vec<_>, _>>()?;
                count_from_vertices(&ball, &starts, n, rc.cfg())?
            };
            s.graph_id = rc.spec.name.clone();
            (s.to_json(), Some(s.to_csv()))
        }
        CountCmd::Midedges { transform: t, end } => {
            let (graph, starts) = midedge_setup(&rc.spec, *t)?;
            let filter = match end {
                EndKind::Any => EndFilter::Any,
                EndKind::Original => EndFilter::MidedgeOfOriginalE,
            };
            let s = count_from_midedges(&rc.ball_of(&graph, n)?, &starts, n, filter, rc.cfg())?;
            (s.to_json(), Some(s.to_csv()))
        }
        CountCmd::Twopoint { from, to } => {
            let v = match from {
                Some(t) => VertexId::parse(t)?,
                None => rc.spec.seed_vertices()[0].clone(),
            };
            let w = VertexId::parse(to)?;
            let s = two_point_series(&rc.ball_of(&rc.spec, n)?, &v, &w, n, rc.cfg())?;
            (s.to_json(), Some(s.to_csv()))
        }
        CountCmd::Displacement => {
            let d = displacement_series(&rc.ball_of(&rc.spec, n)?, &rc.spec.domain_midedges(), n, rc.cfg())?;
            (d.to_json(), Some(d.to_csv()))
        }
        CountCmd::Weighted { mode, transform: t } => {
            let w = match mode {
                WeightKind::BlackWhite => {
                    weighted_black_white(&rc.ball_of(&rc.spec, n)?, &rc.spec.domain_midedges(), n, rc.cfg())?
                }
                WeightKind::Pqr => {
                    let (graph, starts) = midedge_setup(&rc.spec, *t)?;
                    weighted_pqr(&rc.ball_of(&graph, n)?, &starts, n, rc.cfg())?
                }
            };
            (w.to_json(), None)
        }
    };
    match (fmt, csv) {
        (Format::Csv, Some(csv)) => rc.emit(&csv),
        (Format::Csv, None) => Err(CliError::Usage("`count weighted` cannot emit csv; use json".into())),
        _ => rc.emit(&json),
    }
}

fn transform_cmd(c: &TransformCmd, rc: &RunConfig) -> Result<(), CliError> {
    let fmt = rc.format(Format::Json);
    match c {
        TransformCmd::Full | TransformCmd::Black => {
            require(fmt, &[Format::Json, Format::Dot, Format::Svg], "transform")?;
            let kind = if matches!(c, TransformCmd::Full) { TransformKind::Full } else { TransformKind::Black };
            let f = transform(&rc.spec, kind)?.expect("a transform was requested");
            match fmt {
                Format::Json => rc.emit(&f.to_json()),
                _ => fisher_figure(rc, &f, fmt),
            }
        }
        TransformCmd::Iterate { k } => {
            require(fmt, &[Format::Json], "transform iterate")?;
            let chain = iterate_fisher(&rc.spec, *k, rc.max_vertices)?;
            let steps: Vec<serde_json::Value> = chain
                .iter()
                .map(|f| {
                    json!({
                        "name": f.transformed.name,
                        "cell_vertices": f.transformed.vertices.len(),
                        "cell_edges": f.transformed.edges.len(),
                        "triangle_edges": f.maps.triangle_edges.len(),
                    })
                })
                .collect();
            rc.emit(&pretty(&json!({
                "source": rc.spec.name,
                "steps": steps,
                "edge_map": compose_edge_maps(&chain),
            })))
        }
        TransformCmd::Gasket { k } => {
            require(fmt, &[Format::Json, Format::Dot, Format::Svg], "transform gasket")?;
            let g = gasket_iterate(*k, rc.max_vertices)?;
            match fmt {
                Format::Dot => rc.emit(&render::gasket_dot(&g, *k)),
                Format::Svg => rc.emit(&render::gasket_svg(&g, *k)),
                _ => rc.emit(&pretty(&json!({
                    "k": k,
                    "vertices": g.vertex_count(),
                    "edges": g.edges.len(),
                    "stubs": g.stubs.len(),
                    "cubic": (0..g.vertex_count()).all(|v| g.degree(v) == 3),
                    "positions": g.positions,
                    "edge_list": g.edges,
                }))),
            }
        }
    }
}

fn fisher_figure(rc: &RunConfig, f: &FisherResult, fmt: Format) -> Result<(), CliError> {
    let ball = build_ball_capped(&f.transformed, rc.radius.unwrap_or(4), rc.max_vertices)?;
    if fmt == Format::Dot {
        return rc.emit(&ball.to_dot());
    }
    let emb = Embedding::for_spec(&rc.spec).map(|e| e.fisher(&rc.spec, f));
    rc.emit(&render::ball_svg(&ball, emb.as_ref()))
}

fn verify(c: &VerifyCmd, rc: &RunConfig) -> Result<(), CliError> {
    let fmt = rc.format(Format::Json);
    require(fmt, &[Format::Json], "verify")?;
    let p = rc.pipeline();
    let degree = rc.degree(match c {
        VerifyCmd::Circumnavigation => 6,
        _ => 20,
    });
    let need = match c {
        VerifyCmd::Circumnavigation => 3 * degree,
        _ => degree,
    };
    rc.check_radius(need)?;
    let report = match c {
        VerifyCmd::Fisher => p.fisher_identity(&rc.spec, degree)?.report,
        VerifyCmd::Sandwich { kind: SandwichKind::Full } => p.full_fisher_sandwich(&rc.spec, degree)?.report,
        VerifyCmd::Sandwich { kind: SandwichKind::Black } => p.bipartite_sandwich(&rc.spec, degree)?.report,
        VerifyCmd::Bipartite => p.bipartite_substitution(&rc.spec, degree)?,
        VerifyCmd::Circumnavigation => p.circumnavigation(&rc.spec, degree)?,
    };
    rc.emit(&report.to_json())?;
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Verification(report.summary()))
    }
}

fn mu(c: &MuCmd, rc: &RunConfig) -> Result<(), CliError> {
    let fmt = rc.format(Format::Json);
    match c {
        MuCmd::Estimate => {
            require(fmt, &[Format::Json, Format::Csv], "mu estimate")?;
            let n = rc.n_max(20);
            rc.check_radius(n)?;
            let e = estimate_mu(&rc.pipeline().single_vertex(&rc.spec, n)?)?;
            if fmt == Format::Csv {
                let mut out = String::from("n,root,ratio\n");
                for (i, (n, root)) in e.roots.iter().enumerate() {
                    let ratio = e.ratios.get(i).map(|r| format!("{:.12}", r.1)).unwrap_or_default();
                    out.push_str(&format!("{n},{root:.12},{ratio}\n"));
                }
                return rc.emit(&out);
            }
            rc.emit(&e.to_json())
        }
        MuCmd::Iterate { start, k_max, tol } => {
            require(fmt, &[Format::Json, Format::Csv], "mu iterate")?;
            let t = iterate_mu(&real(start, rc.precision)?, *k_max, *tol)?;
            rc.emit(&if fmt == Format::Csv { t.to_csv() } else { t.to_json() })
        }
        MuCmd::SolveTilde { mu } => {
            require(fmt, &[Format::Json], "mu solve-tilde")?;
            let m = match mu {
                Some(text) => real(text, rc.precision)?,
                None => (Real::from_u64(2, rc.precision) + Real::from_u64(2, rc.precision).sqrt()).sqrt(),
            };
            let tilde = solve_mu_tilde(&m)?;
            let x = tilde.recip();
            let residual = (h_eval(&x) - (&m * &m).recip()).abs();
            let sig = rc.precision.min(50);
            rc.emit(&pretty(&json!({
                "mu": m.to_decimal(sig),
                "mu_tilde": tilde.to_decimal(sig),
                "x": x.to_decimal(sig),
                "residual": residual.to_sci(3),
                "g_at_x": g_eval(&x).to_decimal(sig),
            })))
        }
    }
}

fn exponents(a: &ExponentsArgs, rc: &RunConfig) -> Result<(), CliError> {
    require(rc.format(Format::Json), &[Format::Json], "exponents")?;
    let n = rc.n_max(20);
    rc.check_radius(n)?;
    let series = rc.pipeline().single_vertex(&rc.spec, n)?;
    let disp = displacement_series(&rc.ball_of(&rc.spec, n)?, &rc.spec.domain_midedges(), n, rc.cfg())?;
    let params = DiagnosticsParams {
        y_grid: a.y_grid.clone(),
        z_grid: a.z_grid.clone(),
        eta: a.eta,
    };
    rc.emit(&exponent_diagnostics(&series, &disp, a.mu, &params)?.to_json())
}

fn render_cmd(a: &RenderArgs, rc: &RunConfig) -> Result<(), CliError> {
    let fmt = rc.format(Format::Svg);
    let graph_kind = matches!(a.kind, FigureKind::LatticeBall | FigureKind::FisherImage | FigureKind::Gasket);
    let allowed: &[Format] = if graph_kind { &[Format::Svg, Format::Dot] } else { &[Format::Svg] };
    require(fmt, allowed, "render")?;
    match a.kind {
        FigureKind::LatticeBall => {
            let ball = build_ball_capped(&rc.spec, rc.radius.unwrap_or(4), rc.max_vertices)?;
            if fmt == Format::Dot {
                return rc.emit(&ball.to_dot());
            }
            rc.emit(&render::ball_svg(&ball, Embedding::for_spec(&rc.spec).as_ref()))
        }
        FigureKind::FisherImage => {
            let kind = match a.transform {
                TransformKind::None => {
                    return Err(CliError::Usage("`render --kind fisher-image` needs --transform full or black".into()))
                }
                k => k,
            };
            let f = transform(&rc.spec, kind)?.expect("a transform was requested");
            fisher_figure(rc, &f, fmt)
        }
        FigureKind::Gasket => {
            let g = gasket_iterate(a.k, rc.max_vertices)?;
            rc.emit(&if fmt == Format::Dot { render::gasket_dot(&g, a.k) } else { render::gasket_svg(&g, a.k) })
        }
        FigureKind::ConvergencePlot => {
            let t = iterate_mu(&real(&a.start, rc.precision)?, a.k_max, 0.0)?;
            let points = t.iterates.iter().enumerate().map(|(k, x)| [k as f64, x.to_f64()]).collect();
            let curve = Curve {
                label: format!("iterates from {}", a.start),
                points,
                colour: "#2980b9",
            };
            let phi_inv = (5f64.sqrt() - 1.0) / 2.0;
            rc.emit(&render::plot_svg(
                "fixed-point iterates",
                "k",
                &[curve],
                &[(format!("golden mean inverse {phi_inv:.10}"), phi_inv)],
            ))
        }
        FigureKind::SeriesPlot => {
            let n = rc.n_max(20);
            rc.check_radius(n)?;
            let e = estimate_mu(&rc.pipeline().single_vertex(&rc.spec, n)?)?;
            let to_pts = |v: &[(usize, f64)]| v.iter().map(|&(n, x)| [n as f64, x]).collect();
            let curves = [
                Curve {
                    label: "root estimates".into(),
                    points: to_pts(&e.roots),
                    colour: "#c0392b",
                },
                Curve {
                    label: "ratio estimates".into(),
                    points: to_pts(&e.ratios),
                    colour: "#27ae60",
                },
            ];
            rc.emit(&render::plot_svg(&format!("{} connective constant estimates", rc.spec.name), "n", &curves, &[]))
        }
    }
}
