//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on invalid input.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::circle_deform::{self, DeformSpec, OdeParams};
use crate::curves::{resample_arclength, ClosedCurve, WaveFront};
use crate::distance::hausdorff;
use crate::error::Error;
use crate::polygon_deform::{self, PolygonSpectrum};
use crate::polygons::{self, Polygon};
use crate::svg::{self, Figure};
use crate::{io, rho_half, rigidity, tracks};

/// Environment variable overriding the default verification tolerance.
pub const TOL_ENV: &str = "BIKEGEOM_TOL";

#[derive(Parser, Debug)]
#[command(name = "bikegeom", version, about = "Tire-track geometry toolkit")]
struct Cli {
    /// Verification tolerance (defaults depend on the command).
    #[arg(long, global = true, env = TOL_ENV)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Front tracks of a rear track and the ambiguity test.
    #[command(subcommand)]
    Track(TrackCmd),
    /// Check the bicycle property of a curve.
    #[command(subcommand)]
    Bicycle(BicycleCmd),
    /// Bicycle curves with rotation number 1/2 from a wave front.
    #[command(subcommand, name = "rho-half")]
    RhoHalf(RhoHalfCmd),
    /// Rotation numbers admitting first-order deformations of the circle.
    Modes(ModesArgs),
    /// First-order deformation of the unit circle along one harmonic.
    #[command(name = "deform-circle")]
    DeformCircle(DeformCircleArgs),
    /// Integrate the angle equation `L²β″ = (C − cos β) sin β`.
    Ode(OdeArgs),
    /// Bicycle polygons.
    #[command(subcommand)]
    Polygon(PolygonCmd),
    /// Render a curve, front or polygon JSON file as SVG.
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct Output {
    /// Output file (stdout when omitted).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TrackArgs {
    /// Rear track curve JSON.
    #[arg(long, short)]
    input: PathBuf,
    /// Frame length `L`.
    #[arg(long)]
    length: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand, Debug)]
enum TrackCmd {
    /// `γ + L γ′/|γ′|`.
    Front(TrackArgs),
    /// `γ − L γ′/|γ′|`.
    Reverse(TrackArgs),
    /// Whether both directions give the same front track (exit 1 if not).
    Ambiguous {
        #[command(flatten)]
        track: TrackArgs,
        /// Treat the input as a wave front JSON and use its chord endpoints.
        #[arg(long)]
        wavefront: bool,
        /// Samples per track when the input is a wave front.
        #[arg(long, default_value_t = 512)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
enum BicycleCmd {
    /// Chord spreads and necessary conditions (exit 1 on failure).
    Verify {
        /// Curve JSON (arc-length parametrized, perimeter 2π unless --resample).
        #[arg(long, short)]
        input: PathBuf,
        /// Rotation number.
        #[arg(long)]
        rho: f64,
        /// Resample by arc length to this many points and scale to perimeter 2π first.
        #[arg(long)]
        resample: Option<usize>,
        /// Write the chord profile CSV here.
        #[arg(long)]
        profile: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand, Debug)]
enum RhoHalfCmd {
    /// Build the curve swept by a chord of length 2L centred on the front.
    Construct {
        /// Wave front JSON.
        #[arg(long, short)]
        input: PathBuf,
        /// Half-chord `L`.
        #[arg(long, conflicts_with = "margin", required_unless_present = "margin")]
        length: Option<f64>,
        /// Use `L = threshold + margin`.
        #[arg(long)]
        margin: Option<f64>,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        /// Write an SVG of the curve and the front here.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Number of chords drawn in the SVG.
        #[arg(long, default_value_t = 0)]
        chords: usize,
        /// Write construction metadata JSON here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Smallest half-chord giving a convex curve.
    Threshold {
        #[arg(long, short)]
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ModeSelect {
    /// Roots for a single harmonic.
    #[arg(long)]
    n: Option<u32>,
    /// Roots for every harmonic 2..=N.
    #[arg(long)]
    scan_max: Option<u32>,
}

#[derive(Args, Debug)]
struct ModesArgs {
    #[command(flatten)]
    select: ModeSelect,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct DeformCircleArgs {
    #[arg(long)]
    n: u32,
    /// Half-arc `ω = πρ`.
    #[arg(long)]
    omega: f64,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 512)]
    samples: usize,
    /// Write chord-spread report JSON here.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct OdeArgs {
    #[arg(long = "C", allow_hyphen_values = true)]
    c: f64,
    #[arg(long = "L")]
    half_chord: f64,
    #[arg(long, allow_hyphen_values = true)]
    beta0: f64,
    #[arg(long, allow_hyphen_values = true)]
    dbeta0: f64,
    #[arg(long, default_value_t = 1e-3)]
    h: f64,
    /// Integration end (default 2π).
    #[arg(long)]
    x_end: Option<f64>,
    /// Write energy report JSON here.
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand, Debug)]
enum PolygonCmd {
    /// Regular polygon.
    Make {
        #[arg(long)]
        n: usize,
        /// Circumradius.
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Side and k-diagonal spreads (exit 1 if not a bicycle polygon).
    Verify {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Flexible family member at apex altitude `h`; without `--h`, the valid range.
    Flex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        h: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Non-convex equilateral polygon with equal 2-diagonals.
    Grid {
        #[command(flatten)]
        output: Output,
    },
    /// Circles through the trapezoids and the arcs replacing their legs.
    Petrunin {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Eigenvalues of the diagonal constraint circulant as CSV.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Real basis of first-order deformations of the regular polygon.
    Kernel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Regular polygon moved along one kernel mode.
    Deform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Index into the kernel basis.
        #[arg(long, default_value_t = 0)]
        mode: usize,
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Seeded random-restart search (exit 1 if a non-regular convex solution is found).
    Rigidity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        seeds: usize,
        /// First seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include every run in the report.
        #[arg(long)]
        runs: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug)]
struct RenderArgs {
    /// Curve, wave front or polygon JSON; repeat to overlay several.
    #[arg(long, short, required = true)]
    input: Vec<PathBuf>,
    /// Mark the cusps of wave fronts.
    #[arg(long)]
    mark_cusps: bool,
    /// Mark the curvature extrema of curves.
    #[arg(long)]
    mark_vertices: bool,
    /// Draw the k-diagonals of a polygon.
    #[arg(long)]
    diagonals: Option<usize>,
    /// Samples for wave fronts.
    #[arg(long, default_value_t = 1024)]
    samples: usize,
    #[command(flatten)]
    output: Output,
}

/// A failed command with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotConcyclic { .. } => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// Successful run, or a completed run whose verification failed.
enum Outcome {
    Pass,
    Fail(String),
}

type CmdResult = std::result::Result<Outcome, Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    io::from_json(&read_text(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn write_to(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))
}

fn emit(output: &Output, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(p) => write_to(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn tolerance(cli: Option<f64>, default: f64) -> Result<f64, Failure> {
    match cli {
        None => Ok(default),
        Some(t) if t > 0.0 && t.is_finite() => Ok(t),
        Some(t) => Err(invalid(format!("tolerance must be positive and finite, got {t}"))),
    }
}

#[derive(Serialize, Deserialize)]
struct AmbiguityReport {
    length: f64,
    distance: f64,
    tolerance: f64,
    ambiguous: bool,
}

#[derive(Serialize, Deserialize)]
struct BicycleReport {
    rho: f64,
    tolerance: f64,
    residual: tracks::BicycleResidual,
    conditions: tracks::ConditionReport,
    passes: bool,
}

#[derive(Serialize, Deserialize)]
struct ConstructionReport {
    half_chord_input: f64,
    half_chord: f64,
    scale: f64,
    convex: bool,
    min_curvature_numerator: f64,
    junction_mismatch: f64,
    threshold: f64,
}

#[derive(Serialize, Deserialize)]
struct ThresholdReport {
    min_convex_l: f64,
    cusps: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct DeformCircleReport {
    n: u32,
    omega: f64,
    epsilon: f64,
    mode_factor: f64,
    length_spread: f64,
    angle_spread: f64,
}

#[derive(Serialize, Deserialize)]
struct EnergyReport {
    energy0: f64,
    energy_drift: f64,
    relative_drift: f64,
    energy_ok: bool,
    turning_points: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct FlexRange {
    n: usize,
    lo: f64,
    hi: f64,
    regular_altitude: f64,
}

#[derive(Serialize, Deserialize)]
struct KernelEntry {
    field: polygon_deform::DeformationField,
    residuals: polygon_deform::FieldResiduals,
}

#[derive(Serialize, Deserialize)]
struct KernelReport {
    n: usize,
    k: usize,
    dimension: usize,
    fields: Vec<KernelEntry>,
}

fn track(cmd: TrackCmd, tol: Option<f64>) -> CmdResult {
    match cmd {
        TrackCmd::Front(a) => {
            let gamma: ClosedCurve = read_json(&a.input)?;
            emit(&a.output, &io::to_json(&tracks::front_track(&gamma, a.length)?))?;
        }
        TrackCmd::Reverse(a) => {
            let gamma: ClosedCurve = read_json(&a.input)?;
            emit(&a.output, &io::to_json(&tracks::reverse_front_track(&gamma, a.length)?))?;
        }
        TrackCmd::Ambiguous { track: a, wavefront, samples } => {
            let tolerance = tolerance(tol, tracks::FILE_TOL)?;
            let distance = if wavefront {
                let front: WaveFront = read_json(&a.input)?;
                let (fwd, bwd) = tracks::wavefront_tracks(&front, a.length, samples)?;
                hausdorff(&fwd, &bwd)
            } else {
                let gamma: ClosedCurve = read_json(&a.input)?;
                tracks::ambiguity_distance(&gamma, a.length)?
            };
            let report = AmbiguityReport { length: a.length, distance, tolerance, ambiguous: distance <= tolerance };
            emit(&a.output, &io::to_json(&report))?;
            if !report.ambiguous {
                return Ok(Outcome::Fail(format!("not ambiguous: distance {distance:e} > {tolerance:e}")));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn bicycle(cmd: BicycleCmd, tol: Option<f64>) -> CmdResult {
    let BicycleCmd::Verify { input, rho, resample, profile, output } = cmd;
    if !(rho > 0.0 && rho < 1.0) {
        return Err(invalid(format!("--rho must lie in (0, 1), got {rho}")));
    }
    let tolerance = tolerance(tol, tracks::FILE_TOL)?;
    let mut gamma: ClosedCurve = read_json(&input)?;
    if let Some(n) = resample {
        gamma = resample_arclength(&gamma, n, true)?;
    }
    let omega = PI * rho;
    let residual = tracks::bicycle_residual(&gamma, rho)?;
    let conditions = tracks::necessary_conditions(&gamma, rho, None)?;
    if let Some(path) = profile {
        let chords = tracks::chord_angles(&gamma, omega)?;
        write_to(&path, &io::profile_csv(&gamma.parameters(), &chords))?;
    }
    let passes = residual.passes(tolerance) && conditions.all_pass();
    let report = BicycleReport { rho, tolerance, residual, conditions, passes };
    emit(&output, &io::to_json(&report))?;
    Ok(if passes {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("not a bicycle curve at rho = {rho} (chord spread {:e})", residual.length_spread))
    })
}

fn rho_half(cmd: RhoHalfCmd) -> CmdResult {
    match cmd {
        RhoHalfCmd::Construct { input, length, margin, samples, svg: svg_path, chords, report, output } => {
            let front: WaveFront = read_json(&input)?;
            let threshold = rho_half::min_convex_l(&front);
            let l = match (length, margin) {
                (Some(l), _) => l,
                (None, Some(m)) => threshold + m,
                (None, None) => unreachable!("clap requires one of --length, --margin"),
            };
            let built = rho_half::construct(&front, l, samples)?;
            if !built.convex {
                return Err(invalid(format!(
                    "half-chord {l} is below the convexity threshold {threshold}; the swept curve is not convex"
                )));
            }
            emit(&output, &io::to_json(&built.curve))?;
            if let Some(p) = svg_path {
                let mut fig = Figure::new();
                let pts = built.curve.samples();
                let half = pts.len() / 2;
                for j in 0..chords {
                    let i = j * half / chords;
                    fig.segment(pts[i], pts[i + half], "steelblue");
                }
                svg::add_curve(&mut fig, &built.curve, "black", true)?;
                svg::add_front(&mut fig, &front, built.scale, 4 * samples, "crimson", true);
                write_to(&p, &fig.to_svg())?;
            }
            if let Some(p) = report {
                let r = ConstructionReport {
                    half_chord_input: l,
                    half_chord: built.half_chord,
                    scale: built.scale,
                    convex: built.convex,
                    min_curvature_numerator: built.min_curvature_numerator,
                    junction_mismatch: built.junction_mismatch,
                    threshold,
                };
                write_to(&p, &io::to_json(&r))?;
            }
        }
        RhoHalfCmd::Threshold { input, output } => {
            let front: WaveFront = read_json(&input)?;
            let r = ThresholdReport { min_convex_l: rho_half::min_convex_l(&front), cusps: front.cusps() };
            emit(&output, &io::to_json(&r))?;
        }
    }
    Ok(Outcome::Pass)
}

fn modes(a: ModesArgs) -> CmdResult {
    let range = match (a.select.n, a.select.scan_max) {
        (Some(n), _) => n..=n,
        (None, Some(m)) => 2..=m,
        (None, None) => unreachable!("clap requires one of --n, --scan-max"),
    };
    let mut roots = Vec::new();
    for n in range {
        roots.extend(circle_deform::mode_roots(n)?);
    }
    emit(&a.output, &io::roots_csv(&roots))?;
    Ok(Outcome::Pass)
}

fn deform_circle(a: DeformCircleArgs) -> CmdResult {
    let mut harmonics = std::collections::BTreeMap::new();
    harmonics.insert(a.n, (0.0, 1.0));
    let setup = DeformSpec::with_harmonics(a.n, a.omega, a.eps, harmonics, a.samples)?;
    let curve = circle_deform::deform_circle(&setup)?;
    emit(&a.output, &io::to_json(&curve))?;
    if let Some(p) = a.report {
        let normalized = resample_arclength(&curve, a.samples, true)?;
        let res = tracks::bicycle_residual(&normalized, a.omega / PI)?;
        let r = DeformCircleReport {
            n: a.n,
            omega: a.omega,
            epsilon: a.eps,
            mode_factor: setup.mode_factor(),
            length_spread: res.length_spread,
            angle_spread: res.angle_spread,
        };
        write_to(&p, &io::to_json(&r))?;
    }
    if let Some(p) = a.svg {
        let mut fig = Figure::new();
        fig.polyline(ClosedCurve::circle(a.samples, crate::Vec2::ZERO, 1.0)?.samples().to_vec(), true, "lightgray");
        svg::add_curve(&mut fig, &curve, "black", false)?;
        write_to(&p, &fig.to_svg())?;
    }
    Ok(Outcome::Pass)
}

fn ode(a: OdeArgs) -> CmdResult {
    let params = OdeParams::new(a.c, a.half_chord)?;
    let traj = circle_deform::integrate_ode(params, a.beta0, a.dbeta0, a.x_end.unwrap_or(2.0 * PI), a.h)?;
    emit(&a.output, &io::trajectory_csv(&traj))?;
    if let Some(p) = a.report {
        let r = EnergyReport {
            energy0: traj.points[0].energy,
            energy_drift: traj.energy_drift,
            relative_drift: traj.relative_drift,
            energy_ok: traj.energy_ok,
            turning_points: traj.turning_points(),
        };
        write_to(&p, &io::to_json(&r))?;
    }
    Ok(if traj.energy_ok {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("energy drift {:e} exceeds tolerance", traj.relative_drift))
    })
}

fn polygon(cmd: PolygonCmd, tol: Option<f64>) -> CmdResult {
    match cmd {
        PolygonCmd::Make { n, radius, output } => emit(&output, &io::to_json(&polygons::regular(n, radius)?))?,
        PolygonCmd::Verify { input, k, output } => {
            let p: Polygon = read_json(&input)?;
            let report = polygons::verify(&p, k, tolerance(tol, polygons::VERIFY_TOL)?)?;
            emit(&output, &io::to_json(&report))?;
            if !report.bicycle {
                return Ok(Outcome::Fail(format!(
                    "not a bicycle ({}, {k})-gon: side spread {:e}, diagonal spread {:e}",
                    report.n, report.side_spread, report.diag_spread
                )));
            }
        }
        PolygonCmd::Flex { n, k, h, output } => match h {
            Some(h) => emit(&output, &io::to_json(&polygons::flexible(n, k, h)?))?,
            None => {
                let (lo, hi) = polygons::flexible_range(n)?;
                let r = FlexRange { n, lo, hi, regular_altitude: polygons::regular_altitude(n) };
                emit(&output, &io::to_json(&r))?;
            }
        },
        PolygonCmd::Grid { output } => emit(&output, &io::to_json(&polygons::grid_example()))?,
        PolygonCmd::Petrunin { input, k, output } => {
            let p: Polygon = read_json(&input)?;
            emit(&output, &io::to_json(&polygons::petrunin_arcs(&p, k)?))?;
        }
        PolygonCmd::Spectrum { n, k, output } => emit(&output, &io::spectrum_csv(&PolygonSpectrum::new(n, k)?))?,
        PolygonCmd::Kernel { n, k, output } => {
            let fields = match polygon_deform::kernel(n, k) {
                Ok(f) => f,
                Err(Error::EmptyKernel { .. }) => Vec::new(),
                Err(e) => return Err(e.into()),
            };
            let r = KernelReport {
                n,
                k,
                dimension: fields.len(),
                fields: fields.into_iter().map(|field| KernelEntry { residuals: field.residuals(), field }).collect(),
            };
            emit(&output, &io::to_json(&r))?;
        }
        PolygonCmd::Deform { n, k, mode, eps, output } => {
            let fields = polygon_deform::kernel(n, k)?;
            let field = fields
                .get(mode)
                .ok_or_else(|| invalid(format!("--mode {mode} out of range; the kernel has {} modes", fields.len())))?;
            emit(&output, &io::to_json(&polygon_deform::deform(field, eps)?))?;
        }
        PolygonCmd::Rigidity { n, k, seeds, seed, runs, output } => {
            let mut report = rigidity::rigidity_search(n, k, seeds, seed)?;
            if !runs {
                report.runs.clear();
            }
            emit(&output, &io::to_json(&report))?;
            if report.non_regular > 0 {
                return Ok(Outcome::Fail(format!("{} converged runs are not regular", report.non_regular)));
            }
        }
    }
    Ok(Outcome::Pass)
}

const PALETTE: [&str; 4] = ["black", "crimson", "steelblue", "darkorange"];

fn render(a: RenderArgs) -> CmdResult {
    let mut fig = Figure::new();
    for (i, path) in a.input.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let text = read_text(path)?;
        let located = |e: Error| invalid(format!("{}: {e}", path.display()));
        let value: Value = serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        let field = |key: &str| value.get(key).is_some();
        if field("samples") {
            let c: ClosedCurve = io::from_json(&text).map_err(located)?;
            svg::add_curve(&mut fig, &c, color, a.mark_vertices).map_err(located)?;
        } else if field("harmonics") {
            let f: WaveFront = io::from_json(&text).map_err(located)?;
            svg::add_front(&mut fig, &f, 1.0, a.samples, color, a.mark_cusps);
        } else if field("vertices") {
            let p: Polygon = io::from_json(&text).map_err(located)?;
            svg::add_polygon(&mut fig, &p, a.diagonals, color);
        } else {
            return Err(invalid(format!(
                "{}: expected a curve (`samples`), wave front (`harmonics`) or polygon (`vertices`)",
                path.display()
            )));
        }
    }
    emit(&a.output, &fig.to_svg())?;
    Ok(Outcome::Pass)
}

fn dispatch(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Track(c) => track(c, cli.tol),
        Command::Bicycle(c) => bicycle(c, cli.tol),
        Command::RhoHalf(c) => rho_half(c),
        Command::Modes(a) => modes(a),
        Command::DeformCircle(a) => deform_circle(a),
        Command::Ode(a) => ode(a),
        Command::Polygon(c) => polygon(c, cli.tol),
        Command::Render(a) => render(a),
    }
}

/// Run the tool on `args` (including the program name) and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail(msg)) => {
            eprintln!("verification failed: {msg}");
            1
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
