//! Command-line interface to the ringtangle library: spectra, pairwise
//! thermal tangle, parameter sweeps, optimal field angles, mixing-rule
//! checks and approximation-vs-exact reports.

mod config;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use ringtangle::approx::{
    gap_approx, ground_concurrence_approx, ground_energy_approx, optimal_angle_analytic,
    optimal_angle_numeric, optimal_bx_analytic, optimal_gap_closed_form, optimal_gap_exact,
    ApproxInputs, OptimalAngle,
};
use ringtangle::entanglement::{pure_concurrence, PairSelector};
use ringtangle::mixing::{
    align_degenerate_subspaces, four_level_counterexample, verify_theorem, MixingReport,
    PureStatePair,
};
use ringtangle::sweep::{run_sweep, AxisSpec, GridKind, SweepSpec};
use ringtangle::thermal::{boltzmann_weights, diagonalize};
use ringtangle::{ring_pair_concurrence, ConcurrenceResult, Error as CoreError, RingConfig};

use config::ConfigFile;
use output::{grid_to_csv, grid_to_json, Report};

#[derive(Parser)]
#[command(
    name = "ringtangle",
    version,
    about = "Thermal pairwise entanglement in Ising qubit rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the energy spectrum of a ring (eigenvectors included for N = 2).
    Spectrum(SpectrumArgs),
    /// Concurrence and tangle of a qubit pair in the thermal state.
    Tangle(TangleArgs),
    /// Evaluate a tangle grid and write it as CSV or JSON.
    Sweep(SweepArgs),
    /// Locate the field angle maximizing the tangle, numerically and analytically.
    OptimalAngle(OptimalAngleArgs),
    /// Check the concurrence mixing rule on eigenstate pairs.
    MixingCheck(MixingCheckArgs),
    /// Compare low-temperature approximations against exact values.
    ApproxCheck(ApproxCheckArgs),
}

/// Field specification shared by several commands: Cartesian components or
/// amplitude plus angle from the z axis.
#[derive(Args)]
struct FieldArgs {
    /// Transverse field component Bx.
    #[arg(long, conflicts_with_all = ["b", "theta"])]
    bx: Option<f64>,
    /// Longitudinal field component Bz.
    #[arg(long, conflicts_with_all = ["b", "theta"])]
    bz: Option<f64>,
    /// Field amplitude (used with --theta).
    #[arg(long, requires = "theta")]
    b: Option<f64>,
    /// Field angle from the z axis in radians (used with --b).
    #[arg(long, requires = "b")]
    theta: Option<f64>,
}

impl FieldArgs {
    fn components(&self) -> (f64, f64) {
        match (self.b, self.theta) {
            (Some(b), Some(theta)) => (b * theta.sin(), b * theta.cos()),
            _ => (self.bx.unwrap_or(0.0), self.bz.unwrap_or(0.0)),
        }
    }
}

#[derive(Args)]
struct SpectrumArgs {
    /// Ring size.
    #[arg(long)]
    n: usize,
    /// Ising coupling J.
    #[arg(long, default_value_t = 1.0)]
    j: f64,
    #[command(flatten)]
    field: FieldArgs,
}

#[derive(Args)]
struct TangleArgs {
    /// Ring size.
    #[arg(long)]
    n: usize,
    /// Ising coupling J.
    #[arg(long, default_value_t = 1.0)]
    j: f64,
    /// Transverse field component Bx.
    #[arg(long, default_value_t = 0.0)]
    bx: f64,
    /// Longitudinal field component Bz.
    #[arg(long, default_value_t = 0.0)]
    bz: f64,
    /// Temperature (k_B = 1).
    #[arg(long)]
    t: f64,
    /// Ring distance between the two analyzed qubits.
    #[arg(long = "pair-sep", default_value_t = 1)]
    pair_sep: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    /// Grid kind: b-t, bx-bz or b-theta.
    #[arg(long, value_enum)]
    kind: Option<GridKindArg>,
    /// Ring size.
    #[arg(long)]
    n: Option<usize>,
    /// Ising coupling J.
    #[arg(long)]
    j: Option<f64>,
    /// Fixed temperature for the field-field grids.
    #[arg(long)]
    t: Option<f64>,
    /// Ring distance between the two analyzed qubits.
    #[arg(long = "pair-sep")]
    pair_sep: Option<usize>,
    #[arg(long = "axis1-min")]
    axis1_min: Option<f64>,
    #[arg(long = "axis1-max")]
    axis1_max: Option<f64>,
    #[arg(long = "axis1-steps")]
    axis1_steps: Option<usize>,
    #[arg(long = "axis2-min")]
    axis2_min: Option<f64>,
    #[arg(long = "axis2-max")]
    axis2_max: Option<f64>,
    #[arg(long = "axis2-steps")]
    axis2_steps: Option<usize>,
    /// Output path; the extension picks the format unless --format is given.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json (default: inferred from --out, falling back to csv).
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Key=value file supplying any of the above (command line wins).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum GridKindArg {
    #[value(name = "b-t")]
    BT,
    #[value(name = "bx-bz")]
    BxBz,
    #[value(name = "b-theta")]
    BTheta,
}

impl From<GridKindArg> for GridKind {
    fn from(value: GridKindArg) -> Self {
        match value {
            GridKindArg::BT => GridKind::BT,
            GridKindArg::BxBz => GridKind::BxBz,
            GridKindArg::BTheta => GridKind::BTheta,
        }
    }
}

#[derive(Args)]
struct OptimalAngleArgs {
    /// Field amplitude.
    #[arg(long)]
    b: f64,
    /// Temperature.
    #[arg(long)]
    t: f64,
    /// Ring size.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Ring distance between the two analyzed qubits.
    #[arg(long = "pair-sep", default_value_t = 1)]
    pair_sep: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MixingDemo {
    /// Check the rule on the ground / first-excited pair.
    GroundPair,
    /// Apply the four-level formula despite its violated precondition.
    FourLevel,
}

#[derive(Args)]
struct MixingCheckArgs {
    /// Which demonstration to run.
    #[arg(long, value_enum)]
    demo: MixingDemo,
    /// Ising coupling J.
    #[arg(long, default_value_t = 1.0)]
    j: f64,
    /// Transverse field component Bx.
    #[arg(long, default_value_t = 0.0)]
    bx: f64,
    /// Longitudinal field component Bz.
    #[arg(long, default_value_t = 0.0)]
    bz: f64,
    /// Temperature.
    #[arg(long)]
    t: f64,
}

#[derive(Args)]
struct ApproxCheckArgs {
    /// Temperature for the optimal-gap comparison.
    #[arg(long)]
    t: f64,
    /// Optional field point for gap / energy / concurrence comparisons.
    #[arg(long)]
    bx: Option<f64>,
    /// Longitudinal component of the optional field point.
    #[arg(long)]
    bz: Option<f64>,
}

enum CliError {
    Usage(String),
    Io(String),
    Numerical(String),
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::Domain(_)
            | CoreError::SpecMismatch(_)
            | CoreError::Capacity(_)
            | CoreError::ConditionViolated { .. } => CliError::Usage(err.to_string()),
            CoreError::NotHermitian { .. } | CoreError::NumericalFailure(_) => {
                CliError::Numerical(err.to_string())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Tangle(args) => cmd_tangle(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::OptimalAngle(args) => cmd_optimal_angle(args),
        Command::MixingCheck(args) => cmd_mixing_check(args),
        Command::ApproxCheck(args) => cmd_approx_check(args),
    }
}

#[derive(Serialize)]
struct SpectrumReport {
    n: usize,
    j: f64,
    bx: f64,
    bz: f64,
    eigenvalues: Vec<f64>,
    /// Eigenvector amplitudes in the standard basis (columns), N = 2 only.
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenvectors: Option<Vec<Vec<Complex64>>>,
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<(), CliError> {
    let (bx, bz) = args.field.components();
    let cfg = RingConfig::new(args.n, args.j, bx, bz)?;
    let spectrum = diagonalize(&cfg.hamiltonian())?;
    let eigenvectors = (args.n == 2).then(|| {
        (0..spectrum.dim())
            .map(|i| spectrum.eigenvector(i))
            .collect()
    });
    let report = Report::new(
        "spectrum",
        SpectrumReport {
            n: args.n,
            j: args.j,
            bx,
            bz,
            eigenvalues: spectrum.eigenvalues().to_vec(),
            eigenvectors,
        },
    );
    println!("{}", report.to_json());
    Ok(())
}

#[derive(Serialize)]
struct TangleReport {
    n: usize,
    j: f64,
    bx: f64,
    bz: f64,
    t: f64,
    pair: PairSelector,
    #[serde(flatten)]
    result: ConcurrenceResult,
}

fn cmd_tangle(args: TangleArgs) -> Result<(), CliError> {
    let cfg = RingConfig::new(args.n, args.j, args.bx, args.bz)?;
    let pair = PairSelector::from_separation(args.pair_sep, args.n)?;
    let result = ring_pair_concurrence(&cfg, args.t, &pair)?;
    let report = Report::new(
        "tangle",
        TangleReport {
            n: args.n,
            j: args.j,
            bx: args.bx,
            bz: args.bz,
            t: args.t,
            pair,
            result,
        },
    );
    println!("{}", report.to_json());
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            ConfigFile::parse(&text).map_err(CliError::Usage)?
        }
        None => ConfigFile::default(),
    };
    let parse_usage = CliError::Usage;

    let kind: GridKind = match args.kind {
        Some(k) => k.into(),
        None => match file.get("kind") {
            Some("b-t") => GridKind::BT,
            Some("bx-bz") => GridKind::BxBz,
            Some("b-theta") => GridKind::BTheta,
            Some(other) => return Err(parse_usage(format!("unknown sweep kind {other:?}"))),
            None => return Err(parse_usage("a sweep kind is required (--kind)".into())),
        },
    };
    let n = match args.n {
        Some(n) => n,
        None => file
            .get_parsed("n")
            .map_err(parse_usage)?
            .ok_or_else(|| parse_usage("the ring size is required (--n)".into()))?,
    };
    let j = resolve(args.j, &file, "j", 1.0)?;
    let pair_sep = resolve(args.pair_sep, &file, "pair-sep", 1)?;
    let temperature = match args.t {
        Some(t) => Some(t),
        None => file.get_parsed("t").map_err(parse_usage)?,
    };

    // Default axis ranges scale with J and bracket all interesting features:
    // fields out to 3J, temperatures from 0.01J to 2J, angles to pi/2.
    let (default1, default2) = match kind {
        GridKind::BT => ((0.0, 3.0 * j), (0.01 * j, 2.0 * j)),
        GridKind::BxBz => ((-3.0 * j, 3.0 * j), (-3.0 * j, 3.0 * j)),
        GridKind::BTheta => ((0.0, 3.0 * j), (0.0, std::f64::consts::FRAC_PI_2)),
    };
    let axis1 = AxisSpec::new(
        resolve(args.axis1_min, &file, "axis1-min", default1.0)?,
        resolve(args.axis1_max, &file, "axis1-max", default1.1)?,
        resolve(args.axis1_steps, &file, "axis1-steps", 101)?,
    );
    let axis2 = AxisSpec::new(
        resolve(args.axis2_min, &file, "axis2-min", default2.0)?,
        resolve(args.axis2_max, &file, "axis2-max", default2.1)?,
        resolve(args.axis2_steps, &file, "axis2-steps", 101)?,
    );

    let spec = SweepSpec {
        n_qubits: n,
        coupling: j,
        pair_separation: pair_sep,
        kind,
        axis1,
        axis2,
        temperature: if kind == GridKind::BT {
            None
        } else {
            temperature
        },
    };
    let grid = run_sweep(&spec)?;

    let out_path = match (&args.out, file.get("out")) {
        (Some(path), _) => Some(path.clone()),
        (None, Some(path)) => Some(PathBuf::from(path)),
        (None, None) => None,
    };
    let format = match (args.format, file.get("format")) {
        (Some(f), _) => f,
        (None, Some("csv")) => OutputFormat::Csv,
        (None, Some("json")) => OutputFormat::Json,
        (None, Some(other)) => return Err(parse_usage(format!("unknown output format {other:?}"))),
        (None, None) => match out_path.as_deref().and_then(Path::extension) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => OutputFormat::Json,
            _ => OutputFormat::Csv,
        },
    };
    let rendered = match format {
        OutputFormat::Csv => grid_to_csv(&grid),
        OutputFormat::Json => grid_to_json(&grid),
    };
    match out_path {
        Some(path) => std::fs::write(&path, rendered)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn resolve<T: std::str::FromStr + Copy>(
    flag: Option<T>,
    file: &ConfigFile,
    key: &str,
    default: T,
) -> Result<T, CliError> {
    match flag {
        Some(v) => Ok(v),
        None => Ok(file
            .get_parsed(key)
            .map_err(CliError::Usage)?
            .unwrap_or(default)),
    }
}

#[derive(Serialize)]
struct OptimalAngleReport {
    b: f64,
    t: f64,
    n: usize,
    pair_separation: usize,
    numeric: AngleValue,
    /// Absent when (B, T) falls outside the validity ellipse of the
    /// closed-form expression; `analytic_error` then says why.
    #[serde(skip_serializing_if = "Option::is_none")]
    analytic: Option<AngleValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    analytic_error: Option<String>,
}

#[derive(Serialize)]
struct AngleValue {
    #[serde(flatten)]
    angle: OptimalAngle,
    tangle: f64,
}

fn cmd_optimal_angle(args: OptimalAngleArgs) -> Result<(), CliError> {
    let pair = PairSelector::from_separation(args.pair_sep, args.n)?;
    let tangle_at = |theta: f64| -> Result<f64, CliError> {
        let cfg = RingConfig::from_polar(args.n, 1.0, args.b, theta)?;
        Ok(ring_pair_concurrence(&cfg, args.t, &pair)?.tangle)
    };
    let numeric = optimal_angle_numeric(args.b, args.t, args.n, &pair)?;
    let numeric = AngleValue {
        tangle: tangle_at(numeric.theta_star)?,
        angle: numeric,
    };
    let (analytic, analytic_error) = match optimal_angle_analytic(args.b, args.t) {
        Ok(angle) => (
            Some(AngleValue {
                tangle: tangle_at(angle.theta_star)?,
                angle,
            }),
            None,
        ),
        Err(err) => (None, Some(err.to_string())),
    };
    let report = Report::new(
        "optimal-angle",
        OptimalAngleReport {
            b: args.b,
            t: args.t,
            n: args.n,
            pair_separation: args.pair_sep,
            numeric,
            analytic,
            analytic_error,
        },
    );
    println!("{}", report.to_json());
    Ok(())
}

#[derive(Serialize)]
struct MixingCheckReport {
    demo: &'static str,
    j: f64,
    bx: f64,
    bz: f64,
    t: f64,
    #[serde(flatten)]
    result: MixingReport,
}

fn cmd_mixing_check(args: MixingCheckArgs) -> Result<(), CliError> {
    let cfg = RingConfig::new(2, args.j, args.bx, args.bz)?;
    let (demo, result) = match args.demo {
        MixingDemo::FourLevel => ("four-level", four_level_counterexample(&cfg, args.t)?),
        MixingDemo::GroundPair => {
            let mut spectrum = diagonalize(&cfg.hamiltonian())?;
            align_degenerate_subspaces(&mut spectrum)?;
            let weights = boltzmann_weights(&spectrum, args.t, 2)?;
            let v0 = spectrum.eigenvector(0);
            let v1 = spectrum.eigenvector(1);
            let pair = PureStatePair::new(
                [v0[0], v0[1], v0[2], v0[3]],
                [v1[0], v1[1], v1[2], v1[3]],
                weights.as_slice()[0],
                weights.as_slice()[1],
            )?;
            ("ground-pair", verify_theorem(&pair)?)
        }
    };
    let report = Report::new(
        "mixing-check",
        MixingCheckReport {
            demo,
            j: args.j,
            bx: args.bx,
            bz: args.bz,
            t: args.t,
            result,
        },
    );
    println!("{}", report.to_json());
    Ok(())
}

#[derive(Serialize)]
struct ApproxCheckReport {
    t: f64,
    optimal_gap: GapComparison,
    #[serde(skip_serializing_if = "Option::is_none")]
    field_point: Option<FieldPointComparison>,
}

#[derive(Serialize)]
struct GapComparison {
    exact_root: f64,
    closed_form: f64,
    relative_difference: f64,
}

#[derive(Serialize)]
struct FieldPointComparison {
    bx: f64,
    bz: f64,
    inputs: ApproxInputs,
    gap: ValuePair,
    ground_energy: ValuePair,
    ground_concurrence: ValuePair,
    optimal_bx_at_this_bz: f64,
}

#[derive(Serialize)]
struct ValuePair {
    approx: f64,
    exact: f64,
}

fn cmd_approx_check(args: ApproxCheckArgs) -> Result<(), CliError> {
    let exact_root = optimal_gap_exact(args.t)?;
    let closed_form = optimal_gap_closed_form(args.t)?;
    let optimal_gap = GapComparison {
        exact_root,
        closed_form,
        relative_difference: ((exact_root - closed_form) / exact_root).abs(),
    };

    let field_point = match (args.bx, args.bz) {
        (None, None) => None,
        (bx, bz) => {
            let (bx, bz) = (bx.unwrap_or(0.0), bz.unwrap_or(0.0));
            let cfg = RingConfig::new(2, 1.0, bx, bz)?;
            let spectrum = diagonalize(&cfg.hamiltonian())?;
            let v0 = spectrum.eigenvector(0);
            Some(FieldPointComparison {
                bx,
                bz,
                inputs: ApproxInputs::new(bx, bz, args.t),
                gap: ValuePair {
                    approx: gap_approx(bx, bz)?,
                    exact: spectrum.gap(),
                },
                ground_energy: ValuePair {
                    approx: ground_energy_approx(bx, bz)?,
                    exact: spectrum.eigenvalues()[0],
                },
                ground_concurrence: ValuePair {
                    approx: ground_concurrence_approx(bx, bz)?,
                    exact: pure_concurrence(&[v0[0], v0[1], v0[2], v0[3]])?,
                },
                optimal_bx_at_this_bz: optimal_bx_analytic(bz, args.t)?,
            })
        }
    };
    let report = Report::new(
        "approx-check",
        ApproxCheckReport {
            t: args.t,
            optimal_gap,
            field_point,
        },
    );
    println!("{}", report.to_json());
    Ok(())
}
