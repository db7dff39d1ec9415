//! Parameter-grid evaluation engine: tangle maps over (B, T), (Bx, Bz) and
//! (B, theta) for arbitrary ring sizes and pair separations.
//!
//! Grid points are independent work items evaluated through the exact
//! pipeline (Hamiltonian, diagonalization, Gibbs state, partial trace,
//! concurrence); results land in preallocated slots keyed by index, so
//! parallel and sequential evaluation produce identical output.

use rayon::prelude::*;
use serde::Serialize;

use crate::entanglement::PairSelector;
use crate::error::{Error, Result};
use crate::hamiltonian::RingConfig;
use crate::ring_pair_concurrence;

/// Largest Hilbert-space dimension the sweep engine will take on.
const MAX_SWEEP_DIM: usize = 1024;

/// Which two parameters a grid scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridKind {
    /// Orthogonal-field amplitude vs temperature.
    BT,
    /// Cartesian field components at fixed temperature.
    BxBz,
    /// Field amplitude vs angle at fixed temperature.
    BTheta,
}

impl GridKind {
    pub fn axis_names(&self) -> (&'static str, &'static str) {
        match self {
            GridKind::BT => ("b", "t"),
            GridKind::BxBz => ("bx", "bz"),
            GridKind::BTheta => ("b", "theta"),
        }
    }
}

/// One linearly spaced axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl AxisSpec {
    pub fn new(min: f64, max: f64, steps: usize) -> Self {
        Self { min, max, steps }
    }

    fn validate(&self, name: &str) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::domain(format!(
                "axis {name} needs at least 2 steps, got {}",
                self.steps
            )));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min <= self.max) {
            return Err(Error::domain(format!(
                "axis {name} range [{}, {}] is not a finite interval",
                self.min, self.max
            )));
        }
        Ok(())
    }

    pub fn value(&self, index: usize) -> f64 {
        self.min + (self.max - self.min) * index as f64 / (self.steps - 1) as f64
    }
}

/// Full description of one sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub n_qubits: usize,
    pub coupling: f64,
    pub pair_separation: usize,
    pub kind: GridKind,
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    /// Fixed temperature for the field-field grids; ignored by the B-T grid
    /// (whose second axis is the temperature).
    pub temperature: Option<f64>,
}

impl SweepSpec {
    fn validate(&self) -> Result<()> {
        if (1usize << self.n_qubits) > MAX_SWEEP_DIM {
            return Err(Error::Capacity(format!(
                "2^{} exceeds the sweep limit of {MAX_SWEEP_DIM} basis states",
                self.n_qubits
            )));
        }
        self.axis1.validate("1")?;
        self.axis2.validate("2")?;
        PairSelector::from_separation(self.pair_separation, self.n_qubits)?;
        match self.kind {
            GridKind::BT => {
                if self.axis2.min < 0.0 {
                    return Err(Error::domain("temperatures on axis 2 must be >= 0"));
                }
            }
            GridKind::BxBz | GridKind::BTheta => match self.temperature {
                Some(t) if t >= 0.0 => {}
                Some(t) => return Err(Error::domain(format!("temperature must be >= 0, got {t}"))),
                None => return Err(Error::domain("field-field grids need a fixed temperature")),
            },
        }
        if matches!(self.kind, GridKind::BT | GridKind::BTheta) && self.axis1.min < 0.0 {
            return Err(Error::domain("field amplitudes on axis 1 must be >= 0"));
        }
        Ok(())
    }

    /// (configuration, temperature) of one grid point.
    fn point(&self, i1: usize, i2: usize) -> Result<(RingConfig, f64)> {
        let x1 = self.axis1.value(i1);
        let x2 = self.axis2.value(i2);
        match self.kind {
            GridKind::BT => Ok((RingConfig::new(self.n_qubits, self.coupling, x1, 0.0)?, x2)),
            GridKind::BxBz => Ok((
                RingConfig::new(self.n_qubits, self.coupling, x1, x2)?,
                self.temperature.expect("validated"),
            )),
            GridKind::BTheta => Ok((
                RingConfig::from_polar(self.n_qubits, self.coupling, x1, x2)?,
                self.temperature.expect("validated"),
            )),
        }
    }
}

/// Sweep metadata carried alongside the values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridMeta {
    pub coupling: f64,
    pub n_qubits: usize,
    pub pair_separation: usize,
    pub temperature: Option<f64>,
    pub library_version: String,
    /// Not populated by default: repeated runs of the same spec must be
    /// byte-identical.
    pub timestamp: Option<String>,
}

/// A completed sweep: the spec echo, a steps1 x steps2 tangle matrix (rows
/// indexed by axis 1), and an optional validity mask for values that came
/// from approximations (always `None` for the exact pipeline used here).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridResult {
    pub spec: SweepSpec,
    pub values: Vec<Vec<f64>>,
    pub validity: Option<Vec<Vec<bool>>>,
    pub meta: GridMeta,
}

impl GridResult {
    pub fn value(&self, i1: usize, i2: usize) -> f64 {
        self.values[i1][i2]
    }

    fn flat_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().flatten().copied()
    }
}

/// Run a sweep with grid points evaluated in parallel.
pub fn run_sweep(spec: &SweepSpec) -> Result<GridResult> {
    spec.validate()?;
    let pair = PairSelector::from_separation(spec.pair_separation, spec.n_qubits)?;
    let rows: Vec<Vec<f64>> = (0..spec.axis1.steps)
        .into_par_iter()
        .map(|i1| {
            (0..spec.axis2.steps)
                .map(|i2| evaluate_point(spec, &pair, i1, i2))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    Ok(assemble(spec, rows))
}

/// Sequential twin of [`run_sweep`]; must produce bit-identical values.
pub fn run_sweep_sequential(spec: &SweepSpec) -> Result<GridResult> {
    spec.validate()?;
    let pair = PairSelector::from_separation(spec.pair_separation, spec.n_qubits)?;
    let rows: Vec<Vec<f64>> = (0..spec.axis1.steps)
        .map(|i1| {
            (0..spec.axis2.steps)
                .map(|i2| evaluate_point(spec, &pair, i1, i2))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    Ok(assemble(spec, rows))
}

fn evaluate_point(spec: &SweepSpec, pair: &PairSelector, i1: usize, i2: usize) -> Result<f64> {
    let (cfg, temperature) = spec.point(i1, i2)?;
    Ok(ring_pair_concurrence(&cfg, temperature, pair)?.tangle)
}

fn assemble(spec: &SweepSpec, values: Vec<Vec<f64>>) -> GridResult {
    GridResult {
        spec: spec.clone(),
        values,
        validity: None,
        meta: GridMeta {
            coupling: spec.coupling,
            n_qubits: spec.n_qubits,
            pair_separation: spec.pair_separation,
            temperature: spec.temperature,
            library_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: None,
        },
    }
}

/// Mean absolute difference between two grids that share everything except
/// the ring size.
pub fn even_odd_distance(a: &GridResult, b: &GridResult) -> Result<f64> {
    let mut spec_b = b.spec.clone();
    spec_b.n_qubits = a.spec.n_qubits;
    if spec_b != a.spec {
        return Err(Error::SpecMismatch(
            "grids must share every parameter except n_qubits".into(),
        ));
    }
    let n = (a.spec.axis1.steps * a.spec.axis2.steps) as f64;
    Ok(a.flat_values()
        .zip(b.flat_values())
        .map(|(x, y)| (x - y).abs())
        .sum::<f64>()
        / n)
}

/// Descriptive statistics comparing nearest-neighbor and next-nearest-
/// neighbor tangle grids over the same parameter plane.
#[derive(Debug, Clone, Serialize)]
pub struct ComplementarityReport {
    pub n_points: usize,
    pub mean_nearest: f64,
    pub mean_next_nearest: f64,
    /// Mean of the pointwise product of the two grids.
    pub mean_product: f64,
    /// Pearson correlation; `None` when either grid has no variance.
    pub correlation: Option<f64>,
    /// Fraction of points where both grids sit above their own means.
    pub joint_high_fraction: f64,
}

/// Quantify how the high-tangle regions of an a = 1 grid relate to those of
/// an a = 2 grid on the same (odd) ring. Negative correlation means the two
/// separations light up complementary regions of the parameter plane.
pub fn complementarity_report(
    nearest: &GridResult,
    next_nearest: &GridResult,
) -> Result<ComplementarityReport> {
    if nearest.spec.n_qubits != next_nearest.spec.n_qubits {
        return Err(Error::SpecMismatch("grids must share the ring size".into()));
    }
    if nearest.spec.n_qubits.is_multiple_of(2) {
        return Err(Error::domain(
            "the complementarity comparison targets odd rings",
        ));
    }
    let mut spec_b = next_nearest.spec.clone();
    spec_b.pair_separation = nearest.spec.pair_separation;
    if spec_b != nearest.spec
        || nearest.spec.pair_separation != 1
        || next_nearest.spec.pair_separation != 2
    {
        return Err(Error::SpecMismatch(
            "expected identical grids with pair separations 1 and 2".into(),
        ));
    }

    let xs: Vec<f64> = nearest.flat_values().collect();
    let ys: Vec<f64> = next_nearest.flat_values().collect();
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    let mut product = 0.0;
    let mut joint_high = 0usize;
    for (x, y) in xs.iter().zip(&ys) {
        cov += (x - mean_x) * (y - mean_y);
        var_x += (x - mean_x) * (x - mean_x);
        var_y += (y - mean_y) * (y - mean_y);
        product += x * y;
        if *x > mean_x && *y > mean_y {
            joint_high += 1;
        }
    }
    let correlation = if var_x > 0.0 && var_y > 0.0 {
        Some(cov / (var_x.sqrt() * var_y.sqrt()))
    } else {
        None
    };
    Ok(ComplementarityReport {
        n_points: xs.len(),
        mean_nearest: mean_x,
        mean_next_nearest: mean_y,
        mean_product: product / n,
        correlation,
        joint_high_fraction: joint_high as f64 / n,
    })
}
