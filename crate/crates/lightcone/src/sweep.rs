//! Parameter sweeps over `(x, z)` and the figure presets.

use std::fmt;

use lightcone_core::kernels::CUTOFF_SHIFT_LIMIT;
use lightcone_core::two_photon::two_photon_bilinears;
use lightcone_core::vacuum::{concurrence_vacuum, eval_a, eval_b};
use lightcone_core::{Complex64, Kinematics, ModelParams};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    Vacuum,
    TwoPhoton,
}

impl Channel {
    pub fn as_str(self) -> &'static str {
        match self {
            Channel::Vacuum => "vacuum",
            Channel::TwoPhoton => "two_photon",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The swept coordinate. Curves hold `z` fixed when sweeping `x`, and `Ωt`
/// fixed when sweeping `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    X,
    Z,
}

impl SweepVar {
    pub fn label(self) -> &'static str {
        match self {
            SweepVar::X => "x",
            SweepVar::Z => "z",
        }
    }

    pub fn curve_label(self) -> &'static str {
        match self {
            SweepVar::X => "z",
            SweepVar::Z => "Ωt",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub channel: Channel,
    pub sweep_var: SweepVar,
    pub fixed_values: Vec<f64>,
    /// `(lo, hi, n_points)`, endpoints included.
    pub range: (f64, f64, usize),
    pub params: ModelParams,
    /// Also report the concurrence shift when the cutoff is doubled.
    pub sensitivity: bool,
    /// Add log-spaced points approaching `x = 1` from both sides.
    pub cone_refinement: bool,
}

#[derive(Debug, Error, PartialEq)]
pub enum SweepError {
    #[error("the curve list is empty")]
    NoCurves,
    #[error("range must satisfy lo < hi (got {lo} .. {hi})")]
    BadRange { lo: f64, hi: f64 },
    #[error("need at least two points per curve (got {0})")]
    TooFewPoints(usize),
    #[error("sweep values must be finite and positive (got {0})")]
    NonPositive(f64),
    #[error(transparent)]
    Model(#[from] lightcone_core::Error),
    #[error("thread pool: {0}")]
    Threads(String),
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), SweepError> {
        let (lo, hi, n) = self.range;
        if self.fixed_values.is_empty() {
            return Err(SweepError::NoCurves);
        }
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(SweepError::BadRange { lo, hi });
        }
        if n < 2 {
            return Err(SweepError::TooFewPoints(n));
        }
        for &v in self.fixed_values.iter().chain([&lo, &hi]) {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SweepError::NonPositive(v));
            }
        }
        self.params.validate()?;
        Ok(())
    }

    /// The points of one curve in ascending order of the swept variable.
    pub fn curve_points(&self, fixed: f64) -> Vec<f64> {
        let (lo, hi, n) = self.range;
        let mut pts: Vec<f64> = (0..n)
            .map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
            .collect();
        if self.cone_refinement {
            // the cone sits at x = 1, i.e. z = Ωt on a fixed-Ωt curve
            let cone = match self.sweep_var {
                SweepVar::X => 1.0,
                SweepVar::Z => fixed,
            };
            pts.push(cone);
            for step in 0..=200 {
                let delta = 10f64.powf(-2.0 - 0.05 * step as f64);
                pts.push(cone * (1.0 - delta));
                pts.push(cone * (1.0 + delta));
            }
            pts.retain(|&v| v >= lo && v <= hi);
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    pub fn kinematics(&self, fixed: f64, value: f64) -> Result<Kinematics, lightcone_core::Error> {
        match self.sweep_var {
            SweepVar::X => Kinematics::new(value, fixed),
            SweepVar::Z => Kinematics::from_omega_t(value, fixed),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub channel: Channel,
    pub curve: usize,
    pub x: f64,
    pub z: f64,
    pub omega_t: f64,
    pub concurrence: Option<f64>,
    /// `1 + a` (vacuum) or `Σ f g*` (two photons).
    pub amp1: Option<Complex64>,
    /// `b` (vacuum) or `(Σ|f|², Σ|g|²)` stored as real and imaginary parts.
    pub amp2: Option<Complex64>,
    pub on_cone: bool,
    pub cutoff_sensitivity: Option<f64>,
    pub error: Option<String>,
}

impl Row {
    fn blank(channel: Channel, curve: usize, x: f64, z: f64) -> Self {
        Row {
            channel,
            curve,
            x,
            z,
            omega_t: z / x,
            concurrence: None,
            amp1: None,
            amp2: None,
            on_cone: false,
            cutoff_sensitivity: None,
            error: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub spec: SweepSpec,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn error_count(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }

    /// Rows of one curve, in sweep order.
    pub fn curve(&self, idx: usize) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(move |r| r.curve == idx)
    }
}

fn vacuum_row(params: &ModelParams, k: &Kinematics, sensitivity: bool, row: &mut Row) -> lightcone_core::Result<()> {
    row.on_cone = k.on_cone();
    let a = eval_a(params, k)?;
    row.amp1 = Some(Complex64::new(1.0, 0.0) + a);
    if !row.on_cone {
        row.amp2 = Some(eval_b(params, k)?);
    }
    let c = concurrence_vacuum(params, k)?;
    row.concurrence = Some(c);
    if sensitivity {
        let doubled = concurrence_vacuum(&params.with_scaled_cutoff(2.0), k)?;
        row.cutoff_sensitivity = Some(doubled - c);
    }
    Ok(())
}

fn two_photon_row(params: &ModelParams, k: &Kinematics, sensitivity: bool, row: &mut Row) -> lightcone_core::Result<()> {
    row.on_cone = k.on_cone();
    let b = two_photon_bilinears(params, k)?;
    let c = b.concurrence()?;
    row.amp1 = Some(b.fg);
    row.amp2 = Some(Complex64::new(b.f2, b.g2));
    row.concurrence = Some(c);
    if sensitivity {
        let doubled = two_photon_bilinears(&params.with_scaled_cutoff(2.0), k)?;
        row.cutoff_sensitivity = Some(doubled.concurrence()? - c);
    }
    Ok(())
}

/// Evaluate one grid point. Failures land in the row's error column.
pub fn evaluate(spec: &SweepSpec, curve: usize, value: f64) -> Row {
    let fixed = spec.fixed_values[curve];
    let k = match spec.kinematics(fixed, value) {
        Ok(k) => k,
        Err(e) => {
            let (x, z) = match spec.sweep_var {
                SweepVar::X => (value, fixed),
                SweepVar::Z => (value / fixed, value),
            };
            let mut row = Row::blank(spec.channel, curve, x, z);
            row.error = Some(e.to_string());
            return row;
        }
    };
    let mut row = Row::blank(spec.channel, curve, k.x(), k.z());
    row.omega_t = k.omega_t();
    let result = match spec.channel {
        Channel::Vacuum => vacuum_row(&spec.params, &k, spec.sensitivity, &mut row),
        Channel::TwoPhoton => two_photon_row(&spec.params, &k, spec.sensitivity, &mut row),
    };
    if let Err(e) = result {
        row.concurrence = None;
        row.error = Some(e.to_string());
    }
    row
}

/// Every grid point, in output order.
pub fn grid(spec: &SweepSpec) -> Vec<(usize, f64)> {
    spec.fixed_values
        .iter()
        .enumerate()
        .flat_map(|(curve, &fixed)| spec.curve_points(fixed).into_iter().map(move |v| (curve, v)))
        .collect()
}

/// Run a sweep on `threads` workers (all available cores when `None`).
/// Rows come back in grid order whatever the thread count.
pub fn run_sweep(spec: &SweepSpec, threads: Option<usize>) -> Result<Table, SweepError> {
    spec.validate()?;
    let points = grid(spec);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build().map_err(|e| SweepError::Threads(e.to_string()))?;
    let rows = pool.install(|| {
        points.par_iter().map(|&(curve, value)| evaluate(spec, curve, value)).collect()
    });
    Ok(Table { spec: spec.clone(), rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Fig1, Preset::Fig2, Preset::Fig3, Preset::Fig4];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
        }
    }

    /// Figures 1/3 sweep `x ∈ [0.2, 2]` at `z = 5, 10, 15`; figures 2/4
    /// sweep `z ∈ [1, 20]` at `Ωt = 6, 9, 12`. 400 points per curve.
    pub fn spec(self, params: ModelParams) -> SweepSpec {
        let (channel, sweep_var) = match self {
            Preset::Fig1 => (Channel::Vacuum, SweepVar::X),
            Preset::Fig2 => (Channel::Vacuum, SweepVar::Z),
            Preset::Fig3 => (Channel::TwoPhoton, SweepVar::X),
            Preset::Fig4 => (Channel::TwoPhoton, SweepVar::Z),
        };
        let (fixed_values, range) = match sweep_var {
            SweepVar::X => (vec![5.0, 10.0, 15.0], (0.2, 2.0, 400)),
            SweepVar::Z => (vec![6.0, 9.0, 12.0], (1.0, 20.0, 400)),
        };
        SweepSpec {
            channel,
            sweep_var,
            fixed_values,
            range,
            params,
            sensitivity: true,
            cone_refinement: channel == Channel::Vacuum,
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown preset `{s}`"))
    }
}

/// Whether a same-run cutoff shift is large enough to flag.
pub fn cutoff_flag(row: &Row) -> bool {
    match (row.cutoff_sensitivity, row.concurrence) {
        (Some(d), Some(c)) if c > 0.0 => d.abs() > CUTOFF_SHIFT_LIMIT * c,
        (Some(d), _) => d != 0.0,
        _ => false,
    }
}
