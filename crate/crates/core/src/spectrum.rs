//! Power spectral densities of the aggregate network emission and the
//! spectral outage probability (SOP).
//!
//! Each node transmits a WSS pulse train with PSD `P·|G(f)|²`. A WSSUS
//! channel convolves it with the Doppler power spectrum, and the field
//! scales the result by the aggregate `A`, so that for fixed `f` the
//! received PSD is `A·s(f)` with `s = D_h ∗ S_X`. The SOP at `f` is then
//! `P{A·s(f) > m(f)} = 1 - F_A(m(f)/s(f))`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::capacity::OutageEstimate;
use crate::error::{domain, invalid, Result};
use crate::field::{sample_aggregate, FieldModel};
use crate::mc::{map_indexed, MonteCarlo};
use crate::numerics::{integrate, integrate_breakpoints, QuadratureSpec};
use crate::stable::{self, interference_stable_params, StableParams};
use crate::units::dbm_to_watts;

/// Tolerance on the unit-mass / unit-energy normalizations.
pub const NORMALIZATION_TOL: f64 = 1e-6;

/// `sin(πx)/(πx)`, exactly zero at nonzero integers.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let n = x.round();
    let r = x - n;
    if r == 0.0 {
        return 0.0;
    }
    let s = (PI * r).sin();
    let s = if (n as i64).rem_euclid(2) == 0 { s } else { -s };
    s / (PI * x)
}

// ---------------------------------------------------------------------------
// Pulses

/// Unit-energy baseband pulse shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PulseShape {
    /// `g(t) = 1/√T` on `[0, T]`.
    Square { period: f64 },
    /// `g(t) = √(2/(3T))·(1 - cos(2πt/T))` on `[0, T]`.
    Hanning { period: f64 },
    /// `|G(f)|²` sampled at increasing frequencies, linearly interpolated
    /// and zero outside the table.
    Tabulated { table: Vec<(f64, f64)> },
}

impl PulseShape {
    pub fn square(period: f64) -> Result<Self> {
        let p = PulseShape::Square { period };
        p.validate()?;
        Ok(p)
    }

    pub fn hanning(period: f64) -> Result<Self> {
        let p = PulseShape::Hanning { period };
        p.validate()?;
        Ok(p)
    }

    pub fn tabulated(table: Vec<(f64, f64)>) -> Result<Self> {
        let p = PulseShape::Tabulated { table };
        p.validate()?;
        Ok(p)
    }

    /// Checks the parameters and that the pulse has unit energy: in the
    /// time domain for the analytic shapes, by the trapezoid rule (exact
    /// for the interpolant) for tables.
    pub fn validate(&self) -> Result<()> {
        let energy = match self {
            PulseShape::Square { period } | PulseShape::Hanning { period } => {
                if !(*period > 0.0) || !period.is_finite() {
                    return invalid(format!("pulse period must be positive, got {period}"));
                }
                let spec = QuadratureSpec::default();
                integrate(|t| self.time_domain(t).powi(2), 0.0, *period, &spec)?
            }
            PulseShape::Tabulated { table } => {
                check_table(table, "pulse table")?;
                if table.iter().any(|&(_, v)| v < 0.0) {
                    return invalid("pulse table has negative |G(f)|^2");
                }
                trapezoid(table)
            }
        };
        if (energy - 1.0).abs() > NORMALIZATION_TOL {
            return invalid(format!("pulse energy {energy} is not 1"));
        }
        Ok(())
    }

    pub fn period(&self) -> Option<f64> {
        match self {
            PulseShape::Square { period } | PulseShape::Hanning { period } => Some(*period),
            PulseShape::Tabulated { .. } => None,
        }
    }

    /// `g(t)` for the analytic shapes (zero for tables, which are
    /// frequency-domain only).
    pub fn time_domain(&self, t: f64) -> f64 {
        match *self {
            PulseShape::Square { period } => {
                if (0.0..=period).contains(&t) {
                    1.0 / period.sqrt()
                } else {
                    0.0
                }
            }
            PulseShape::Hanning { period } => {
                if (0.0..=period).contains(&t) {
                    (2.0 / (3.0 * period)).sqrt() * (1.0 - (2.0 * PI * t / period).cos())
                } else {
                    0.0
                }
            }
            PulseShape::Tabulated { .. } => 0.0,
        }
    }

    /// `|G(f)|²` (units of 1/Hz).
    pub fn energy_spectrum(&self, f: f64) -> f64 {
        match self {
            PulseShape::Square { period } => {
                let s = sinc(f * period);
                period * s * s
            }
            PulseShape::Hanning { period } => {
                let x = f * period;
                let a = sinc(x) + 0.5 * sinc(x - 1.0) + 0.5 * sinc(x + 1.0);
                2.0 * period / 3.0 * a * a
            }
            PulseShape::Tabulated { table } => interpolate(table, f),
        }
    }

    fn label(&self) -> String {
        match self {
            PulseShape::Square { period } => format!("square(T={period:e})"),
            PulseShape::Hanning { period } => format!("hanning(T={period:e})"),
            PulseShape::Tabulated { table } => format!("tabulated({} pts)", table.len()),
        }
    }
}

/// Transmit PSD `S_X(f) = P·|G(f)|²` in W/Hz.
pub fn tx_psd(power: f64, pulse: &PulseShape, f: f64) -> f64 {
    power * pulse.energy_spectrum(f)
}

fn check_table(table: &[(f64, f64)], what: &str) -> Result<()> {
    if table.len() < 2 {
        return invalid(format!("{what} needs at least two rows"));
    }
    if table.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite()) {
        return invalid(format!("{what} has non-finite entries"));
    }
    if table.windows(2).any(|w| w[1].0 <= w[0].0) {
        return invalid(format!("{what} frequencies must be strictly increasing"));
    }
    Ok(())
}

fn trapezoid(table: &[(f64, f64)]) -> f64 {
    table
        .windows(2)
        .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
        .sum()
}

fn interpolate(table: &[(f64, f64)], x: f64) -> f64 {
    let first = table[0].0;
    let last = table[table.len() - 1].0;
    if x < first || x > last {
        return 0.0;
    }
    let i = table.partition_point(|&(t, _)| t <= x);
    if i == 0 {
        return table[0].1;
    }
    if i >= table.len() {
        return table[table.len() - 1].1;
    }
    let (x0, y0) = table[i - 1];
    let (x1, y1) = table[i];
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

/// Parses two-column numeric text (`x y` per line, whitespace or comma
/// separated). `#` starts a comment; blank lines are skipped.
pub fn parse_two_column(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut rows = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect();
        if fields.len() != 2 {
            return invalid(format!("line {}: expected two columns, got {}", n + 1, fields.len()));
        }
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| crate::Error::Invalid(format!("line {}: bad number {s:?}", n + 1)))
        };
        rows.push((parse(fields[0])?, parse(fields[1])?));
    }
    if rows.is_empty() {
        return invalid("table has no rows");
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Doppler

/// Doppler power spectrum of a WSSUS channel, normalized to unit mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DopplerSpectrum {
    /// Time-invariant channel, `δ(ν)`.
    Delta,
    /// Pure Doppler shift, `δ(ν - f0)`.
    ShiftedDelta { f0: f64 },
    /// Density sampled at increasing `ν`, linearly interpolated.
    Tabulated { table: Vec<(f64, f64)> },
}

impl DopplerSpectrum {
    pub fn tabulated(table: Vec<(f64, f64)>) -> Result<Self> {
        let d = DopplerSpectrum::Tabulated { table };
        d.validate()?;
        Ok(d)
    }

    /// Rectangular Doppler spectrum of total width `width` centred at 0.
    pub fn rectangular(width: f64) -> Result<Self> {
        if !(width > 0.0) {
            return invalid(format!("Doppler width must be positive, got {width}"));
        }
        let h = 1.0 / width;
        Self::tabulated(vec![
            (-0.5 * width, h),
            (0.5 * width, h),
        ])
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            DopplerSpectrum::Delta => Ok(()),
            DopplerSpectrum::ShiftedDelta { f0 } => {
                if f0.is_finite() {
                    Ok(())
                } else {
                    invalid("Doppler shift must be finite")
                }
            }
            DopplerSpectrum::Tabulated { table } => {
                check_table(table, "Doppler table")?;
                if table.iter().any(|&(_, v)| v < 0.0) {
                    return invalid("Doppler table has negative density");
                }
                let mass = trapezoid(table);
                if (mass - 1.0).abs() > NORMALIZATION_TOL {
                    return invalid(format!("Doppler spectrum mass {mass} is not 1"));
                }
                Ok(())
            }
        }
    }

    fn label(&self) -> String {
        match self {
            DopplerSpectrum::Delta => "delta".into(),
            DopplerSpectrum::ShiftedDelta { f0 } => format!("shifted_delta({f0:e})"),
            DopplerSpectrum::Tabulated { table } => format!("tabulated({} pts)", table.len()),
        }
    }
}

/// Output PSD of a WSSUS channel: `(D_h ∗ S_u)(f)`.
pub fn wssus_output_psd<F: Fn(f64) -> f64>(
    doppler: &DopplerSpectrum,
    input_psd: F,
    f: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    match doppler {
        DopplerSpectrum::Delta => Ok(input_psd(f)),
        DopplerSpectrum::ShiftedDelta { f0 } => Ok(input_psd(f - f0)),
        DopplerSpectrum::Tabulated { table } => {
            let nu: Vec<f64> = table.iter().map(|&(v, _)| v).collect();
            integrate_breakpoints(|v| interpolate(table, v) * input_psd(f - v), &nu, spec)
        }
    }
}

/// Power in `[-half_width, half_width]` of a PSD, integrated piecewise on
/// breakpoints every `step` Hz (e.g. the pulse's lobe spacing `1/T`).
pub fn integrate_power<F: Fn(f64) -> f64>(
    psd: F,
    half_width: f64,
    step: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(half_width > 0.0) || !(step > 0.0) || !half_width.is_finite() {
        return invalid("integration window and step must be positive");
    }
    let n = (half_width / step).ceil() as usize;
    if n > 1_000_000 {
        return invalid("too many integration segments");
    }
    let mut pts: Vec<f64> = (0..=2 * n).map(|k| -half_width + k as f64 * half_width / n as f64).collect();
    pts[2 * n] = half_width;
    integrate_breakpoints(psd, &pts, spec)
}

// ---------------------------------------------------------------------------
// Emission model

/// Emission of one homogeneous network of nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct EmissionModel {
    /// Transmit power per node (W).
    pub power: f64,
    pub pulse: PulseShape,
    pub doppler: DopplerSpectrum,
    pub stable_params: StableParams,
}

impl EmissionModel {
    pub fn new(
        power: f64,
        pulse: PulseShape,
        doppler: DopplerSpectrum,
        stable_params: StableParams,
    ) -> Result<Self> {
        if !(power > 0.0) || !power.is_finite() {
            return invalid(format!("transmit power must be positive, got {power}"));
        }
        pulse.validate()?;
        doppler.validate()?;
        if stable_params.beta() != 1.0 || !(stable_params.alpha() > 0.0 && stable_params.alpha() < 1.0) {
            return invalid(format!(
                "emission needs a positive stable law (beta = 1, alpha in (0,1)), got {stable_params:?}"
            ));
        }
        Ok(Self {
            power,
            pulse,
            doppler,
            stable_params,
        })
    }

    /// Emission of a Poisson field with density `lambda`, loss exponent `b`
    /// and shadowing `sigma` (nepers).
    pub fn from_field(
        power: f64,
        pulse: PulseShape,
        doppler: DopplerSpectrum,
        lambda: f64,
        b: f64,
        sigma: f64,
    ) -> Result<Self> {
        Self::new(power, pulse, doppler, interference_stable_params(lambda, b, sigma)?)
    }

    /// `s(f) = (D_h ∗ S_X)(f)`, the per-unit-`A` received PSD.
    pub fn unit_psd(&self, f: f64, spec: &QuadratureSpec) -> Result<f64> {
        wssus_output_psd(&self.doppler, |x| tx_psd(self.power, &self.pulse, x), f, spec)
    }

    pub fn label(&self) -> String {
        format!(
            "P={:e}W {} doppler={} alpha={} gamma={:e}",
            self.power,
            self.pulse.label(),
            self.doppler.label(),
            self.stable_params.alpha(),
            self.stable_params.gamma()
        )
    }
}

/// One sample path of the aggregate PSD for a realization `A`.
pub fn aggregate_psd_sample(
    a_value: f64,
    emission: &EmissionModel,
    f: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(a_value >= 0.0) {
        return domain(format!("aggregate must be >= 0, got {a_value}"));
    }
    Ok(a_value * emission.unit_psd(f, spec)?)
}

// ---------------------------------------------------------------------------
// Masks

/// Outage (or detection) threshold `m(f)`, specified in dBm/Hz.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectralMask {
    Constant { level_dbm_hz: f64 },
    /// Breakpoints `(f_Hz, dBm/Hz)`, linear in dB between them and held
    /// constant beyond the ends.
    PiecewiseLinear { points: Vec<(f64, f64)> },
    /// `floor + (peak - floor)·exp(-(f - center)²/(2 width²))`, in dB.
    Gaussian {
        peak_dbm_hz: f64,
        floor_dbm_hz: f64,
        center_hz: f64,
        width_hz: f64,
    },
}

impl SpectralMask {
    pub fn constant(level_dbm_hz: f64) -> Result<Self> {
        let m = SpectralMask::Constant { level_dbm_hz };
        m.validate()?;
        Ok(m)
    }

    pub fn piecewise_linear(points: Vec<(f64, f64)>) -> Result<Self> {
        let m = SpectralMask::PiecewiseLinear { points };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SpectralMask::Constant { level_dbm_hz } => {
                if !level_dbm_hz.is_finite() {
                    return invalid("mask level must be finite");
                }
            }
            SpectralMask::PiecewiseLinear { points } => {
                if points.len() == 1 {
                    if !points[0].1.is_finite() {
                        return invalid("mask level must be finite");
                    }
                } else {
                    check_table(points, "mask")?;
                }
            }
            SpectralMask::Gaussian {
                peak_dbm_hz,
                floor_dbm_hz,
                center_hz,
                width_hz,
            } => {
                if ![peak_dbm_hz, floor_dbm_hz, center_hz].iter().all(|v| v.is_finite())
                    || !(*width_hz > 0.0)
                {
                    return invalid("gaussian mask needs finite levels and width > 0");
                }
            }
        }
        Ok(())
    }

    /// Level in dBm/Hz.
    pub fn level_dbm_hz(&self, f: f64) -> f64 {
        match self {
            SpectralMask::Constant { level_dbm_hz } => *level_dbm_hz,
            SpectralMask::PiecewiseLinear { points } => {
                let (first, last) = (points[0], points[points.len() - 1]);
                if f <= first.0 {
                    first.1
                } else if f >= last.0 {
                    last.1
                } else {
                    interpolate(points, f)
                }
            }
            SpectralMask::Gaussian {
                peak_dbm_hz,
                floor_dbm_hz,
                center_hz,
                width_hz,
            } => {
                let z = (f - center_hz) / width_hz;
                floor_dbm_hz + (peak_dbm_hz - floor_dbm_hz) * (-0.5 * z * z).exp()
            }
        }
    }

    /// `m(f)` in W/Hz.
    pub fn eval(&self, f: f64) -> f64 {
        dbm_to_watts(self.level_dbm_hz(f))
    }

    pub fn label(&self) -> String {
        match self {
            SpectralMask::Constant { level_dbm_hz } => format!("constant({level_dbm_hz} dBm/Hz)"),
            SpectralMask::PiecewiseLinear { points } => format!("piecewise_linear({} pts)", points.len()),
            SpectralMask::Gaussian { peak_dbm_hz, width_hz, .. } => {
                format!("gaussian(peak {peak_dbm_hz} dBm/Hz, width {width_hz:e} Hz)")
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Spectral outage

/// SOP for a positive-stable aggregate given `s(f)` and `m(f)`.
fn sop_from_levels(params: &StableParams, s: f64, m: f64, spec: &QuadratureSpec) -> Result<f64> {
    if s <= 0.0 {
        return Ok(0.0);
    }
    stable::sf(params, m / s, spec)
}

/// `P{S_Y(f) > m(f)} = 1 - F_A(m(f)/s(f))`; zero where `s(f) = 0`.
pub fn sop(
    emission: &EmissionModel,
    mask: &SpectralMask,
    f: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let s = emission.unit_psd(f, spec)?;
    sop_from_levels(&emission.stable_params, s, mask.eval(f), spec)
}

/// SOP evaluated over a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SopCurve {
    pub frequencies: Vec<f64>,
    pub sop: Vec<f64>,
    pub mask_id: String,
    pub model_id: String,
}

/// `n` uniform points spanning `[-4/T, 4/T]`.
pub fn default_grid(period: f64, n: usize) -> Vec<f64> {
    let half = 4.0 / period;
    if n == 1 {
        return vec![0.0];
    }
    (0..n)
        .map(|i| -half + 2.0 * half * i as f64 / (n - 1) as f64)
        .collect()
}

/// Pointwise SOP over `f_grid`. CDF evaluations are shared between grid
/// points with the same threshold ratio `m(f)/s(f)`.
pub fn sop_curve(
    emission: &EmissionModel,
    mask: &SpectralMask,
    f_grid: &[f64],
    spec: &QuadratureSpec,
    workers: usize,
) -> Result<SopCurve> {
    if f_grid.is_empty() {
        return invalid("frequency grid is empty");
    }
    if f_grid.windows(2).any(|w| w[1] <= w[0]) {
        return invalid("frequency grid must be strictly increasing");
    }
    let ratios: Vec<Option<f64>> = f_grid
        .iter()
        .map(|&f| {
            let s = emission.unit_psd(f, spec)?;
            Ok(if s > 0.0 { Some(mask.eval(f) / s) } else { None })
        })
        .collect::<Result<_>>()?;

    let mut unique: BTreeMap<u64, f64> = BTreeMap::new();
    for r in ratios.iter().flatten() {
        unique.entry(r.to_bits()).or_insert(*r);
    }
    let keys: Vec<f64> = unique.values().copied().collect();
    let params = emission.stable_params;
    let values = map_indexed(keys.len(), workers, |i| stable::sf(&params, keys[i], spec));
    let mut cache: BTreeMap<u64, f64> = BTreeMap::new();
    for (k, v) in keys.iter().zip(values) {
        cache.insert(k.to_bits(), v?);
    }
    let sop = ratios
        .iter()
        .map(|r| r.map_or(0.0, |r| cache[&r.to_bits()]))
        .collect();
    Ok(SopCurve {
        frequencies: f_grid.to_vec(),
        sop,
        mask_id: mask.label(),
        model_id: emission.label(),
    })
}

/// Brute-force SOP estimate `P{A·s > m}` with `A` drawn from the field simulator.
pub fn sop_field_estimate(field: &FieldModel, s: f64, m: f64, mc: &MonteCarlo) -> OutageEstimate {
    let hits = mc.run(|_, rng| sample_aggregate(field, rng) * s > m);
    OutageEstimate::from_count(hits.iter().filter(|&&h| h).count(), mc.n_trials)
}

// ---------------------------------------------------------------------------
// Heterogeneous networks

/// One of `K` co-located networks: a node belongs to it with probability `weight`.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkComponent {
    pub weight: f64,
    pub power: f64,
    pub pulse: PulseShape,
    pub doppler: DopplerSpectrum,
    pub b: f64,
    pub sigma: f64,
}

impl NetworkComponent {
    /// Emission of this network when the total density is `total_lambda`.
    pub fn emission(&self, total_lambda: f64) -> Result<EmissionModel> {
        EmissionModel::from_field(
            self.power,
            self.pulse.clone(),
            self.doppler.clone(),
            total_lambda * self.weight,
            self.b,
            self.sigma,
        )
    }
}

fn validate_networks(networks: &[NetworkComponent], total_lambda: f64) -> Result<Vec<EmissionModel>> {
    if networks.is_empty() {
        return invalid("need at least one network");
    }
    let sum: f64 = networks.iter().map(|n| n.weight).sum();
    if (sum - 1.0).abs() > 1e-9 {
        return invalid(format!("network weights sum to {sum}, not 1"));
    }
    if networks.iter().any(|n| !(n.weight > 0.0)) {
        return invalid("network weights must be positive");
    }
    let (b, sigma) = (networks[0].b, networks[0].sigma);
    if networks.iter().any(|n| n.b != b || n.sigma != sigma) {
        return invalid("all networks must share b and sigma");
    }
    networks.iter().map(|n| n.emission(total_lambda)).collect()
}

/// Stable law of `Σ_k A_k s_k(f)`: `S(1/b, 1, Σ_k γ_k s_k(f)^{1/b})`.
/// Returns `None` when every `s_k(f)` vanishes.
pub fn heterogeneous_law(
    networks: &[NetworkComponent],
    total_lambda: f64,
    f: f64,
    spec: &QuadratureSpec,
) -> Result<Option<StableParams>> {
    let emissions = validate_networks(networks, total_lambda)?;
    let alpha = emissions[0].stable_params.alpha();
    let mut gamma = 0.0;
    for e in &emissions {
        let s = e.unit_psd(f, spec)?;
        if s > 0.0 {
            gamma += e.stable_params.gamma() * s.powf(alpha);
        }
    }
    if gamma == 0.0 {
        return Ok(None);
    }
    Ok(Some(StableParams::new(alpha, 1.0, gamma)?))
}

/// SOP of the superposition of `K` networks splitting a Poisson field of
/// density `total_lambda`.
pub fn sop_heterogeneous(
    networks: &[NetworkComponent],
    total_lambda: f64,
    mask: &SpectralMask,
    f: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    match heterogeneous_law(networks, total_lambda, f, spec)? {
        None => Ok(0.0),
        Some(law) => stable::sf(&law, mask.eval(f), spec),
    }
}

/// Monte Carlo counterpart of [`sop_heterogeneous`]: draws each `A_k`
/// independently from its own stable law and thresholds `Σ A_k s_k(f)`.
pub fn sop_heterogeneous_mc(
    networks: &[NetworkComponent],
    total_lambda: f64,
    mask: &SpectralMask,
    f: f64,
    spec: &QuadratureSpec,
    mc: &MonteCarlo,
) -> Result<OutageEstimate> {
    let emissions = validate_networks(networks, total_lambda)?;
    let levels: Vec<(StableParams, f64)> = emissions
        .iter()
        .map(|e| Ok((e.stable_params, e.unit_psd(f, spec)?)))
        .collect::<Result<_>>()?;
    let m = mask.eval(f);
    let hits = mc.run(|_, rng| {
        let total: f64 = levels
            .iter()
            .map(|(p, s)| stable::sample(p, rng) * s)
            .sum();
        total > m
    });
    Ok(OutageEstimate::from_count(
        hits.iter().filter(|&&h| h).count(),
        mc.n_trials,
    ))
}
