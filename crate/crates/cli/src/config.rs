//! Experiment configuration: a single JSON document in dB-friendly units.
//!
//! A run starts from the defaults for its experiment (the reference
//! parameters), deep-merges the user's JSON over them and then applies
//! command-line overrides. Sweep axes, series, pulses, Doppler spectra and
//! masks are replaced wholesale rather than merged key by key.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use pfield_core::spectrum::{parse_two_column, NetworkComponent};
use pfield_core::units::{db_to_linear, dbm_to_watts, sigma_db_to_nepers};
use pfield_core::{
    CapacityVariant, DopplerSpectrum, EmissionModel, FarField, FieldModel, Inr, ProbeLink,
    PulseShape, SpectralMask, VxConvention,
};

/// Keys whose values replace the default instead of merging into it.
const ATOMIC_KEYS: &[&str] = &["sweep", "series", "pulse", "doppler", "mask"];

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{0}")]
    Invalid(String),
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parsing config: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Model(#[from] pfield_core::Error),
}

fn bad<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError::Invalid(msg.into()))
}

/// A real number that may also be `"inf"` or `"-inf"` in JSON.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else if self.0 == f64::INFINITY {
            s.serialize_str("inf")
        } else if self.0 == f64::NEG_INFINITY {
            s.serialize_str("-inf")
        } else {
            s.serialize_str("nan")
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Num;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number, \"inf\" or \"-inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Num, E> {
                Ok(Num(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Num, E> {
                Ok(Num(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
                Ok(Num(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Num, E> {
                match v.trim().to_ascii_lowercase().as_str() {
                    "inf" | "+inf" | "infinity" => Ok(Num(f64::INFINITY)),
                    "-inf" | "-infinity" => Ok(Num(f64::NEG_INFINITY)),
                    other => other
                        .parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .map(Num)
                        .ok_or_else(|| E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    CapacityOutage,
    Sop,
    Psd,
    ValidateStable,
    ValidateCapacity,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::CapacityOutage => "capacity-outage",
            Experiment::Sop => "sop",
            Experiment::Psd => "psd",
            Experiment::ValidateStable => "validate-stable",
            Experiment::ValidateCapacity => "validate-capacity",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisName {
    SnrDb,
    InrDb,
    Rate,
    Lambda,
    SigmaDb,
    R0,
    FHz,
    PowerDbm,
}

impl AxisName {
    pub fn column(self) -> &'static str {
        match self {
            AxisName::SnrDb => "snr_db",
            AxisName::InrDb => "inr_db",
            AxisName::Rate => "rate",
            AxisName::Lambda => "lambda",
            AxisName::SigmaDb => "sigma_db",
            AxisName::R0 => "r0",
            AxisName::FHz => "f_hz",
            AxisName::PowerDbm => "power_dbm",
        }
    }
}

/// Sweep axis: explicit `values`, or `points` uniform values on `[start, stop]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub axis: AxisName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
}

impl Axis {
    pub fn values(&self) -> Result<Vec<f64>, ConfigError> {
        let name = self.axis.column();
        let v = match (&self.values, self.start, self.stop, self.points) {
            (Some(v), None, None, None) => v.iter().map(|n| n.0).collect(),
            (None, Some(a), Some(b), Some(n)) => {
                if n == 0 || !a.is_finite() || !b.is_finite() || (n > 1 && b <= a) {
                    return bad(format!("{name}: grid needs start < stop and points >= 1"));
                }
                if n == 1 {
                    vec![a]
                } else {
                    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
                }
            }
            _ => return bad(format!("{name}: give either values or start/stop/points")),
        };
        if v.is_empty() {
            return bad(format!("{name}: no values"));
        }
        if v.iter().any(|x| x.is_nan()) {
            return bad(format!("{name}: NaN value"));
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FarFieldChoice {
    Auto,
    Truncate,
    MeanCompensated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    /// Interferer density (nodes/m²).
    pub lambda: f64,
    /// Amplitude loss exponent.
    pub b: f64,
    pub sigma_db: f64,
    pub far_field: FarFieldChoice,
    /// Overrides the radius derived from the bias bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkSection {
    pub snr_db: Num,
    pub inr_db: Num,
    pub r0: f64,
    /// Target rate (bits/complex symbol).
    pub rate: f64,
    pub variant: CapacityVariant,
    /// `V_X/E`; omitted means the symmetric-constellation value 1/3.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vx_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PulseSpec {
    Square { period: f64 },
    Hanning { period: f64 },
    /// Two-column file of `f_Hz  |G(f)|²`.
    Table { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DopplerSpec {
    Delta,
    ShiftedDelta { f0: f64 },
    Rectangular { width: f64 },
    /// Two-column file of `ν_Hz  density`.
    Table { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MaskSpec {
    Constant {
        level_dbm_hz: f64,
    },
    PiecewiseLinear {
        points: Vec<(f64, f64)>,
    },
    Gaussian {
        peak_dbm_hz: f64,
        floor_dbm_hz: f64,
        center_hz: f64,
        width_hz: f64,
    },
    /// Two-column file of `f_Hz  dBm/Hz`, piecewise linear in dB.
    Table {
        path: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmissionSection {
    pub power_dbm: f64,
    pub pulse: PulseSpec,
    pub doppler: DopplerSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub experiment: Experiment,
    pub seed: u64,
    pub n_trials: usize,
    pub workers: usize,
    pub output: PathBuf,
    pub plot: bool,
    pub field: FieldSection,
    pub link: LinkSection,
    pub emission: EmissionSection,
    pub mask: MaskSpec,
    /// Evaluation frequency when the sweep axis is not `f_hz`.
    pub frequency_hz: f64,
    pub sweep: Axis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<Axis>,
}

/// Command-line overrides, applied after the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub n_trials: Option<usize>,
    pub workers: Option<usize>,
    pub output: Option<PathBuf>,
    pub plot: bool,
}

/// Default document for `experiment`, without a seed.
pub fn defaults(experiment: Experiment) -> Value {
    let fig3_link = json!({
        "snr_db": 20.0, "inr_db": 20.0, "r0": 1.0, "rate": 1.0, "variant": "sqrt_two"
    });
    let fig7_emission = json!({
        "power_dbm": 10.0,
        "pulse": {"kind": "square", "period": 1e-6},
        "doppler": {"kind": "delta"}
    });
    let f_grid = json!({"axis": "f_hz", "start": -4e6, "stop": 4e6, "points": 1001});
    let (field, sweep, series) = match experiment {
        Experiment::CapacityOutage => (
            json!({"lambda": 0.01, "b": 2.0, "sigma_db": 10.0, "far_field": "auto"}),
            json!({"axis": "snr_db", "start": 0.0, "stop": 40.0, "points": 41}),
            json!({"axis": "inr_db", "values": ["-inf", 10.0, 20.0, 30.0]}),
        ),
        Experiment::Sop => (
            json!({"lambda": 0.1, "b": 2.0, "sigma_db": 10.0, "far_field": "auto"}),
            f_grid,
            json!({"axis": "power_dbm", "values": [0.0, 10.0, 20.0]}),
        ),
        Experiment::Psd => (
            json!({"lambda": 0.1, "b": 2.0, "sigma_db": 10.0, "far_field": "auto"}),
            f_grid,
            Value::Null,
        ),
        Experiment::ValidateStable => (
            json!({"lambda": 0.1, "b": 2.0, "sigma_db": 0.0, "far_field": "auto"}),
            json!({"axis": "lambda", "values": [0.1]}),
            Value::Null,
        ),
        Experiment::ValidateCapacity => (
            json!({"lambda": 0.01, "b": 2.0, "sigma_db": 10.0, "far_field": "auto"}),
            json!({"axis": "snr_db", "values": [20.0]}),
            Value::Null,
        ),
    };
    let mut doc = json!({
        "experiment": experiment.name(),
        "n_trials": 100000,
        "workers": 1,
        "output": format!("{}.csv", experiment.name()),
        "plot": false,
        "field": field,
        "link": fig3_link,
        "emission": fig7_emission,
        "mask": {"kind": "constant", "level_dbm_hz": -60.0},
        "frequency_hz": 0.0,
        "sweep": sweep,
    });
    if !series.is_null() {
        doc["series"] = series;
    }
    doc
}

fn merge(base: &mut Value, patch: Value) {
    match (base, patch) {
        (Value::Object(b), Value::Object(p)) => {
            for (k, v) in p {
                match b.get_mut(&k) {
                    Some(slot) if !ATOMIC_KEYS.contains(&k.as_str()) && v.is_object() => merge(slot, v),
                    _ => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (b, p) => *b = p,
    }
}

/// Resolves the final configuration for `experiment` from an optional user
/// document and command-line overrides.
pub fn resolve(
    experiment: Experiment,
    user: Option<Value>,
    overrides: &Overrides,
) -> Result<Config, ConfigError> {
    let mut doc = defaults(experiment);
    if let Some(user) = user {
        let Value::Object(mut map) = user else {
            return bad("config must be a JSON object");
        };
        if let Some(e) = map.get("experiment") {
            if e.as_str() != Some(experiment.name()) {
                return bad(format!(
                    "config is for experiment {e}, but {} was requested",
                    experiment.name()
                ));
            }
        }
        // A null series removes the default one.
        if map.get("series").is_some_and(Value::is_null) {
            map.remove("series");
            doc.as_object_mut().map(|o| o.remove("series"));
        }
        merge(&mut doc, Value::Object(map));
    }
    let obj = doc.as_object_mut().expect("defaults are an object");
    if let Some(seed) = overrides.seed {
        obj.insert("seed".into(), seed.into());
    }
    if let Some(n) = overrides.n_trials {
        obj.insert("n_trials".into(), n.into());
    }
    if let Some(w) = overrides.workers {
        obj.insert("workers".into(), w.into());
    }
    if let Some(out) = &overrides.output {
        obj.insert("output".into(), out.to_string_lossy().into_owned().into());
    }
    if overrides.plot {
        obj.insert("plot".into(), true.into());
    }
    if !obj.contains_key("seed") {
        return bad("a seed is required (config key \"seed\" or --seed)");
    }
    let cfg: Config = serde_json::from_value(Value::Object(std::mem::take(obj)))?;
    cfg.validate()?;
    Ok(cfg)
}

/// Reads a JSON config file.
pub fn load(path: &Path) -> Result<Value, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

fn read_table(path: &Path) -> Result<Vec<(f64, f64)>, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(parse_two_column(&text)?)
}

/// Physical parameters in dB units, the thing a sweep point modifies.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub snr_db: f64,
    pub inr_db: f64,
    pub rate: f64,
    pub lambda: f64,
    pub sigma_db: f64,
    pub r0: f64,
    pub f_hz: f64,
    pub power_dbm: f64,
}

impl Point {
    pub fn set(&mut self, axis: AxisName, v: f64) {
        match axis {
            AxisName::SnrDb => self.snr_db = v,
            AxisName::InrDb => self.inr_db = v,
            AxisName::Rate => self.rate = v,
            AxisName::Lambda => self.lambda = v,
            AxisName::SigmaDb => self.sigma_db = v,
            AxisName::R0 => self.r0 = v,
            AxisName::FHz => self.f_hz = v,
            AxisName::PowerDbm => self.power_dbm = v,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_trials == 0 {
            return bad("n_trials must be >= 1");
        }
        if self.workers == 0 {
            return bad("workers must be >= 1");
        }
        let allowed: &[AxisName] = match self.experiment {
            Experiment::CapacityOutage => &[
                AxisName::SnrDb,
                AxisName::InrDb,
                AxisName::Rate,
                AxisName::Lambda,
                AxisName::SigmaDb,
                AxisName::R0,
            ],
            Experiment::Sop => &[
                AxisName::FHz,
                AxisName::PowerDbm,
                AxisName::Lambda,
                AxisName::SigmaDb,
            ],
            Experiment::Psd => &[AxisName::FHz],
            Experiment::ValidateStable => &[AxisName::Lambda],
            Experiment::ValidateCapacity => &[AxisName::SnrDb],
        };
        for axis in std::iter::once(&self.sweep).chain(self.series.as_ref()) {
            if !allowed.contains(&axis.axis) {
                return bad(format!(
                    "axis {} is not available for {}",
                    axis.axis.column(),
                    self.experiment.name()
                ));
            }
            let values = axis.values()?;
            if axis.axis == AxisName::FHz && values.windows(2).any(|w| w[1] <= w[0]) {
                return bad("f_hz values must be strictly increasing");
            }
        }
        if let Some(series) = &self.series {
            if series.axis == self.sweep.axis {
                return bad("series and sweep must use different axes");
            }
            if self.experiment == Experiment::Psd {
                return bad("psd takes no series");
            }
        }
        // Build every model once so that domain errors surface as config errors.
        let p = self.base_point();
        for axis in std::iter::once(&self.sweep).chain(self.series.as_ref()) {
            for v in axis.values()? {
                let mut q = p.clone();
                q.set(axis.axis, v);
                self.check_point(&q)?;
            }
        }
        Ok(())
    }

    fn check_point(&self, p: &Point) -> Result<(), ConfigError> {
        match self.experiment {
            Experiment::CapacityOutage | Experiment::ValidateCapacity => {
                self.link(p)?.validate()?;
            }
            Experiment::Sop | Experiment::Psd => {
                self.emission(p)?;
                self.mask()?;
            }
            Experiment::ValidateStable => {
                self.field(p)?;
            }
        }
        Ok(())
    }

    pub fn base_point(&self) -> Point {
        Point {
            snr_db: self.link.snr_db.0,
            inr_db: self.link.inr_db.0,
            rate: self.link.rate,
            lambda: self.field.lambda,
            sigma_db: self.field.sigma_db,
            r0: self.link.r0,
            f_hz: self.frequency_hz,
            power_dbm: self.emission.power_dbm,
        }
    }

    fn sigma(p: &Point) -> Result<f64, ConfigError> {
        if !(p.sigma_db >= 0.0) || !p.sigma_db.is_finite() {
            return bad(format!("sigma_db must be finite and >= 0, got {}", p.sigma_db));
        }
        Ok(sigma_db_to_nepers(p.sigma_db))
    }

    pub fn link(&self, p: &Point) -> Result<ProbeLink, ConfigError> {
        if p.snr_db.is_nan() || p.snr_db == f64::INFINITY {
            return bad("snr_db must be finite or -inf");
        }
        if p.inr_db.is_nan() || p.inr_db == f64::INFINITY {
            return bad("inr_db must be finite or -inf");
        }
        let link = ProbeLink {
            snr: db_to_linear(p.snr_db),
            inr: Inr::from_db(p.inr_db),
            r0: p.r0,
            b: self.field.b,
            sigma: Self::sigma(p)?,
            rate: p.rate,
            vx: self
                .link
                .vx_ratio
                .map_or(VxConvention::SymmetricConstellation, VxConvention::Explicit),
            lambda: p.lambda,
        };
        link.validate()?;
        Ok(link)
    }

    pub fn field(&self, p: &Point) -> Result<FieldModel, ConfigError> {
        let sigma = Self::sigma(p)?;
        let (lambda, b) = (p.lambda, self.field.b);
        let model = match (self.field.far_field, self.field.r_max) {
            (FarFieldChoice::Auto, None) => FieldModel::auto(lambda, b, sigma)?,
            (FarFieldChoice::Truncate, None) => {
                FieldModel::with_default_radius(lambda, b, sigma, FarField::Truncate)?
            }
            (FarFieldChoice::MeanCompensated, None) => {
                FieldModel::with_default_radius(lambda, b, sigma, FarField::MeanCompensated)?
            }
            (choice, Some(r)) => {
                let ff = match choice {
                    FarFieldChoice::MeanCompensated => FarField::MeanCompensated,
                    _ => FarField::Truncate,
                };
                FieldModel::new(lambda, b, sigma, r, ff)?
            }
        };
        Ok(model)
    }

    pub fn pulse(&self) -> Result<PulseShape, ConfigError> {
        Ok(match &self.emission.pulse {
            PulseSpec::Square { period } => PulseShape::square(*period)?,
            PulseSpec::Hanning { period } => PulseShape::hanning(*period)?,
            PulseSpec::Table { path } => PulseShape::tabulated(read_table(path)?)?,
        })
    }

    pub fn doppler(&self) -> Result<DopplerSpectrum, ConfigError> {
        let d = match &self.emission.doppler {
            DopplerSpec::Delta => DopplerSpectrum::Delta,
            DopplerSpec::ShiftedDelta { f0 } => DopplerSpectrum::ShiftedDelta { f0: *f0 },
            DopplerSpec::Rectangular { width } => DopplerSpectrum::rectangular(*width)?,
            DopplerSpec::Table { path } => DopplerSpectrum::tabulated(read_table(path)?)?,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn mask(&self) -> Result<SpectralMask, ConfigError> {
        let m = match &self.mask {
            MaskSpec::Constant { level_dbm_hz } => SpectralMask::constant(*level_dbm_hz)?,
            MaskSpec::PiecewiseLinear { points } => SpectralMask::piecewise_linear(points.clone())?,
            MaskSpec::Gaussian {
                peak_dbm_hz,
                floor_dbm_hz,
                center_hz,
                width_hz,
            } => SpectralMask::Gaussian {
                peak_dbm_hz: *peak_dbm_hz,
                floor_dbm_hz: *floor_dbm_hz,
                center_hz: *center_hz,
                width_hz: *width_hz,
            },
            MaskSpec::Table { path } => SpectralMask::piecewise_linear(read_table(path)?)?,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn emission(&self, p: &Point) -> Result<EmissionModel, ConfigError> {
        if !p.power_dbm.is_finite() {
            return bad("power_dbm must be finite");
        }
        Ok(EmissionModel::from_field(
            dbm_to_watts(p.power_dbm),
            self.pulse()?,
            self.doppler()?,
            p.lambda,
            self.field.b,
            Self::sigma(p)?,
        )?)
    }

    /// Single-network component, for heterogeneous analyses built on top of the config.
    pub fn network(&self, p: &Point, weight: f64) -> Result<NetworkComponent, ConfigError> {
        Ok(NetworkComponent {
            weight,
            power: dbm_to_watts(p.power_dbm),
            pulse: self.pulse()?,
            doppler: self.doppler()?,
            b: self.field.b,
            sigma: Self::sigma(p)?,
        })
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("config serializes")
    }
}

/// Companion paths of an output CSV.
pub fn manifest_path(output: &Path) -> PathBuf {
    output.with_extension("manifest.json")
}

pub fn plot_path(output: &Path) -> PathBuf {
    output.with_extension("svg")
}
