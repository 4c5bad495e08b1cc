//! Probe-link SINR, Rayleigh-fading capacity with receiver CSI, and the
//! capacity outage probability over interferer positions and shadowing.
//!
//! Outage is estimated with the hybrid method: the fast-fading average is
//! done in closed form, while the shadowing `G₀` of the probe link and the
//! aggregate interference `A` are sampled (the latter straight from its
//! stable law, without simulating node positions).

use std::f64::consts::{LN_2, SQRT_2};

use rand_distr::StandardNormal;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Error, Result};
use crate::mc::MonteCarlo;
use crate::numerics::{integrate, normal_cdf, scaled_e1, QuadratureSpec};
use crate::stable::{self, interference_stable_params, StableParams};
use crate::stats::binomial_std_err;

/// Which closed form of the ergodic capacity to use.
///
/// `SqrtTwo` is `-e^{√2/η} Ei(-√2/η)/ln 2`. `Exact` is
/// `-e^{1/η} Ei(-1/η)/ln 2`, which is what the expectation of
/// `log2(1 + η·|α₀|²)` over a unit-mean exponential gain evaluates to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapacityVariant {
    #[default]
    SqrtTwo,
    Exact,
}

impl CapacityVariant {
    fn numerator(self) -> f64 {
        match self {
            CapacityVariant::SqrtTwo => SQRT_2,
            CapacityVariant::Exact => 1.0,
        }
    }
}

/// Interference-to-noise ratio of the probe link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Inr {
    /// INR = -∞ dB: the interference term vanishes.
    NoInterference,
    Linear(f64),
}

impl Inr {
    pub fn from_db(db: f64) -> Self {
        if db == f64::NEG_INFINITY {
            Inr::NoInterference
        } else {
            Inr::Linear(crate::units::db_to_linear(db))
        }
    }
}

/// Variance convention for the interferers' symbols.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum VxConvention {
    /// Equiprobable symbols from a constellation symmetric about the
    /// origin: `V_X = E/3`.
    #[default]
    SymmetricConstellation,
    /// `V_X` given as a multiple of the interferer symbol energy `E`.
    Explicit(f64),
}

impl VxConvention {
    fn ratio(self) -> f64 {
        match self {
            VxConvention::SymmetricConstellation => 1.0 / 3.0,
            VxConvention::Explicit(v) => v,
        }
    }
}

/// Probe-link parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeLink {
    /// `E_S/N₀`, linear.
    pub snr: f64,
    pub inr: Inr,
    /// Probe link length (m).
    pub r0: f64,
    pub b: f64,
    /// Shadowing (nepers).
    pub sigma: f64,
    /// Target rate (bits/complex symbol).
    pub rate: f64,
    pub vx: VxConvention,
    /// Interferer density (nodes/m²).
    pub lambda: f64,
}

impl ProbeLink {
    pub fn validate(&self) -> Result<()> {
        let finite_nonneg = |v: f64| v.is_finite() && v >= 0.0;
        if !finite_nonneg(self.snr) {
            return invalid(format!("snr must be finite and >= 0, got {}", self.snr));
        }
        if let Inr::Linear(v) = self.inr {
            if !finite_nonneg(v) {
                return invalid(format!("inr must be finite and >= 0, got {v}"));
            }
        }
        if !(self.r0 > 0.0) || !self.r0.is_finite() {
            return invalid(format!("r0 must be positive, got {}", self.r0));
        }
        if !(self.b > 1.0) {
            return invalid(format!("b must exceed 1, got {}", self.b));
        }
        if !finite_nonneg(self.sigma) {
            return invalid(format!("sigma must be >= 0, got {}", self.sigma));
        }
        if !finite_nonneg(self.rate) {
            return invalid(format!("rate must be finite and >= 0, got {}", self.rate));
        }
        if let VxConvention::Explicit(v) = self.vx {
            if !finite_nonneg(v) {
                return invalid(format!("explicit V_X must be >= 0, got {v}"));
            }
        }
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return invalid(format!("lambda must be positive, got {}", self.lambda));
        }
        Ok(())
    }

    /// Stable law of the aggregate interference seen by this link.
    pub fn interference(&self) -> Result<StableParams> {
        interference_stable_params(self.lambda, self.b, self.sigma)
    }
}

/// Outage fraction with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageEstimate {
    pub p_out: f64,
    pub std_err: f64,
    pub n_trials: usize,
}

impl OutageEstimate {
    pub fn from_count(outages: usize, n_trials: usize) -> Self {
        let p_out = outages as f64 / n_trials as f64;
        Self {
            p_out,
            std_err: binomial_std_err(p_out, n_trials),
            n_trials,
        }
    }
}

/// SINR averaged over fast fading:
/// `η = e^{2σg₀}·SNR / (r₀^{2b}·(2A·(V_X/E)·INR + 1))`.
pub fn sinr_eta(g0: f64, a_value: f64, link: &ProbeLink) -> f64 {
    let interference = match link.inr {
        Inr::NoInterference => 0.0,
        Inr::Linear(inr) => 2.0 * a_value * link.vx.ratio() * inr,
    };
    (2.0 * link.sigma * g0).exp() * link.snr
        / (link.r0.powf(2.0 * link.b) * (interference + 1.0))
}

/// Ergodic capacity (bits/complex symbol) at average SINR `eta`.
pub fn capacity_closed_form(eta: f64, variant: CapacityVariant) -> Result<f64> {
    if !(eta > 0.0) || !eta.is_finite() {
        return domain(format!("capacity needs finite eta > 0, got {eta}"));
    }
    Ok(scaled_e1(variant.numerator() / eta)? / LN_2)
}

/// `∫_0^∞ e^{-t} log2(1 + η t) dt` by quadrature.
pub fn capacity_numeric(eta: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(eta > 0.0) || !eta.is_finite() {
        return domain(format!("capacity needs finite eta > 0, got {eta}"));
    }
    integrate(
        |t: f64| (-t).exp() * (eta * t).ln_1p() / LN_2,
        0.0,
        f64::INFINITY,
        spec,
    )
}

/// SINR threshold `η*` with `capacity_closed_form(η*) = rate`.
///
/// The result is nudged to the smallest representable `η*` whose capacity
/// is at least `rate`, so `η < η*` and `C(η) < rate` agree per trial.
pub fn invert_capacity(rate: f64, variant: CapacityVariant) -> Result<f64> {
    if !(rate > 0.0) || !rate.is_finite() {
        return domain(format!("capacity inversion needs finite rate > 0, got {rate}"));
    }
    let cap = |eta: f64| capacity_closed_form(eta, variant).unwrap_or(f64::NAN);
    let mut lo = 1.0;
    while cap(lo) >= rate {
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(Error::Bracket(format!("rate {rate} below representable capacity")));
        }
    }
    let mut hi = 1.0;
    while cap(hi) < rate {
        hi *= 2.0;
        if !(hi < 1e300) {
            return Err(Error::Bracket(format!("rate {rate} exceeds representable capacity")));
        }
    }
    // Positive floats order like their bit patterns, so bisecting the bits
    // lands on the smallest representable η with C(η) >= R.
    let (mut lo_bits, mut hi_bits) = (lo.to_bits(), hi.to_bits());
    while hi_bits - lo_bits > 1 {
        let mid = lo_bits + (hi_bits - lo_bits) / 2;
        if cap(f64::from_bits(mid)) < rate {
            lo_bits = mid;
        } else {
            hi_bits = mid;
        }
    }
    let eta = f64::from_bits(hi_bits);
    Ok(eta)
}

/// Monte Carlo capacity outage `P{C(G₀, A) < R}`.
///
/// Each trial draws `G₀ ~ N(0,1)` and then `A` from the interference law
/// on its own substream, so sweeping SNR, INR, rate or λ with a fixed seed
/// reuses the same underlying randomness.
pub fn capacity_outage(
    link: &ProbeLink,
    variant: CapacityVariant,
    mc: &MonteCarlo,
) -> Result<OutageEstimate> {
    link.validate()?;
    if mc.n_trials == 0 {
        return invalid("n_trials must be >= 1");
    }
    if link.rate == 0.0 {
        return Ok(OutageEstimate::from_count(0, mc.n_trials));
    }
    let threshold = invert_capacity(link.rate, variant)?;
    let params = link.interference()?;
    let hits = mc.run(|_, rng| {
        let g0: f64 = rng.sample(StandardNormal);
        let a = match link.inr {
            Inr::NoInterference => 0.0,
            Inr::Linear(_) => stable::sample(&params, rng),
        };
        sinr_eta(g0, a, link) < threshold
    });
    Ok(OutageEstimate::from_count(
        hits.iter().filter(|&&h| h).count(),
        mc.n_trials,
    ))
}

/// Closed-form outage without interference: `Φ(ln(η* r₀^{2b}/SNR) / 2σ)`.
pub fn outage_without_interference(link: &ProbeLink, variant: CapacityVariant) -> Result<f64> {
    link.validate()?;
    if link.rate == 0.0 {
        return Ok(0.0);
    }
    let threshold = invert_capacity(link.rate, variant)?;
    let level = threshold * link.r0.powf(2.0 * link.b) / link.snr;
    if link.sigma == 0.0 {
        return Ok(if level > 1.0 { 1.0 } else { 0.0 });
    }
    Ok(normal_cdf(level.ln() / (2.0 * link.sigma)))
}
