//! The skewed stable law `S(α, β, γ)` of the aggregate interference.
//!
//! Parameterization: characteristic function
//!
//! ```text
//! φ(w) = exp(-γ|w|^α (1 - jβ sign(w) tan(πα/2)))     α ≠ 1
//! φ(w) = exp(-γ|w|   (1 + jβ (2/π) sign(w) ln|w|))    α = 1
//! ```
//!
//! so `γ` is the dispersion, i.e. `scale^α` in the Samorodnitsky–Taqqu form.
//!
//! The CDF has two evaluation routes. The general one inverts `φ` with the
//! Gil-Pelaez formula. For the totally skewed case `α < 1, |β| = 1`, which is
//! the only one the interference model produces, a non-oscillatory integral
//! over `(0, π)` (Zolotarev/Kanter form) is used instead; it stays accurate
//! arbitrarily deep in the tails where the Gil-Pelaez integrand oscillates
//! too fast to resolve.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::distr::Open01;
use rand::Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Error, Result};
use crate::numerics::{bisect, erfc_fn, gamma_fn, integrate, QuadratureSpec};

/// Tail probability below which the Gil-Pelaez route returns 0 or 1 outright.
const TAIL_CAP: f64 = 1e-9;

/// Parameters `(α, β, γ)` of a stable law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl StableParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return invalid(format!("stable alpha must lie in (0, 2], got {alpha}"));
        }
        if !(-1.0..=1.0).contains(&beta) {
            return invalid(format!("stable beta must lie in [-1, 1], got {beta}"));
        }
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return invalid(format!("stable gamma must be finite and >= 0, got {gamma}"));
        }
        Ok(Self { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `γ = 0` is the point mass at zero.
    pub fn is_degenerate(&self) -> bool {
        self.gamma == 0.0
    }

    /// Whether the support is `[0, ∞)`.
    pub fn is_positive(&self) -> bool {
        self.alpha < 1.0 && self.beta == 1.0
    }

    /// Scale parameter `γ^{1/α}`.
    pub fn scale(&self) -> f64 {
        self.gamma.powf(1.0 / self.alpha)
    }

    /// Law of `c·X` for `c > 0`. Only exact for `α ≠ 1` (for `α = 1` a
    /// location shift appears, which this parameterization cannot express).
    pub fn scaled_by(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return domain(format!("scale factor must be positive, got {c}"));
        }
        if self.alpha == 1.0 && self.beta != 0.0 {
            return domain("scaling a skewed alpha = 1 law introduces a shift");
        }
        Self::new(self.alpha, self.beta, self.gamma * c.powf(self.alpha))
    }

    /// Law of `X₁ + X₂` for independent summands sharing `α` and `β`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.alpha != other.alpha || self.beta != other.beta {
            return domain("stable sum needs equal alpha and beta");
        }
        Self::new(self.alpha, self.beta, self.gamma + other.gamma)
    }

    /// Characteristic function `φ(w)` as `(re, im)`.
    pub fn characteristic_function(&self, w: f64) -> (f64, f64) {
        if w == 0.0 {
            return (1.0, 0.0);
        }
        let (modulus, phase) = self.log_cf(w.abs());
        let phase = phase * w.signum();
        let m = (-modulus).exp();
        (m * phase.cos(), m * phase.sin())
    }

    // For w > 0: φ(w) = exp(-modulus + j·phase).
    fn log_cf(&self, w: f64) -> (f64, f64) {
        if self.alpha == 1.0 {
            let m = self.gamma * w;
            (m, -m * self.beta * (2.0 / PI) * w.ln())
        } else {
            let m = self.gamma * w.powf(self.alpha);
            (m, m * self.beta * (PI * self.alpha / 2.0).tan())
        }
    }
}

/// `C_x = (1-x)/(Γ(2-x) cos(πx/2))`, with the limit `2/π` at `x = 1`.
pub fn cx_constant(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 2.0) {
        return domain(format!("C_x needs 0 < x < 2, got {x}"));
    }
    if x == 1.0 {
        return Ok(2.0 / PI);
    }
    Ok((1.0 - x) / (gamma_fn(2.0 - x)? * (PI * x / 2.0).cos()))
}

/// Stable law of the aggregate interference `A` of a Poisson field with
/// density `lambda`, amplitude loss exponent `b` and shadowing `sigma`
/// (nepers): `S(1/b, 1, λπ e^{2σ²/b²} / C_{1/b})`.
pub fn interference_stable_params(lambda: f64, b: f64, sigma: f64) -> Result<StableParams> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return domain(format!("node density must be positive, got {lambda}"));
    }
    if !(b > 1.0) || !b.is_finite() {
        return domain(format!("amplitude loss exponent must exceed 1, got {b}"));
    }
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return domain(format!("shadowing sigma must be >= 0, got {sigma}"));
    }
    let alpha = 1.0 / b;
    let gamma = lambda * PI / cx_constant(alpha)? * (2.0 * sigma * sigma / (b * b)).exp();
    StableParams::new(alpha, 1.0, gamma)
}

/// Draws one variate with the Chambers–Mallows–Stuck transform.
pub fn sample<R: Rng + ?Sized>(p: &StableParams, rng: &mut R) -> f64 {
    if p.is_degenerate() {
        return 0.0;
    }
    let v = PI * (rng.sample::<f64, _>(Open01) - 0.5);
    let w: f64 = Exp1.sample(rng);
    let (alpha, beta) = (p.alpha, p.beta);
    if alpha == 1.0 {
        let sigma = p.gamma;
        let c = FRAC_PI_2 + beta * v;
        let x = (2.0 / PI) * (c * v.tan() - beta * ((FRAC_PI_2 * w * v.cos()) / c).ln());
        return sigma * x + (2.0 / PI) * beta * sigma * sigma.ln();
    }
    let t = beta * (PI * alpha / 2.0).tan();
    let b = t.atan() / alpha;
    let s = (1.0 + t * t).powf(1.0 / (2.0 * alpha));
    let av = alpha * (v + b);
    let x = s * av.sin() / v.cos().powf(1.0 / alpha)
        * ((v - av).cos() / w).powf((1.0 - alpha) / alpha);
    p.scale() * x
}

/// CDF `P{X ≤ x}`.
pub fn cdf(p: &StableParams, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    if x.is_nan() {
        return domain("stable cdf at NaN");
    }
    if p.is_degenerate() {
        return Ok(if x >= 0.0 { 1.0 } else { 0.0 });
    }
    if p.alpha < 1.0 && p.beta.abs() == 1.0 {
        return if p.beta > 0.0 {
            skewed_cdf(p, x, spec)
        } else {
            Ok(1.0 - skewed_cdf(p, -x, spec)?)
        };
    }
    cdf_gil_pelaez(p, x, spec)
}

/// Survival function `P{X > x}`, accurate in relative terms in the upper
/// tail of positive laws.
pub fn sf(p: &StableParams, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    if x.is_nan() {
        return domain("stable sf at NaN");
    }
    if p.is_degenerate() {
        return Ok(if x >= 0.0 { 0.0 } else { 1.0 });
    }
    if p.is_positive() {
        return skewed_sf(p, x, spec);
    }
    Ok(1.0 - cdf(p, x, spec)?)
}

/// Gil-Pelaez inversion `F(x) = 1/2 - (1/π)∫_0^∞ Im[e^{-jwx} φ(w)]/w dw`,
/// integrated over `u` with `w = s·tan(u)`, `s = γ^{-1/α}`.
///
/// Valid for every parameter set; the oscillation of the integrand grows
/// with `|x|/scale`, so far tails are cut off with the Pareto estimate
/// `P{X > x} ≈ C_α γ (1+β)/2 x^{-α}`.
pub fn cdf_gil_pelaez(p: &StableParams, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    if p.is_degenerate() {
        return Ok(if x >= 0.0 { 1.0 } else { 0.0 });
    }
    if p.is_positive() && x <= 0.0 {
        return Ok(0.0);
    }
    if p.alpha < 2.0 && x != 0.0 {
        let c = cx_constant(p.alpha)?;
        let weight = if x > 0.0 { 0.5 * (1.0 + p.beta) } else { 0.5 * (1.0 - p.beta) };
        let tail = c * p.gamma * weight * x.abs().powf(-p.alpha);
        if weight > 0.0 && tail < TAIL_CAP {
            return Ok(if x > 0.0 { 1.0 } else { 0.0 });
        }
    }
    let s = p.gamma.powf(-1.0 / p.alpha);
    let integrand = |u: f64| {
        let w = s * u.tan();
        if !(w > 0.0) || !w.is_finite() {
            return 0.0;
        }
        let (modulus, phase) = p.log_cf(w);
        let decay = (-modulus).exp();
        if decay == 0.0 {
            return 0.0;
        }
        // dw/w = du / (sin u cos u)
        decay * (phase - w * x).sin() / (u.sin() * u.cos())
    };
    let spec = QuadratureSpec {
        abs_tol: spec.abs_tol.min(1e-9),
        ..*spec
    };
    let i = integrate(integrand, 0.0, FRAC_PI_2, &spec)?;
    Ok((0.5 - i / PI).clamp(0.0, 1.0))
}

// Totally skewed, α < 1, β = 1. With X = s·Y, s = (γ/cos(πα/2))^{1/α}, Y has
// Laplace transform e^{-t^α} and
//     P{Y ≤ y} = (1/π) ∫_0^π exp(-y^{-α/(1-α)} K(u)) du,
//     K(u) = (sin(αu)/sin u)^{1/(1-α)} · sin((1-α)u)/sin(αu).
fn kanter_log_k(alpha: f64, u: f64) -> f64 {
    let sa = (alpha * u).sin();
    ((sa.ln() - u.sin().ln()) / (1.0 - alpha)) + ((1.0 - alpha) * u).sin().ln() - sa.ln()
}

fn kanter_log_t(p: &StableParams, x: f64) -> f64 {
    let alpha = p.alpha;
    let s = (p.gamma / (PI * alpha / 2.0).cos()).powf(1.0 / alpha);
    -(alpha / (1.0 - alpha)) * (x / s).ln()
}

fn skewed_cdf(p: &StableParams, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let lt = kanter_log_t(p, x);
    let alpha = p.alpha;
    let v = integrate(
        |u: f64| (-(lt + kanter_log_k(alpha, u)).exp()).exp(),
        0.0,
        PI,
        spec,
    )?;
    Ok((v / PI).clamp(0.0, 1.0))
}

fn skewed_sf(p: &StableParams, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    if x <= 0.0 {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    let lt = kanter_log_t(p, x);
    let alpha = p.alpha;
    // The integrand concentrates near u = π in the far tail; shrink the
    // absolute tolerance so the tiny mass there is still resolved.
    let spec = QuadratureSpec {
        abs_tol: spec.abs_tol.min(1e-14),
        ..*spec
    };
    let v = integrate(
        |u: f64| -(-(lt + kanter_log_k(alpha, u)).exp()).exp_m1(),
        0.0,
        PI,
        &spec,
    )?;
    Ok((v / PI).clamp(0.0, 1.0))
}

/// CDF of `S(1/2, 1, γ)`: `erfc(γ/√(2x))` for `x > 0`, else 0.
pub fn levy_cdf(gamma: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    erfc_fn(gamma / (2.0 * x).sqrt())
}

/// Quantile function by bisection on [`cdf`].
pub fn quantile(p: &StableParams, q: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return domain(format!("quantile level must lie in (0, 1), got {q}"));
    }
    if p.is_degenerate() {
        return Ok(0.0);
    }
    let scale = p.scale();
    let err = std::cell::Cell::new(None::<Error>);
    let f = |x: f64| match cdf(p, x, spec) {
        Ok(v) => v - q,
        Err(e) => {
            err.set(Some(e));
            0.0
        }
    };
    let (lo, hi, geometric) = if p.is_positive() {
        let mut lo = scale;
        while f(lo) > 0.0 && lo > 1e-300 {
            lo *= 0.1;
        }
        let mut hi = scale;
        while f(hi) < 0.0 && hi < 1e300 {
            hi *= 10.0;
        }
        (lo, hi, true)
    } else {
        let mut width = scale;
        while (f(-width) > 0.0 || f(width) < 0.0) && width < 1e300 {
            width *= 10.0;
        }
        (-width, width, false)
    };
    let root = bisect(f, lo, hi, 1e-10, geometric);
    match err.take() {
        Some(e) => Err(e),
        None => Ok(root),
    }
}
