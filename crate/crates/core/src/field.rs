//! Brute-force Poisson-field simulator.
//!
//! Interferers are dropped on a disk of radius `r_max` around the probe
//! receiver and their path-loss/shadowing contributions summed directly.
//! No exclusion zone is applied, so arbitrarily close nodes produce the
//! heavy upper tail of the aggregate.
//!
//! The disk replaces the infinite plane, so the part of the sum from
//! beyond `r_max` must be accounted for. Two treatments are offered:
//! [`FarField::Truncate`] drops it (bias equal to its mean) and
//! [`FarField::MeanCompensated`] adds its mean back (error equal to its
//! standard deviation). The default radius keeps whichever error applies
//! below `1e-4` times the median of the target stable law.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::mc::MonteCarlo;
use crate::numerics::QuadratureSpec;
use crate::stable::{self, interference_stable_params, StableParams};
use crate::stats::sort_f64;

/// Residual far-field error allowed, as a fraction of the target median.
pub const BIAS_FRACTION: f64 = 1e-3;
/// Extra margin applied on top of [`BIAS_FRACTION`] for the default radius.
pub const SAFETY_FACTOR: f64 = 10.0;
/// Largest expected node count per trial for which `auto` keeps plain truncation.
pub const AUTO_TRUNCATE_NODE_BUDGET: f64 = 5_000.0;

/// Treatment of interferers beyond the simulation radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FarField {
    /// Ignore nodes beyond `r_max`.
    Truncate,
    /// Add the expected contribution of nodes beyond `r_max`.
    MeanCompensated,
}

/// Parameters of the simulated Poisson field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldModel {
    pub lambda: f64,
    pub b: f64,
    pub sigma: f64,
    pub r_max: f64,
    pub far_field: FarField,
}

/// One interferer: distance to the origin and its shadowing variate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interferer {
    pub r: f64,
    pub g: f64,
}

impl FieldModel {
    pub fn new(lambda: f64, b: f64, sigma: f64, r_max: f64, far_field: FarField) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return invalid(format!("field density must be positive, got {lambda}"));
        }
        if !(b > 1.0) || !b.is_finite() {
            return invalid(format!("field needs b > 1, got {b}"));
        }
        if !(sigma >= 0.0) || !sigma.is_finite() {
            return invalid(format!("field needs sigma >= 0, got {sigma}"));
        }
        if !(r_max > 0.0) || !r_max.is_finite() {
            return invalid(format!("field needs r_max > 0, got {r_max}"));
        }
        Ok(Self {
            lambda,
            b,
            sigma,
            r_max,
            far_field,
        })
    }

    /// Model with the default radius and the given far-field treatment.
    pub fn with_default_radius(lambda: f64, b: f64, sigma: f64, far_field: FarField) -> Result<Self> {
        let probe = Self::new(lambda, b, sigma, 1.0, far_field)?;
        let target = probe.error_budget()?;
        let r_max = match far_field {
            FarField::Truncate => {
                let k = 2.0 * PI * lambda * (2.0 * sigma * sigma).exp() / (2.0 * b - 2.0);
                (target / k).powf(1.0 / (2.0 - 2.0 * b))
            }
            FarField::MeanCompensated => {
                let k = 2.0 * PI * lambda * (8.0 * sigma * sigma).exp() / (4.0 * b - 2.0);
                (target * target / k).powf(1.0 / (2.0 - 4.0 * b))
            }
        };
        Self::new(lambda, b, sigma, r_max, far_field)
    }

    /// Default radius with plain truncation when that needs at most
    /// [`AUTO_TRUNCATE_NODE_BUDGET`] nodes per trial, mean compensation otherwise.
    pub fn auto(lambda: f64, b: f64, sigma: f64) -> Result<Self> {
        let truncated = Self::with_default_radius(lambda, b, sigma, FarField::Truncate)?;
        if truncated.expected_nodes() <= AUTO_TRUNCATE_NODE_BUDGET {
            Ok(truncated)
        } else {
            Self::with_default_radius(lambda, b, sigma, FarField::MeanCompensated)
        }
    }

    /// `S(1/b, 1, γ)` law that the aggregate converges to on the full plane.
    pub fn stable_params(&self) -> Result<StableParams> {
        interference_stable_params(self.lambda, self.b, self.sigma)
    }

    /// Median of the target stable law.
    pub fn target_median(&self) -> Result<f64> {
        stable::quantile(&self.stable_params()?, 0.5, &QuadratureSpec::default())
    }

    /// Allowed residual error: `BIAS_FRACTION / SAFETY_FACTOR` of the target median.
    pub fn error_budget(&self) -> Result<f64> {
        Ok(BIAS_FRACTION / SAFETY_FACTOR * self.target_median()?)
    }

    /// Expected number of interferers in the disk, `λπr_max²`.
    pub fn expected_nodes(&self) -> f64 {
        self.lambda * PI * self.r_max * self.r_max
    }

    /// Mean contribution of nodes beyond `r_max`:
    /// `2πλ e^{2σ²} r_max^{2-2b} / (2b-2)`.
    pub fn far_field_mean(&self) -> f64 {
        2.0 * PI * self.lambda * (2.0 * self.sigma * self.sigma).exp()
            * self.r_max.powf(2.0 - 2.0 * self.b)
            / (2.0 * self.b - 2.0)
    }

    /// Standard deviation of the contribution of nodes beyond `r_max`.
    pub fn far_field_std(&self) -> f64 {
        (2.0 * PI * self.lambda * (8.0 * self.sigma * self.sigma).exp()
            * self.r_max.powf(2.0 - 4.0 * self.b)
            / (4.0 * self.b - 2.0))
            .sqrt()
    }

    /// Error introduced by the finite disk under the chosen treatment.
    pub fn residual_error(&self) -> f64 {
        match self.far_field {
            FarField::Truncate => self.far_field_mean(),
            FarField::MeanCompensated => self.far_field_std(),
        }
    }

    /// Checks the residual error against `BIAS_FRACTION` of the target median.
    pub fn check_bias_bound(&self) -> Result<()> {
        let bound = BIAS_FRACTION * self.target_median()?;
        if self.residual_error() < bound {
            Ok(())
        } else {
            invalid(format!(
                "far-field error {:e} exceeds {BIAS_FRACTION} x median ({bound:e}); increase r_max",
                self.residual_error()
            ))
        }
    }

    fn compensation(&self) -> f64 {
        match self.far_field {
            FarField::Truncate => 0.0,
            FarField::MeanCompensated => self.far_field_mean(),
        }
    }
}

/// Drops a Poisson number of interferers uniformly (by area) on the disk.
pub fn sample_field<R: Rng + ?Sized>(model: &FieldModel, rng: &mut R) -> Vec<Interferer> {
    let n = node_count(model, rng);
    (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            let g: f64 = rng.sample(StandardNormal);
            Interferer {
                r: model.r_max * u.sqrt(),
                g,
            }
        })
        .collect()
}

fn node_count<R: Rng + ?Sized>(model: &FieldModel, rng: &mut R) -> u64 {
    let mean = model.expected_nodes();
    if mean <= 0.0 {
        return 0;
    }
    match Poisson::new(mean) {
        Ok(d) => d.sample(rng) as u64,
        Err(_) => 0,
    }
}

/// `A = Σ e^{2σ g_i} / r_i^{2b}`.
pub fn aggregate_a(nodes: &[Interferer], b: f64, sigma: f64) -> f64 {
    nodes
        .iter()
        .map(|n| (2.0 * sigma * n.g).exp() * n.r.powf(-2.0 * b))
        .sum()
}

/// One realization of the aggregate under `model`, including far-field
/// compensation. Draws the same random sequence as
/// `aggregate_a(&sample_field(..))` without materializing the node list.
pub fn sample_aggregate<R: Rng + ?Sized>(model: &FieldModel, rng: &mut R) -> f64 {
    let n = node_count(model, rng);
    let r2max = model.r_max * model.r_max;
    let two_sigma = 2.0 * model.sigma;
    let mut sum = 0.0;
    for _ in 0..n {
        let u: f64 = rng.random();
        let g: f64 = rng.sample(StandardNormal);
        let r2 = r2max * u;
        let path = if model.b == 2.0 {
            1.0 / (r2 * r2)
        } else {
            r2.powf(-model.b)
        };
        let shadow = if two_sigma == 0.0 { 1.0 } else { (two_sigma * g).exp() };
        sum += shadow * path;
    }
    sum + model.compensation()
}

/// `n_trials` independent aggregates, sorted ascending.
pub fn empirical_a_cdf(model: &FieldModel, mc: &MonteCarlo) -> Vec<f64> {
    let mut v = mc.run(|_, rng| sample_aggregate(model, rng));
    sort_f64(&mut v);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::Substreams;
    use crate::stable::levy_cdf;
    use crate::stats::{ks_critical_1pct, ks_one_sample, sort_f64};

    #[test]
    fn aggregate_examples() {
        assert_eq!(aggregate_a(&[], 2.0, 0.3), 0.0);
        let one = [Interferer { r: 1.0, g: 0.0 }];
        assert_eq!(aggregate_a(&one, 3.7, 0.5), 1.0);
        let two = [Interferer { r: 1.0, g: 0.0 }, Interferer { r: 2.0, g: 0.0 }];
        assert!((aggregate_a(&two, 2.0, 0.0) - 1.0625).abs() < 1e-15);
    }

    #[test]
    fn aggregate_permutation_and_concatenation() {
        let mut rng = Substreams::new(1).stream(0);
        let model = FieldModel::new(0.05, 1.7, 0.4, 20.0, FarField::Truncate).unwrap();
        let a = sample_field(&model, &mut rng);
        let b = sample_field(&model, &mut rng);
        let mut rev = a.clone();
        rev.reverse();
        let sa = aggregate_a(&a, 1.7, 0.4);
        assert!((sa - aggregate_a(&rev, 1.7, 0.4)).abs() <= 1e-12 * sa);
        let cat: Vec<_> = a.iter().chain(&b).copied().collect();
        let sc = aggregate_a(&cat, 1.7, 0.4);
        assert!((sc - sa - aggregate_a(&b, 1.7, 0.4)).abs() <= 1e-12 * sc);
    }

    #[test]
    fn streaming_aggregate_matches_node_list() {
        let model = FieldModel::new(0.1, 1.5, 0.3, 15.0, FarField::Truncate).unwrap();
        let s = Substreams::new(9);
        for i in 0..20 {
            let nodes = sample_field(&model, &mut s.stream(i));
            let direct = aggregate_a(&nodes, model.b, model.sigma);
            let streamed = sample_aggregate(&model, &mut s.stream(i));
            assert!((direct - streamed).abs() <= 1e-12 * direct.max(1e-300));
        }
    }

    #[test]
    fn tiny_field_is_empty() {
        let model = FieldModel::new(1e-12, 2.0, 0.0, 1.0, FarField::Truncate).unwrap();
        let mut rng = Substreams::new(2).stream(0);
        let empties = (0..1000).filter(|_| sample_field(&model, &mut rng).is_empty()).count();
        assert_eq!(empties, 1000);
    }

    #[test]
    fn node_count_mean() {
        let model = FieldModel::new(0.1, 2.0, 0.0, 100.0, FarField::Truncate).unwrap();
        let mc = MonteCarlo::new(3, 10_000);
        let counts = mc.run(|_, rng| node_count(&model, rng) as f64);
        let mean = counts.iter().sum::<f64>() / counts.len() as f64;
        let want = 1000.0 * PI;
        let se = (want / counts.len() as f64).sqrt();
        assert!((mean - want).abs() < 3.0 * se, "mean {mean}");
    }

    #[test]
    fn radii_are_area_uniform() {
        let model = FieldModel::new(0.01, 2.0, 0.0, 50.0, FarField::Truncate).unwrap();
        let mut rng = Substreams::new(4).stream(0);
        let mut u = Vec::new();
        while u.len() < 100_000 {
            for n in sample_field(&model, &mut rng) {
                assert!(n.r > 0.0 && n.r <= model.r_max);
                u.push((n.r / model.r_max).powi(2));
            }
        }
        sort_f64(&mut u);
        let d = ks_one_sample(&u, |x| x.clamp(0.0, 1.0));
        assert!(d < ks_critical_1pct(u.len()), "KS {d}");
    }

    #[test]
    fn default_radius_meets_bias_bound() {
        for (lambda, b, sigma) in [(0.1, 2.0, 0.0), (0.05, 1.5, 0.5), (0.1, 2.0, 1.151)] {
            for ff in [FarField::Truncate, FarField::MeanCompensated] {
                let m = FieldModel::with_default_radius(lambda, b, sigma, ff).unwrap();
                m.check_bias_bound().unwrap();
                let budget = m.error_budget().unwrap();
                assert!((m.residual_error() / budget - 1.0).abs() < 1e-9);
            }
        }
        let tight = FieldModel::new(0.1, 2.0, 0.0, 1.0, FarField::Truncate).unwrap();
        assert!(tight.check_bias_bound().is_err());
    }

    #[test]
    fn auto_mode_picks_cheap_treatment() {
        let levy = FieldModel::auto(0.1, 2.0, 0.0).unwrap();
        assert_eq!(levy.far_field, FarField::Truncate);
        assert!((levy.r_max - 96.0).abs() < 1.0, "r_max {}", levy.r_max);
        let heavy = FieldModel::auto(0.05, 1.5, 0.5).unwrap();
        assert_eq!(heavy.far_field, FarField::MeanCompensated);
    }

    #[test]
    fn field_reproduces_levy_law() {
        let model = FieldModel::auto(0.1, 2.0, 0.0).unwrap();
        let gamma = model.stable_params().unwrap().gamma();
        let n = 20_000;
        let sorted = empirical_a_cdf(&model, &MonteCarlo::new(5, n));
        let d = ks_one_sample(&sorted, |x| levy_cdf(gamma, x));
        assert!(d < ks_critical_1pct(n), "KS {d}");
    }

    #[test]
    fn medians_increase_with_density() {
        let n = 20_000;
        let lo = empirical_a_cdf(&FieldModel::auto(0.05, 2.0, 0.0).unwrap(), &MonteCarlo::new(6, n));
        let hi = empirical_a_cdf(&FieldModel::auto(0.1, 2.0, 0.0).unwrap(), &MonteCarlo::new(7, n));
        assert!(crate::stats::sorted_quantile(&lo, 0.5) < crate::stats::sorted_quantile(&hi, 0.5));
    }
}
