//! Conversions between the dB-domain quantities used in configuration and
//! the linear quantities used by the models.

use std::f64::consts::LN_10;

/// `10^{x/10}`; `-inf` dB maps to exactly zero.
pub fn db_to_linear(db: f64) -> f64 {
    if db == f64::NEG_INFINITY {
        0.0
    } else {
        10f64.powf(db / 10.0)
    }
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// dBm (or dBm/Hz) to watts (or W/Hz).
pub fn dbm_to_watts(dbm: f64) -> f64 {
    db_to_linear(dbm - 30.0)
}

pub fn watts_to_dbm(w: f64) -> f64 {
    linear_to_db(w) + 30.0
}

/// Shadowing spread in dB (power scale) to the nepers parameter `σ` of the
/// amplitude factor `e^{σG}`: `σ = σ_dB · ln10 / 20`.
pub fn sigma_db_to_nepers(sigma_db: f64) -> f64 {
    sigma_db * LN_10 / 20.0
}
