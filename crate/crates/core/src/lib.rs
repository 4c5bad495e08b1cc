//! Closed-form capacity outage and spectral outage analysis for a link
//! embedded in a Poisson field of interferers, together with the
//! brute-force field simulator that validates those closed forms.
//!
//! Module map:
//! - [`numerics`]: special functions and adaptive quadrature
//! - [`stable`]: skewed stable law of the aggregate interference
//! - [`field`]: Poisson-field simulator (the ground-truth oracle)
//! - [`capacity`]: SINR, Rayleigh-fading capacity and capacity outage
//! - [`spectrum`]: pulse spectra, Doppler propagation, masks and SOP
//! - [`mc`]: reproducible per-trial random streams
//! - [`stats`]: KS statistics and binomial estimates

pub mod capacity;
pub mod error;
pub mod field;
pub mod mc;
pub mod numerics;
pub mod spectrum;
pub mod stable;
pub mod stats;
pub mod units;

pub use capacity::{CapacityVariant, Inr, OutageEstimate, ProbeLink, VxConvention};
pub use error::{Error, Result};
pub use field::{FarField, FieldModel, Interferer};
pub use mc::{MonteCarlo, Substreams};
pub use numerics::QuadratureSpec;
pub use spectrum::{
    DopplerSpectrum, EmissionModel, NetworkComponent, PulseShape, SopCurve, SpectralMask,
};
pub use stable::StableParams;
