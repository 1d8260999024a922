//! Space-air-ground channel model and link-performance analysis.
//!
//! The crate models the downlink from a low-Earth-orbit satellite to a
//! terrestrial or airborne user:
//!
//! * [`kinematics`] - relative velocity with Earth rotation, relative angular
//!   velocity, and the normalized Doppler profile of a pass.
//! * [`refraction`] - exponential refractivity profile and the refracted-ray
//!   geometry: bending-path length, ground range, straight slant distance,
//!   and true elevation angle.
//! * [`fading`] - Shadowed-Rician small-scale fading: closed-form PDF/CDF,
//!   moments, and a sampler for Monte-Carlo validation.
//! * [`attenuation`] - free-space path loss over the refracted ray,
//!   Beer-Lambert molecular absorption, and rain/fog/cloud attenuation
//!   factors composing the mean-SNR scale.
//! * [`performance`] - closed-form BER bound, outage probability, ergodic
//!   rate, and Goodput lower bound.
//! * [`montecarlo`] - seeded, multi-stream Monte-Carlo estimators used as the
//!   independent oracle for every closed form.
//! * [`specfun`] / [`integrate`] - the supporting special functions and
//!   adaptive quadrature.
//!
//! All quantities are linear (not dB) and geometric lengths are kilometers
//! unless a name says otherwise. Every operation is a pure function of its
//! inputs; parameter structs are immutable after construction and safe to
//! share across threads.

// Validation guards are written `!(x > 0.0)` so that NaN fails them too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod attenuation;
pub mod error;
pub mod fading;
pub mod geometry;
pub mod integrate;
pub mod kinematics;
pub mod montecarlo;
pub mod performance;
pub mod refraction;
pub mod specfun;

pub use error::{ChannelError, Result};
pub use geometry::GeometryScenario;

/// Speed of light in km/s, for geometry expressed in kilometers.
pub const SPEED_OF_LIGHT_KM_S: f64 = 299_792.458;

/// Speed of light in m/s, for the free-space path-loss wavelength term.
pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;
