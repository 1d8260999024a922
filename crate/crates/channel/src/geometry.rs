//! The geometric scenario tying a satellite, an Earth model, a user, and the
//! detected arrival elevation together. Shared by the ray-path, attenuation,
//! and kinematics consumers.

use crate::error::{ChannelError, Result};
use crate::kinematics::{EarthModel, SatelliteState, UserKinematics};

/// Satellite-to-user geometry at one instant of a pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryScenario {
    pub earth: EarthModel,
    pub satellite: SatelliteState,
    pub user: UserKinematics,
    /// Detected (apparent) elevation angle of the arriving wave, radians.
    pub detected_elevation_rad: f64,
}

impl GeometryScenario {
    pub fn new(
        earth: EarthModel,
        satellite: SatelliteState,
        user: UserKinematics,
        detected_elevation_rad: f64,
    ) -> Result<Self> {
        if !(detected_elevation_rad > 0.0
            && detected_elevation_rad <= std::f64::consts::FRAC_PI_2)
        {
            return Err(ChannelError::invalid(
                "detected elevation angle must lie in (0, pi/2]",
            ));
        }
        Ok(Self {
            earth,
            satellite,
            user,
            detected_elevation_rad,
        })
    }

    pub fn radius_km(&self) -> f64 {
        self.earth.radius_km
    }

    pub fn altitude_km(&self) -> f64 {
        self.satellite.altitude_km
    }

    pub fn orbit_radius_km(&self) -> f64 {
        self.satellite.orbit_radius_km(&self.earth)
    }
}
