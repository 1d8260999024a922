//! Pass kinematics: relative velocity between satellite and user including
//! Earth rotation, relative angular velocity, and the normalized Doppler
//! frequency profile of a pass.
//!
//! Satellite speed is an input rather than being derived from orbital
//! mechanics: orbits are assumed circular with constant angular velocity, so
//! a single scalar speed fully describes the motion.

use crate::error::{ChannelError, Result};
use crate::SPEED_OF_LIGHT_KM_S;

/// Sidereal Earth rotation rate in rad/s, the default angular velocity.
pub const SIDEREAL_ROTATION_RAD_S: f64 = 7.292_115_9e-5;

/// Spherical rotating Earth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EarthModel {
    /// Mean radius in km.
    pub radius_km: f64,
    /// Rotation rate in rad/s.
    pub angular_velocity_rad_s: f64,
}

impl EarthModel {
    pub fn new(radius_km: f64, angular_velocity_rad_s: f64) -> Result<Self> {
        if !(radius_km > 0.0) {
            return Err(ChannelError::invalid("Earth radius must be positive"));
        }
        if !(angular_velocity_rad_s >= 0.0) {
            return Err(ChannelError::invalid(
                "Earth angular velocity must be non-negative",
            ));
        }
        Ok(Self {
            radius_km,
            angular_velocity_rad_s,
        })
    }
}

/// Circular-orbit satellite state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatelliteState {
    /// Orbit altitude above the surface in km.
    pub altitude_km: f64,
    /// Orbital speed in km/s.
    pub speed_km_s: f64,
    /// Inclination between orbit plane and equatorial plane, radians.
    pub inclination_rad: f64,
}

impl SatelliteState {
    pub fn new(altitude_km: f64, speed_km_s: f64, inclination_rad: f64) -> Result<Self> {
        if !(altitude_km > 0.0) {
            return Err(ChannelError::invalid("orbit altitude must be positive"));
        }
        if !(speed_km_s > 0.0) {
            return Err(ChannelError::invalid("satellite speed must be positive"));
        }
        if !(0.0..=std::f64::consts::PI).contains(&inclination_rad) {
            return Err(ChannelError::invalid("inclination must lie in [0, pi]"));
        }
        Ok(Self {
            altitude_km,
            speed_km_s,
            inclination_rad,
        })
    }

    /// Distance from the Earth's center to the satellite, R + H, in km.
    pub fn orbit_radius_km(&self, earth: &EarthModel) -> f64 {
        earth.radius_km + self.altitude_km
    }
}

/// The served user: either a ground station or an aircraft.
///
/// Airborne velocity is taken as already expressed relative to the rotating
/// atmosphere, so Earth rotation only enters the terrestrial branch
/// explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UserKinematics {
    Terrestrial {
        /// Geocentric latitude in radians, |lat| <= pi/2.
        latitude_rad: f64,
    },
    Airborne {
        /// Aircraft speed in km/s.
        speed_km_s: f64,
        /// Angle between the aircraft velocity and the satellite velocity,
        /// radians.
        heading_angle_rad: f64,
    },
}

impl UserKinematics {
    pub fn terrestrial(latitude_rad: f64) -> Result<Self> {
        if latitude_rad.abs() > std::f64::consts::FRAC_PI_2 {
            return Err(ChannelError::invalid("latitude must lie in [-pi/2, pi/2]"));
        }
        Ok(Self::Terrestrial { latitude_rad })
    }

    pub fn airborne(speed_km_s: f64, heading_angle_rad: f64) -> Result<Self> {
        if !(speed_km_s >= 0.0) {
            return Err(ChannelError::invalid(
                "airborne speed must be non-negative",
            ));
        }
        Ok(Self::Airborne {
            speed_km_s,
            heading_angle_rad,
        })
    }
}

/// Geometry of one pass, anchored at the instant of closest approach.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassGeometry {
    /// Peak elevation of the pass, radians, in (0, pi/2].
    pub max_elevation_rad: f64,
    /// Time of closest approach in seconds.
    pub epoch_s: f64,
    /// Relative angular velocity of the pass in rad/s.
    pub relative_angular_velocity_rad_s: f64,
}

impl PassGeometry {
    pub fn new(
        max_elevation_rad: f64,
        epoch_s: f64,
        relative_angular_velocity_rad_s: f64,
    ) -> Result<Self> {
        if !(max_elevation_rad > 0.0 && max_elevation_rad <= std::f64::consts::FRAC_PI_2) {
            return Err(ChannelError::invalid(
                "maximum elevation must lie in (0, pi/2]",
            ));
        }
        if !(relative_angular_velocity_rad_s > 0.0) {
            return Err(ChannelError::invalid(
                "relative angular velocity must be positive",
            ));
        }
        Ok(Self {
            max_elevation_rad,
            epoch_s,
            relative_angular_velocity_rad_s,
        })
    }

    /// Central angle between user and satellite at closest approach.
    ///
    /// Solves cos(theta_max + gamma0) = R cos(theta_max) / (R + H) for
    /// gamma0.
    pub fn central_angle_at_epoch(&self, earth: &EarthModel, sat: &SatelliteState) -> f64 {
        let hos = sat.orbit_radius_km(earth);
        (earth.radius_km * self.max_elevation_rad.cos() / hos).acos() - self.max_elevation_rad
    }
}

/// Relative speed between satellite and an airborne user:
/// sqrt(|vS|^2 + |vA|^2 - 2 |vS||vA| cos(phi_S)), km/s.
pub fn relative_speed_airborne(sat: &SatelliteState, user: &UserKinematics) -> Result<f64> {
    match user {
        UserKinematics::Airborne {
            speed_km_s,
            heading_angle_rad,
        } => {
            let vs = sat.speed_km_s;
            let va = *speed_km_s;
            Ok((vs * vs + va * va - 2.0 * vs * va * heading_angle_rad.cos()).sqrt())
        }
        UserKinematics::Terrestrial { .. } => Err(ChannelError::invalid(
            "relative_speed_airborne requires an airborne user",
        )),
    }
}

/// Relative speed between satellite and a terrestrial user co-rotating with
/// the Earth:
/// sqrt(|vS|^2 + R^2 wE^2 cos^2(lat) - 2 |vS| R wE cos(lat) cos(incl)), km/s.
pub fn relative_speed_terrestrial(
    earth: &EarthModel,
    sat: &SatelliteState,
    user: &UserKinematics,
) -> Result<f64> {
    match user {
        UserKinematics::Terrestrial { latitude_rad } => {
            let vs = sat.speed_km_s;
            let ve = earth.radius_km * earth.angular_velocity_rad_s * latitude_rad.cos();
            Ok((vs * vs + ve * ve - 2.0 * vs * ve * sat.inclination_rad.cos()).sqrt())
        }
        UserKinematics::Airborne { .. } => Err(ChannelError::invalid(
            "relative_speed_terrestrial requires a terrestrial user",
        )),
    }
}

/// Relative speed for whichever user kind is present.
pub fn relative_speed(
    earth: &EarthModel,
    sat: &SatelliteState,
    user: &UserKinematics,
) -> Result<f64> {
    match user {
        UserKinematics::Terrestrial { .. } => relative_speed_terrestrial(earth, sat, user),
        UserKinematics::Airborne { .. } => relative_speed_airborne(sat, user),
    }
}

/// Relative angular velocity omega = |v_rel| / (R + H), rad/s.
pub fn relative_angular_velocity(
    earth: &EarthModel,
    sat: &SatelliteState,
    rel_speed_km_s: f64,
) -> Result<f64> {
    if !(rel_speed_km_s > 0.0) {
        return Err(ChannelError::invalid("relative speed must be positive"));
    }
    Ok(rel_speed_km_s / sat.orbit_radius_km(earth))
}

/// Slant range from user to satellite at time `t`, km.
///
/// Law of cosines with the pass central angle
/// cos(gamma(t)) = cos(psi(t, t0)) cos(gamma(t0)).
pub fn slant_range_km(
    earth: &EarthModel,
    sat: &SatelliteState,
    pass: &PassGeometry,
    t: f64,
) -> f64 {
    let r = earth.radius_km;
    let hos = sat.orbit_radius_km(earth);
    let cos_gamma0 = pass.central_angle_at_epoch(earth, sat).cos();
    let psi = pass.relative_angular_velocity_rad_s * (t - pass.epoch_s);
    (r * r + hos * hos - 2.0 * r * hos * psi.cos() * cos_gamma0).sqrt()
}

/// Normalized Doppler frequency df/fc at time `t`.
///
/// Equals -s'(t)/c for the slant range s(t); zero at the epoch, negative on
/// approach-to-recede transition, and antisymmetric about the epoch.
pub fn normalized_doppler(
    earth: &EarthModel,
    sat: &SatelliteState,
    pass: &PassGeometry,
    t: f64,
) -> f64 {
    let r = earth.radius_km;
    let hos = sat.orbit_radius_km(earth);
    let omega = pass.relative_angular_velocity_rad_s;
    let cos_gamma0 = pass.central_angle_at_epoch(earth, sat).cos();
    let psi = omega * (t - pass.epoch_s);
    let num = r * hos * psi.sin() * cos_gamma0 * omega;
    let den = (r * r + hos * hos - 2.0 * r * hos * psi.cos() * cos_gamma0).sqrt();
    -num / (SPEED_OF_LIGHT_KM_S * den)
}

/// Normalized Doppler sampled over `[t_start, t_end]` at `step` spacing,
/// returned as (t, df/fc) rows with strictly increasing timestamps.
pub fn doppler_series(
    earth: &EarthModel,
    sat: &SatelliteState,
    pass: &PassGeometry,
    t_start: f64,
    t_end: f64,
    step: f64,
) -> Result<Vec<(f64, f64)>> {
    if !(t_start < t_end) {
        return Err(ChannelError::invalid(
            "doppler series requires t_start < t_end",
        ));
    }
    if !(step > 0.0) {
        return Err(ChannelError::invalid("doppler series step must be positive"));
    }
    let n = ((t_end - t_start) / step).floor() as usize;
    let mut rows = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let t = t_start + i as f64 * step;
        rows.push((t, normalized_doppler(earth, sat, pass, t)));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn earth() -> EarthModel {
        EarthModel::new(6371.393, SIDEREAL_ROTATION_RAD_S).unwrap()
    }

    fn sat() -> SatelliteState {
        SatelliteState::new(300.0, 7.8, 0.0).unwrap()
    }

    #[test]
    fn airborne_stationary_user_sees_satellite_speed() {
        let user = UserKinematics::airborne(0.0, 0.0).unwrap();
        let v = relative_speed_airborne(&sat(), &user).unwrap();
        assert_eq!(v, 7.8);
    }

    #[test]
    fn airborne_collinear_subtracts() {
        let user = UserKinematics::airborne(0.25, 0.0).unwrap();
        let v = relative_speed_airborne(&sat(), &user).unwrap();
        assert!((v - 7.55).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn airborne_perpendicular_matches_vector_subtraction() {
        let user = UserKinematics::airborne(0.25, FRAC_PI_2).unwrap();
        let v = relative_speed_airborne(&sat(), &user).unwrap();
        // 2-D oracle: vS along x, vA rotated by the heading angle.
        let (vs, va, phi) = (7.8, 0.25, FRAC_PI_2);
        let dx = vs - va * phi.cos();
        let dy = -va * phi.sin();
        let oracle = (dx * dx + dy * dy).sqrt();
        assert!((v - oracle).abs() < 1e-12, "{v} vs {oracle}");
        assert!((v - 7.804).abs() < 5e-4);
    }

    #[test]
    fn airborne_triangle_inequality_bounds() {
        let sat = sat();
        for phi in [0.0, 0.3, 1.0, 2.0, PI] {
            let user = UserKinematics::airborne(0.25, phi).unwrap();
            let v = relative_speed_airborne(&sat, &user).unwrap();
            assert!(
                (7.55 - 1e-12..=8.05 + 1e-12).contains(&v),
                "phi={phi}: {v}"
            );
        }
        // exact equality at the collinear extremes
        let aligned = UserKinematics::airborne(0.25, 0.0).unwrap();
        let opposed = UserKinematics::airborne(0.25, PI).unwrap();
        assert!((relative_speed_airborne(&sat, &aligned).unwrap() - 7.55).abs() < 1e-12);
        assert!((relative_speed_airborne(&sat, &opposed).unwrap() - 8.05).abs() < 1e-12);
    }

    #[test]
    fn wrong_user_kind_is_rejected() {
        let terrestrial = UserKinematics::terrestrial(0.0).unwrap();
        let airborne = UserKinematics::airborne(0.2, 0.0).unwrap();
        assert!(relative_speed_airborne(&sat(), &terrestrial).is_err());
        assert!(relative_speed_terrestrial(&earth(), &sat(), &airborne).is_err());
    }

    #[test]
    fn terrestrial_pole_kills_rotation_terms() {
        let user = UserKinematics::terrestrial(FRAC_PI_2).unwrap();
        let v = relative_speed_terrestrial(&earth(), &sat(), &user).unwrap();
        assert!((v - 7.8).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn terrestrial_nonrotating_earth_reduces_to_satellite_speed() {
        let still = EarthModel::new(6371.393, 0.0).unwrap();
        for lat in [0.0, 0.4, -1.2] {
            let user = UserKinematics::terrestrial(lat).unwrap();
            let sat = SatelliteState::new(300.0, 7.8, 0.7).unwrap();
            let v = relative_speed_terrestrial(&still, &sat, &user).unwrap();
            assert!((v - 7.8).abs() < 1e-12, "lat={lat}: {v}");
        }
    }

    #[test]
    fn terrestrial_equator_matches_3d_vector_oracle() {
        // Equatorial user, equatorial orbit: build both velocity vectors in
        // Earth-centered coordinates and subtract.
        let earth = earth();
        let sat = sat();
        let user = UserKinematics::terrestrial(0.0).unwrap();
        let got = relative_speed_terrestrial(&earth, &sat, &user).unwrap();

        // user at (R, 0, 0); east = +y, north = +z
        let v_user = [
            0.0,
            earth.angular_velocity_rad_s * earth.radius_km,
            0.0,
        ];
        // satellite velocity of magnitude |vS| inclined by theta_i from east
        let v_sat = [
            0.0,
            sat.speed_km_s * sat.inclination_rad.cos(),
            sat.speed_km_s * sat.inclination_rad.sin(),
        ];
        let d: Vec<f64> = v_sat.iter().zip(v_user).map(|(a, b)| a - b).collect();
        let oracle = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        assert!((got - oracle).abs() < 1e-12, "{got} vs {oracle}");
    }

    #[test]
    fn terrestrial_inclined_orbit_matches_3d_vector_oracle() {
        let earth = earth();
        let sat = SatelliteState::new(300.0, 7.8, 0.9).unwrap();
        let user = UserKinematics::terrestrial(0.0).unwrap();
        let got = relative_speed_terrestrial(&earth, &sat, &user).unwrap();
        let ve = earth.angular_velocity_rad_s * earth.radius_km;
        let d = [
            sat.speed_km_s * 0.9_f64.cos() - ve,
            sat.speed_km_s * 0.9_f64.sin(),
        ];
        let oracle = (d[0] * d[0] + d[1] * d[1]).sqrt();
        assert!((got - oracle).abs() < 1e-12, "{got} vs {oracle}");
    }

    #[test]
    fn angular_velocity_quotient() {
        let w = relative_angular_velocity(&earth(), &sat(), 7.8).unwrap();
        assert!((w - 7.8 / 6671.393).abs() < 1e-12);
        assert!((w - 1.1692e-3).abs() < 1e-7);
    }

    #[test]
    fn angular_velocity_rejects_zero_speed() {
        assert!(relative_angular_velocity(&earth(), &sat(), 0.0).is_err());
    }

    #[test]
    fn angular_velocity_is_linear() {
        let w1 = relative_angular_velocity(&earth(), &sat(), 3.9).unwrap();
        let w2 = relative_angular_velocity(&earth(), &sat(), 7.8).unwrap();
        assert!((w2 - 2.0 * w1).abs() < 1e-15);
    }

    fn pass() -> PassGeometry {
        PassGeometry::new(FRAC_PI_2, 0.0, 1.1692e-3).unwrap()
    }

    #[test]
    fn doppler_zero_at_epoch() {
        assert_eq!(normalized_doppler(&earth(), &sat(), &pass(), 0.0), 0.0);
    }

    #[test]
    fn doppler_antisymmetric_about_epoch() {
        let (earth, sat, pass) = (earth(), sat(), pass());
        for delta in [0.5, 13.0, 60.0, 299.0] {
            let fwd = normalized_doppler(&earth, &sat, &pass, delta);
            let back = normalized_doppler(&earth, &sat, &pass, -delta);
            assert_eq!(fwd, -back, "delta={delta}");
        }
    }

    #[test]
    fn doppler_matches_finite_difference_slant_range_oracle() {
        // Central difference of the law-of-cosines slant range, divided by
        // -c, reconstructed here without going through the library's
        // doppler path.
        let (earth, sat, pass) = (earth(), sat(), pass());
        let r = earth.radius_km;
        let hos = r + sat.altitude_km;
        let cos_g0 = ((r * pass.max_elevation_rad.cos() / hos).acos()
            - pass.max_elevation_rad)
            .cos();
        let s = |t: f64| {
            let cos_gamma = (pass.relative_angular_velocity_rad_s * t).cos() * cos_g0;
            (r * r + hos * hos - 2.0 * r * hos * cos_gamma).sqrt()
        };
        let h = 1e-3;
        for t in [-240.0, -60.0, 1.0, 60.0, 150.0, 300.0] {
            let oracle = -(s(t + h) - s(t - h)) / (2.0 * h) / SPEED_OF_LIGHT_KM_S;
            let got = normalized_doppler(&earth, &sat, &pass, t);
            assert!(
                (got - oracle).abs() <= 1e-6 * oracle.abs(),
                "t={t}: {got} vs {oracle}"
            );
        }
    }

    #[test]
    fn doppler_magnitude_bounded_by_relative_speed() {
        let (earth, sat, pass) = (earth(), sat(), pass());
        let hos = sat.orbit_radius_km(&earth);
        let bound = pass.relative_angular_velocity_rad_s * hos / SPEED_OF_LIGHT_KM_S;
        let mut t = -2700.0;
        while t <= 2700.0 {
            let f = normalized_doppler(&earth, &sat, &pass, t).abs();
            assert!(f < bound, "t={t}: |df/fc|={f} >= {bound}");
            t += 13.7;
        }
    }

    #[test]
    fn low_elevation_pass_still_antisymmetric_and_bounded() {
        let (earth, sat) = (earth(), sat());
        let pass = PassGeometry::new(0.2, 100.0, 1.1692e-3).unwrap();
        let hos = sat.orbit_radius_km(&earth);
        let bound = pass.relative_angular_velocity_rad_s * hos / SPEED_OF_LIGHT_KM_S;
        for delta in [1.0, 40.0, 200.0] {
            let fwd = normalized_doppler(&earth, &sat, &pass, 100.0 + delta);
            let back = normalized_doppler(&earth, &sat, &pass, 100.0 - delta);
            assert_eq!(fwd, -back);
            assert!(fwd.abs() < bound);
        }
    }

    #[test]
    fn series_center_row_is_zero() {
        let rows = doppler_series(&earth(), &sat(), &pass(), -10.0, 10.0, 10.0).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1].0, 0.0);
        assert_eq!(rows[1].1, 0.0);
    }

    #[test]
    fn series_equals_pointwise_calls() {
        let (earth, sat, pass) = (earth(), sat(), pass());
        let rows = doppler_series(&earth, &sat, &pass, -30.0, 30.0, 7.5).unwrap();
        for (t, f) in rows {
            assert_eq!(f, normalized_doppler(&earth, &sat, &pass, t));
        }
    }

    #[test]
    fn series_peak_matches_grid_search() {
        let (earth, sat, pass) = (earth(), sat(), pass());
        let rows = doppler_series(&earth, &sat, &pass, -300.0, 300.0, 0.5).unwrap();
        let series_peak = rows.iter().map(|(_, f)| f.abs()).fold(0.0, f64::max);
        let mut scalar_peak = 0.0_f64;
        let mut t = -300.0;
        while t <= 300.0 {
            scalar_peak = scalar_peak.max(normalized_doppler(&earth, &sat, &pass, t).abs());
            t += 0.5;
        }
        assert!((series_peak - scalar_peak).abs() < 1e-18);
    }

    #[test]
    fn series_rejects_empty_range() {
        let (earth, sat, pass) = (earth(), sat(), pass());
        assert!(doppler_series(&earth, &sat, &pass, 10.0, 10.0, 1.0).is_err());
        assert!(doppler_series(&earth, &sat, &pass, 0.0, 10.0, 0.0).is_err());
        assert!(doppler_series(&earth, &sat, &pass, 10.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn constructors_enforce_invariants() {
        assert!(EarthModel::new(0.0, 1e-5).is_err());
        assert!(EarthModel::new(6371.0, -1e-5).is_err());
        assert!(SatelliteState::new(-1.0, 7.8, 0.0).is_err());
        assert!(SatelliteState::new(300.0, 7.8, 3.5).is_err());
        assert!(UserKinematics::terrestrial(2.0).is_err());
        assert!(PassGeometry::new(0.0, 0.0, 1e-3).is_err());
        assert!(PassGeometry::new(1.0, 0.0, 0.0).is_err());
    }
}
