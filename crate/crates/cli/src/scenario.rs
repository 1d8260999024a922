//! Scenario files: one TOML document per scenario, degrees/dBm/GHz at the
//! boundary, converted exactly once into the core model's radians, watts,
//! and hertz.
//!
//! Unknown keys are rejected so typos surface at load time, and every
//! semantic check reports the offending `section.field` path.

use crate::{CliError, CliResult};
use sagin_channel::attenuation::{
    dbm_to_watts, AbsorptionSpec, AbsorptionSpecies, CarrierSpec, CloudLayer, CoefficientTable,
    FogModel, RainModel, WeatherConditions,
};
use sagin_channel::fading::ShadowedRicianParams;
use sagin_channel::geometry::GeometryScenario;
use sagin_channel::kinematics::{
    relative_angular_velocity, relative_speed, EarthModel, PassGeometry, SatelliteState,
    UserKinematics,
};
use sagin_channel::montecarlo::McConfig;
use sagin_channel::refraction::RefractionProfile;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// The baseline scenario shipped with the repository.
pub const BASELINE_SCENARIO: &str = include_str!("../../../scenarios/baseline.scenario");

/// Thermal noise floor in dBm/Hz used when the noise power is given through
/// a bandwidth.
pub const NOISE_FLOOR_DBM_HZ: f64 = -170.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub geometry: GeometrySection,
    pub refraction: RefractionSection,
    pub fading: FadingSection,
    pub carrier: CarrierSection,
    pub power: PowerSection,
    #[serde(default)]
    pub weather: WeatherSection,
    #[serde(default)]
    pub absorption: AbsorptionSection,
    pub analysis: AnalysisSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    pub earth_radius_km: f64,
    #[serde(default = "default_earth_rotation")]
    pub earth_rotation_rad_s: f64,
    pub altitude_km: f64,
    pub satellite_speed_km_s: f64,
    #[serde(default)]
    pub inclination_deg: f64,
    pub detected_elevation_deg: f64,
    #[serde(default = "default_max_elevation")]
    pub max_elevation_deg: f64,
    #[serde(default)]
    pub epoch_s: f64,
    pub user: UserKind,
    #[serde(default)]
    pub latitude_deg: f64,
    #[serde(default)]
    pub airborne_speed_km_s: f64,
    #[serde(default)]
    pub heading_deg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UserKind {
    Terrestrial,
    Airborne,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefractionSection {
    pub surface_refractivity: f64,
    pub scale_height_km: f64,
    #[serde(default = "default_quadrature_order")]
    pub quadrature_order: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FadingSection {
    pub b0: f64,
    pub omega: f64,
    pub m: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarrierSection {
    pub frequency_ghz: f64,
    #[serde(default = "default_path_loss_exponent")]
    pub path_loss_exponent: f64,
    #[serde(default)]
    pub distance_model: DistanceModel,
}

/// Which distance feeds the path-loss factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceModel {
    /// Refracted-ray length (the full model).
    #[default]
    Bending,
    /// Straight chord to the satellite.
    Straight,
    /// Flat-Earth benchmark H / sin(theta0).
    Flat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerSection {
    pub transmit_dbm: f64,
    #[serde(default)]
    pub noise_dbm: Option<f64>,
    #[serde(default)]
    pub bandwidth_hz: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeatherSection {
    #[serde(default)]
    pub rain_rate_mm_h: f64,
    #[serde(default)]
    pub rain_path_km: f64,
    /// Explicit K_R override; resolved from the coefficient table otherwise.
    #[serde(default)]
    pub rain_k_r: Option<f64>,
    #[serde(default)]
    pub rain_alpha_r: Option<f64>,
    #[serde(default)]
    pub fog_density_g_m3: f64,
    #[serde(default)]
    pub fog_path_km: f64,
    /// Explicit fog K_L override.
    #[serde(default)]
    pub fog_k_l: Option<f64>,
    #[serde(default)]
    pub clouds: Vec<CloudSection>,
    /// Path to a coefficient table file; the embedded defaults otherwise.
    /// Relative paths are resolved against the scenario file's directory.
    #[serde(default)]
    pub coefficient_table: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CloudSection {
    pub columnar_water_kg_m2: f64,
    #[serde(default)]
    pub k_l: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbsorptionSection {
    #[serde(default)]
    pub path_length_m: f64,
    #[serde(default)]
    pub species: Vec<SpeciesSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesSection {
    pub name: String,
    pub coefficient_per_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSection {
    pub outage_threshold: f64,
    #[serde(default = "default_qam_order")]
    pub qam_order: u32,
    #[serde(default = "default_trials")]
    pub mc_trials: u64,
    #[serde(default = "default_seed")]
    pub mc_seed: u64,
    #[serde(default = "default_streams")]
    pub mc_streams: u32,
}

fn default_earth_rotation() -> f64 {
    sagin_channel::kinematics::SIDEREAL_ROTATION_RAD_S
}
fn default_max_elevation() -> f64 {
    90.0
}
fn default_quadrature_order() -> u32 {
    RefractionProfile::DEFAULT_ORDER
}
fn default_path_loss_exponent() -> f64 {
    2.0
}
fn default_qam_order() -> u32 {
    4
}
fn default_trials() -> u64 {
    1_000_000
}
fn default_seed() -> u64 {
    42
}
fn default_streams() -> u32 {
    8
}

impl Scenario {
    /// The embedded baseline scenario.
    pub fn baseline() -> Self {
        Self::from_toml(BASELINE_SCENARIO).expect("embedded baseline parses")
    }

    /// Parse a scenario from TOML text. Parse errors carry the offending
    /// line/column from the TOML reader.
    pub fn from_toml(text: &str) -> CliResult<Self> {
        let scenario: Scenario =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        scenario.validate()?;
        Ok(scenario)
    }

    /// Load a scenario file, resolving a relative coefficient-table path
    /// against the file's directory.
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let mut scenario = Self::from_toml(&text)
            .map_err(|e| match e {
                CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
                other => other,
            })?;
        if let Some(table) = &scenario.weather.coefficient_table {
            let table_path = Path::new(table);
            if table_path.is_relative() {
                if let Some(dir) = path.parent() {
                    scenario.weather.coefficient_table =
                        Some(dir.join(table_path).to_string_lossy().into_owned());
                }
            }
        }
        Ok(scenario)
    }

    /// Serialize the effective scenario back to TOML. A file written this
    /// way reloads to an identical `Scenario`.
    pub fn dump(&self) -> String {
        toml::to_string_pretty(self).expect("scenario serializes")
    }

    /// Field-path-labelled semantic validation on top of the type checks.
    pub fn validate(&self) -> CliResult<()> {
        let check = |ok: bool, path: &str, msg: &str| -> CliResult<()> {
            if ok {
                Ok(())
            } else {
                Err(CliError::Config(format!("{path}: {msg}")))
            }
        };
        let g = &self.geometry;
        check(g.earth_radius_km > 0.0, "geometry.earth_radius_km", "must be positive")?;
        check(
            g.earth_rotation_rad_s >= 0.0,
            "geometry.earth_rotation_rad_s",
            "must be non-negative",
        )?;
        check(g.altitude_km > 0.0, "geometry.altitude_km", "must be positive")?;
        check(
            g.satellite_speed_km_s > 0.0,
            "geometry.satellite_speed_km_s",
            "must be positive",
        )?;
        check(
            (0.0..=180.0).contains(&g.inclination_deg),
            "geometry.inclination_deg",
            "must lie in [0, 180]",
        )?;
        check(
            g.detected_elevation_deg > 0.0 && g.detected_elevation_deg <= 90.0,
            "geometry.detected_elevation_deg",
            "must lie in (0, 90]",
        )?;
        check(
            g.max_elevation_deg > 0.0 && g.max_elevation_deg <= 90.0,
            "geometry.max_elevation_deg",
            "must lie in (0, 90]",
        )?;
        check(
            g.latitude_deg.abs() <= 90.0,
            "geometry.latitude_deg",
            "must lie in [-90, 90]",
        )?;
        check(
            g.airborne_speed_km_s >= 0.0,
            "geometry.airborne_speed_km_s",
            "must be non-negative",
        )?;

        let r = &self.refraction;
        check(
            r.surface_refractivity >= 0.0,
            "refraction.surface_refractivity",
            "must be non-negative",
        )?;
        check(r.scale_height_km > 0.0, "refraction.scale_height_km", "must be positive")?;
        check(
            r.quadrature_order >= 8,
            "refraction.quadrature_order",
            "must be at least 8",
        )?;

        check(self.fading.b0 > 0.0, "fading.b0", "must be positive")?;
        check(self.fading.omega >= 0.0, "fading.omega", "must be non-negative")?;
        check(self.fading.m >= 1, "fading.m", "must be a positive integer")?;

        check(
            self.carrier.frequency_ghz > 0.0,
            "carrier.frequency_ghz",
            "must be positive",
        )?;
        check(
            self.carrier.path_loss_exponent >= 2.0,
            "carrier.path_loss_exponent",
            "must be at least 2",
        )?;

        check(
            self.power.noise_dbm.is_some() || self.power.bandwidth_hz.is_some(),
            "power",
            "either noise_dbm or bandwidth_hz is required",
        )?;
        if let Some(bw) = self.power.bandwidth_hz {
            check(bw > 0.0, "power.bandwidth_hz", "must be positive")?;
        }

        let w = &self.weather;
        check(w.rain_rate_mm_h >= 0.0, "weather.rain_rate_mm_h", "must be non-negative")?;
        check(w.rain_path_km >= 0.0, "weather.rain_path_km", "must be non-negative")?;
        check(
            w.fog_density_g_m3 >= 0.0,
            "weather.fog_density_g_m3",
            "must be non-negative",
        )?;
        check(w.fog_path_km >= 0.0, "weather.fog_path_km", "must be non-negative")?;
        for (i, c) in w.clouds.iter().enumerate() {
            check(
                c.columnar_water_kg_m2 >= 0.0,
                &format!("weather.clouds[{i}].columnar_water_kg_m2"),
                "must be non-negative",
            )?;
        }

        check(
            self.absorption.path_length_m >= 0.0,
            "absorption.path_length_m",
            "must be non-negative",
        )?;
        for (i, s) in self.absorption.species.iter().enumerate() {
            check(
                s.coefficient_per_m >= 0.0,
                &format!("absorption.species[{i}].coefficient_per_m"),
                "must be non-negative",
            )?;
        }

        let a = &self.analysis;
        check(
            a.outage_threshold > 0.0,
            "analysis.outage_threshold",
            "must be positive",
        )?;
        check(a.mc_trials >= 1_000, "analysis.mc_trials", "must be at least 1000")?;
        check(a.mc_streams >= 1, "analysis.mc_streams", "must be at least 1")?;
        // qam_order validity is enforced by the performance layer; surface
        // it here with the config path
        sagin_channel::performance::PerformanceInputs::new(
            1.0,
            self.fading_params()?,
            a.qam_order,
            a.outage_threshold,
        )
        .map_err(|e| CliError::Config(format!("analysis.qam_order: {e}")))?;
        Ok(())
    }

    pub fn earth_model(&self) -> CliResult<EarthModel> {
        Ok(EarthModel::new(
            self.geometry.earth_radius_km,
            self.geometry.earth_rotation_rad_s,
        )?)
    }

    pub fn satellite(&self) -> CliResult<SatelliteState> {
        Ok(SatelliteState::new(
            self.geometry.altitude_km,
            self.geometry.satellite_speed_km_s,
            self.geometry.inclination_deg.to_radians(),
        )?)
    }

    pub fn user(&self) -> CliResult<UserKinematics> {
        Ok(match self.geometry.user {
            UserKind::Terrestrial => {
                UserKinematics::terrestrial(self.geometry.latitude_deg.to_radians())?
            }
            UserKind::Airborne => UserKinematics::airborne(
                self.geometry.airborne_speed_km_s,
                self.geometry.heading_deg.to_radians(),
            )?,
        })
    }

    /// Geometry at the scenario's detected elevation.
    pub fn geometry_scenario(&self) -> CliResult<GeometryScenario> {
        self.geometry_at(self.geometry.detected_elevation_deg)
    }

    /// Geometry at another detected elevation (for sweeps), degrees.
    pub fn geometry_at(&self, detected_elevation_deg: f64) -> CliResult<GeometryScenario> {
        Ok(GeometryScenario::new(
            self.earth_model()?,
            self.satellite()?,
            self.user()?,
            detected_elevation_deg.to_radians(),
        )?)
    }

    /// Pass geometry with the relative angular velocity derived from the
    /// configured user kind.
    pub fn pass_geometry(&self) -> CliResult<PassGeometry> {
        let earth = self.earth_model()?;
        let sat = self.satellite()?;
        let rel = relative_speed(&earth, &sat, &self.user()?)?;
        let omega = relative_angular_velocity(&earth, &sat, rel)?;
        Ok(PassGeometry::new(
            self.geometry.max_elevation_deg.to_radians(),
            self.geometry.epoch_s,
            omega,
        )?)
    }

    pub fn refraction_profile(&self) -> CliResult<RefractionProfile> {
        Ok(RefractionProfile::from_refractivity(
            self.refraction.surface_refractivity,
            self.refraction.scale_height_km,
            self.refraction.quadrature_order,
        )?)
    }

    pub fn fading_params(&self) -> CliResult<ShadowedRicianParams> {
        Ok(ShadowedRicianParams::new(
            self.fading.b0,
            self.fading.omega,
            self.fading.m,
        )?)
    }

    pub fn carrier_spec(&self) -> CliResult<CarrierSpec> {
        Ok(CarrierSpec::new(
            self.carrier.frequency_ghz * 1e9,
            self.carrier.path_loss_exponent,
        )?)
    }

    pub fn transmit_w(&self) -> f64 {
        dbm_to_watts(self.power.transmit_dbm)
    }

    /// Noise power in watts, from `noise_dbm` when present, else from the
    /// bandwidth against the -170 dBm/Hz floor.
    pub fn noise_w(&self) -> CliResult<f64> {
        if let Some(dbm) = self.power.noise_dbm {
            return Ok(dbm_to_watts(dbm));
        }
        let bw = self.power.bandwidth_hz.ok_or_else(|| {
            CliError::Config("power: either noise_dbm or bandwidth_hz is required".into())
        })?;
        Ok(dbm_to_watts(NOISE_FLOOR_DBM_HZ + 10.0 * bw.log10()))
    }

    /// The coefficient table: the referenced file, or the embedded default.
    pub fn coefficient_table(&self) -> CliResult<CoefficientTable> {
        match &self.weather.coefficient_table {
            None => Ok(CoefficientTable::embedded_default()),
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("weather.coefficient_table: {e}")))?;
                Ok(CoefficientTable::parse(&text)
                    .map_err(|e| CliError::Config(format!("weather.coefficient_table: {e}")))?)
            }
        }
    }

    /// Weather state with rain/fog/cloud coefficients resolved: explicit
    /// overrides win, otherwise the coefficient table is consulted at the
    /// carrier frequency. A missing table entry is only an error when the
    /// corresponding weather effect is actually active.
    pub fn weather_conditions(&self, table: &CoefficientTable) -> CliResult<WeatherConditions> {
        let w = &self.weather;
        let f_ghz = self.carrier.frequency_ghz;
        let lookup = |active: bool, what: &str| -> CliResult<Option<f64>> {
            if !active {
                return Ok(None);
            }
            match table.lookup(f_ghz) {
                Ok(row) => Ok(Some(match what {
                    "k_r" => row.k_r,
                    "alpha_r" => row.alpha_r,
                    _ => row.k_l,
                })),
                Err(e) => Err(CliError::Config(format!(
                    "weather: no coefficient for {what} at {f_ghz} GHz: {e}"
                ))),
            }
        };

        let rain_active = w.rain_rate_mm_h > 0.0 && w.rain_path_km > 0.0;
        let rain = RainModel {
            k_r: match w.rain_k_r {
                Some(v) => v,
                None => lookup(rain_active, "k_r")?.unwrap_or(0.0),
            },
            alpha_r: match w.rain_alpha_r {
                Some(v) => v,
                None => lookup(rain_active, "alpha_r")?.unwrap_or(1.0),
            },
            rate_mm_h: w.rain_rate_mm_h,
            path_km: w.rain_path_km,
        };

        let fog_active = w.fog_density_g_m3 > 0.0 && w.fog_path_km > 0.0;
        let fog = FogModel {
            k_l: match w.fog_k_l {
                Some(v) => v,
                None => lookup(fog_active, "k_l")?.unwrap_or(0.0),
            },
            density_g_m3: w.fog_density_g_m3,
            path_km: w.fog_path_km,
        };

        let mut clouds = Vec::with_capacity(w.clouds.len());
        for c in &w.clouds {
            let k_l = match c.k_l {
                Some(v) => v,
                None => lookup(c.columnar_water_kg_m2 > 0.0, "k_l")?.unwrap_or(0.0),
            };
            clouds.push(CloudLayer {
                columnar_water_kg_m2: c.columnar_water_kg_m2,
                k_l,
            });
        }

        let conditions = WeatherConditions { rain, fog, clouds };
        conditions.validate().map_err(|e| {
            CliError::Config(format!("weather: {e}"))
        })?;
        Ok(conditions)
    }

    pub fn absorption_spec(&self) -> AbsorptionSpec {
        AbsorptionSpec {
            species: self
                .absorption
                .species
                .iter()
                .map(|s| AbsorptionSpecies {
                    name: s.name.clone(),
                    coefficient_per_m: s.coefficient_per_m,
                })
                .collect(),
            path_length_m: self.absorption.path_length_m,
            frequency_hz: self.carrier.frequency_ghz * 1e9,
        }
    }

    pub fn mc_config(&self) -> CliResult<McConfig> {
        Ok(McConfig::new(
            self.analysis.mc_trials,
            self.analysis.mc_seed,
            self.analysis.mc_streams,
        )?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn baseline_parses_and_validates() {
        let s = Scenario::baseline();
        assert_eq!(s.fading.m, 4);
        assert_eq!(s.geometry.detected_elevation_deg, 60.0);
        assert!((s.noise_w().unwrap() - 1e-12).abs() < 1e-24);
        assert!((s.transmit_w() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn dump_round_trips_to_identical_scenario() {
        let s = Scenario::baseline();
        let dumped = s.dump();
        let reparsed = Scenario::from_toml(&dumped).unwrap();
        assert_eq!(s, reparsed);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = BASELINE_SCENARIO.replace("outage_threshold", "outage_treshold");
        let err = Scenario::from_toml(&text).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("outage_treshold"), "{err}");
    }

    #[test]
    fn semantic_validation_names_the_field() {
        let text = BASELINE_SCENARIO.replace("b0 = 0.1", "b0 = -0.1");
        let err = Scenario::from_toml(&text).unwrap_err();
        assert!(err.to_string().contains("fading.b0"), "{err}");
    }

    #[test]
    fn noise_from_bandwidth_uses_the_floor() {
        // -170 dBm/Hz + 10 log10(1e8) = -90 dBm = 1e-12 W
        let mut s = Scenario::baseline();
        s.power.noise_dbm = None;
        s.power.bandwidth_hz = Some(1e8);
        assert!((s.noise_w().unwrap() - 1e-12).abs() < 1e-24);
    }

    #[test]
    fn explicit_noise_dbm_wins_over_bandwidth() {
        let mut s = Scenario::baseline();
        s.power.noise_dbm = Some(-100.0);
        s.power.bandwidth_hz = Some(1e8);
        assert!((s.noise_w().unwrap() - 1e-13).abs() < 1e-25);
    }

    #[test]
    fn missing_noise_definition_is_a_config_error() {
        let text = BASELINE_SCENARIO.replace("noise_dbm = -90.0", "");
        let err = Scenario::from_toml(&text).unwrap_err();
        assert!(err.to_string().contains("noise_dbm or bandwidth_hz"), "{err}");
    }

    #[test]
    fn airborne_user_converts() {
        let text = BASELINE_SCENARIO
            .replace("user = \"terrestrial\"", "user = \"airborne\"")
            .replace(
                "latitude_deg = 0.0",
                "airborne_speed_km_s = 0.25\nheading_deg = 90.0",
            );
        let s = Scenario::from_toml(&text).unwrap();
        match s.user().unwrap() {
            UserKinematics::Airborne { speed_km_s, .. } => {
                assert_eq!(speed_km_s, 0.25)
            }
            _ => panic!("expected airborne user"),
        }
        // relative speed follows the airborne branch
        let pass = s.pass_geometry().unwrap();
        assert!(pass.relative_angular_velocity_rad_s > 0.0);
    }

    #[test]
    fn weather_coefficients_resolve_from_embedded_table() {
        let text = BASELINE_SCENARIO
            .replace("rain_rate_mm_h = 0.0", "rain_rate_mm_h = 25.0")
            .replace("rain_path_km = 0.0", "rain_path_km = 4.0");
        let s = Scenario::from_toml(&text).unwrap();
        let table = s.coefficient_table().unwrap();
        let w = s.weather_conditions(&table).unwrap();
        assert_eq!(w.rain.k_r, 0.0000847);
        assert_eq!(w.rain.alpha_r, 1.0664);
    }

    #[test]
    fn explicit_rain_override_wins() {
        let text = BASELINE_SCENARIO
            .replace("rain_rate_mm_h = 0.0", "rain_rate_mm_h = 25.0\nrain_k_r = 0.5\nrain_alpha_r = 1.0")
            .replace("rain_path_km = 0.0", "rain_path_km = 4.0");
        let s = Scenario::from_toml(&text).unwrap();
        let table = s.coefficient_table().unwrap();
        let w = s.weather_conditions(&table).unwrap();
        assert_eq!(w.rain.k_r, 0.5);
        assert_eq!(w.rain.alpha_r, 1.0);
    }

    #[test]
    fn clear_sky_outside_table_span_is_fine() {
        // 300 GHz is outside the table, but with no active weather nothing
        // needs the coefficients.
        let text = BASELINE_SCENARIO.replace("frequency_ghz = 2.0", "frequency_ghz = 300.0");
        let s = Scenario::from_toml(&text).unwrap();
        let table = s.coefficient_table().unwrap();
        let w = s.weather_conditions(&table).unwrap();
        assert_eq!(w.rain.k_r, 0.0);
        // ...but active rain at that frequency is an error
        let text = text
            .replace("rain_rate_mm_h = 0.0", "rain_rate_mm_h = 10.0")
            .replace("rain_path_km = 0.0", "rain_path_km = 2.0");
        let s = Scenario::from_toml(&text).unwrap();
        assert!(s.weather_conditions(&table).is_err());
    }
}
