//! Multiplicative power-domain loss factors: free-space path loss over the
//! propagation distance, Beer-Lambert molecular absorption, and rain, fog,
//! and cloud attenuation converted from their dB-domain specific-attenuation
//! models.
//!
//! Every weather factor lies in (0, 1] and multiplies the SNR directly. The
//! dB-domain coefficients (K_R, alpha_R, K_L) depend on the carrier
//! frequency and are read from a plain-text [`CoefficientTable`]; the
//! embedded defaults cover 1-100 GHz and can be overridden wholesale.
//! dBm/Watt conversion helpers live here too so that callers keep all dB
//! handling at the configuration boundary.

use crate::error::{ChannelError, Result};
use crate::SPEED_OF_LIGHT_M_S;

/// Carrier description for the path-loss factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarrierSpec {
    /// Carrier frequency in Hz.
    pub frequency_hz: f64,
    /// Path-loss exponent alpha >= 2 (2 is free space).
    pub path_loss_exponent: f64,
}

impl CarrierSpec {
    pub fn new(frequency_hz: f64, path_loss_exponent: f64) -> Result<Self> {
        if !(frequency_hz > 0.0) {
            return Err(ChannelError::invalid("carrier frequency must be positive"));
        }
        if !(path_loss_exponent >= 2.0) {
            return Err(ChannelError::invalid("path-loss exponent must be >= 2"));
        }
        Ok(Self {
            frequency_hz,
            path_loss_exponent,
        })
    }
}

/// One absorbing species with its coefficient at the working frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsorptionSpecies {
    pub name: String,
    /// Absorption coefficient in 1/m at `AbsorptionSpec::frequency_hz`.
    pub coefficient_per_m: f64,
}

/// Beer-Lambert molecular absorption along a homogeneous path.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AbsorptionSpec {
    pub species: Vec<AbsorptionSpecies>,
    /// Medium thickness in meters.
    pub path_length_m: f64,
    /// Frequency the coefficients were taken at, Hz (bookkeeping only).
    pub frequency_hz: f64,
}

impl AbsorptionSpec {
    pub fn validate(&self) -> Result<()> {
        if self.path_length_m < 0.0 {
            return Err(ChannelError::invalid(
                "absorption path length must be non-negative",
            ));
        }
        for s in &self.species {
            if s.coefficient_per_m < 0.0 {
                return Err(ChannelError::invalid(format!(
                    "absorption coefficient for {} must be non-negative",
                    s.name
                )));
            }
        }
        Ok(())
    }
}

/// Rain state: dB/km model coefficients plus the affected path length.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RainModel {
    /// Coefficient K_R of gamma_R = K_R rate^alpha_R.
    pub k_r: f64,
    /// Exponent alpha_R.
    pub alpha_r: f64,
    /// Rain intensity in mm/h.
    pub rate_mm_h: f64,
    /// Path length through the rainfall region, km.
    pub path_km: f64,
}

/// Fog state: gamma_F = K_L * density in dB/km over the foggy path.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FogModel {
    /// Liquid-water specific attenuation coefficient, (dB/km)/(g/m^3).
    pub k_l: f64,
    /// Liquid water density in g/m^3.
    pub density_g_m3: f64,
    /// Path length through the fog, km.
    pub path_km: f64,
}

/// One cloud crossed by the slant path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloudLayer {
    /// Total columnar liquid water L_W in kg/m^2.
    pub columnar_water_kg_m2: f64,
    /// Liquid-water specific attenuation coefficient for this cloud.
    pub k_l: f64,
}

/// Weather along the link. An empty cloud list and zero rates mean clear
/// sky, for which every factor is exactly 1.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeatherConditions {
    pub rain: RainModel,
    pub fog: FogModel,
    pub clouds: Vec<CloudLayer>,
}

impl WeatherConditions {
    pub fn validate(&self) -> Result<()> {
        let nonneg = [
            ("rain K_R", self.rain.k_r),
            ("rain rate", self.rain.rate_mm_h),
            ("rain path", self.rain.path_km),
            ("fog K_L", self.fog.k_l),
            ("fog density", self.fog.density_g_m3),
            ("fog path", self.fog.path_km),
        ];
        for (what, v) in nonneg {
            if v < 0.0 {
                return Err(ChannelError::invalid(format!(
                    "{what} must be non-negative"
                )));
            }
        }
        for c in &self.clouds {
            if c.columnar_water_kg_m2 < 0.0 || c.k_l < 0.0 {
                return Err(ChannelError::invalid(
                    "cloud water content and K_L must be non-negative",
                ));
            }
        }
        Ok(())
    }
}

/// Free-space path loss factor (c / (4 pi f_c))^2 d^{-alpha} for a distance
/// in meters.
pub fn path_loss(carrier: &CarrierSpec, distance_m: f64) -> Result<f64> {
    if !(distance_m > 0.0) {
        return Err(ChannelError::invalid("path-loss distance must be positive"));
    }
    let wavelength_scale = SPEED_OF_LIGHT_M_S / (4.0 * std::f64::consts::PI * carrier.frequency_hz);
    Ok(wavelength_scale * wavelength_scale * distance_m.powf(-carrier.path_loss_exponent))
}

/// Beer-Lambert attenuating factor exp(-sum_i kappa_i r).
pub fn molecular_absorption(spec: &AbsorptionSpec) -> Result<f64> {
    spec.validate()?;
    let total: f64 = spec
        .species
        .iter()
        .map(|s| s.coefficient_per_m * spec.path_length_m)
        .sum();
    Ok((-total).exp())
}

/// Rain specific attenuation gamma_R = K_R rate^alpha_R in dB/km.
pub fn rain_specific_attenuation(rain: &RainModel) -> f64 {
    if rain.rate_mm_h == 0.0 {
        return 0.0;
    }
    rain.k_r * rain.rate_mm_h.powf(rain.alpha_r)
}

/// Rain power factor 10^{-gamma_R d_rain / 10}, in (0, 1].
pub fn rain_factor(rain: &RainModel) -> f64 {
    db_to_linear(-rain_specific_attenuation(rain) * rain.path_km)
}

/// Fog specific attenuation gamma_F = K_L M_den in dB/km.
pub fn fog_specific_attenuation(fog: &FogModel) -> f64 {
    fog.k_l * fog.density_g_m3
}

/// Fog power factor 10^{-gamma_F d_fog / 10}, in (0, 1].
pub fn fog_factor(fog: &FogModel) -> f64 {
    db_to_linear(-fog_specific_attenuation(fog) * fog.path_km)
}

/// Total dB attenuation of one cloud, gamma_C = L_W K_L / sin(theta_e).
pub fn cloud_attenuation_db(cloud: &CloudLayer, true_elevation_rad: f64) -> Result<f64> {
    if !(true_elevation_rad > 0.0 && true_elevation_rad <= std::f64::consts::FRAC_PI_2) {
        return Err(ChannelError::invalid(
            "cloud attenuation needs an elevation in (0, pi/2]",
        ));
    }
    Ok(cloud.columnar_water_kg_m2 * cloud.k_l / true_elevation_rad.sin())
}

/// Combined cloud power factor (prod_i 10^{gamma_C,i/10})^{-1}; exactly 1
/// for an empty list.
pub fn clouds_factor(clouds: &[CloudLayer], true_elevation_rad: f64) -> Result<f64> {
    if clouds.is_empty() {
        return Ok(1.0);
    }
    let mut total_db = 0.0;
    for cloud in clouds {
        total_db += cloud_attenuation_db(cloud, true_elevation_rad)?;
    }
    Ok(db_to_linear(-total_db))
}

/// All the inputs of the mean-SNR scale lambda_t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    /// Transmit power in watts.
    pub transmit_power_w: f64,
    /// Noise power in watts.
    pub noise_power_w: f64,
    pub path_loss: f64,
    pub absorption: f64,
    pub rain: f64,
    pub fog: f64,
    pub clouds: f64,
}

impl LinkBudget {
    /// lambda_t = P_s P_PL P_abs P_Rain P_Fog P_Clouds / sigma^2.
    pub fn lambda_t(&self) -> Result<f64> {
        compose_link_budget(
            self.transmit_power_w,
            self.noise_power_w,
            self.path_loss,
            self.absorption,
            self.rain,
            self.fog,
            self.clouds,
        )
    }
}

/// Compose the mean-SNR scale from its parts.
///
/// The five loss factors are multiplied in ascending magnitude order, so the
/// result is bit-identical however the caller obtained or ordered them.
pub fn compose_link_budget(
    transmit_power_w: f64,
    noise_power_w: f64,
    path_loss_factor: f64,
    absorption_factor: f64,
    rain: f64,
    fog: f64,
    clouds: f64,
) -> Result<f64> {
    if !(transmit_power_w > 0.0 && noise_power_w > 0.0) {
        return Err(ChannelError::invalid(
            "transmit and noise power must be positive",
        ));
    }
    let mut factors = [path_loss_factor, absorption_factor, rain, fog, clouds];
    for f in factors {
        if !(f > 0.0 && f <= 1.0) {
            return Err(ChannelError::invalid(format!(
                "attenuation factors must lie in (0, 1], got {f}"
            )));
        }
    }
    factors.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let product: f64 = factors.iter().product();
    Ok(transmit_power_w / noise_power_w * product)
}

/// dB ratio to linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10.0_f64.powf(db / 10.0)
}

/// Linear power ratio to dB.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10.0_f64.powf((dbm - 30.0) / 10.0)
}

/// Watts to dBm.
pub fn watts_to_dbm(watts: f64) -> f64 {
    10.0 * watts.log10() + 30.0
}

/// Frequency-indexed rain/liquid-water coefficients.
///
/// The text format is one row per frequency, columns
/// `frequency_GHz K_R_h alpha_R_h K_L`, `#` comments and blank lines
/// ignored, rows sorted by frequency. Lookups between tabulated rows
/// interpolate K_R and K_L log-log in frequency and alpha_R linearly in
/// log-frequency; frequencies outside the tabulated span are an error.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    rows: Vec<CoefficientRow>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientRow {
    pub frequency_ghz: f64,
    pub k_r: f64,
    pub alpha_r: f64,
    pub k_l: f64,
}

/// The embedded default coefficient table (1-100 GHz).
pub const DEFAULT_COEFFICIENT_TABLE: &str = include_str!("../data/weather_coefficients.txt");

impl CoefficientTable {
    /// Parse a table from its text form.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(ChannelError::invalid(format!(
                    "coefficient table line {}: expected 4 columns, found {}",
                    lineno + 1,
                    fields.len()
                )));
            }
            let mut values = [0.0_f64; 4];
            for (slot, field) in values.iter_mut().zip(&fields) {
                *slot = field.parse().map_err(|_| {
                    ChannelError::invalid(format!(
                        "coefficient table line {}: cannot parse `{field}` as a number",
                        lineno + 1
                    ))
                })?;
            }
            rows.push(CoefficientRow {
                frequency_ghz: values[0],
                k_r: values[1],
                alpha_r: values[2],
                k_l: values[3],
            });
        }
        if rows.is_empty() {
            return Err(ChannelError::invalid("coefficient table has no rows"));
        }
        if !rows
            .windows(2)
            .all(|w| w[1].frequency_ghz > w[0].frequency_ghz)
        {
            return Err(ChannelError::invalid(
                "coefficient table frequencies must be strictly increasing",
            ));
        }
        Ok(Self { rows })
    }

    /// The embedded defaults.
    pub fn embedded_default() -> Self {
        Self::parse(DEFAULT_COEFFICIENT_TABLE).expect("embedded table parses")
    }

    pub fn rows(&self) -> &[CoefficientRow] {
        &self.rows
    }

    /// Coefficients at `frequency_ghz`, interpolating between rows.
    pub fn lookup(&self, frequency_ghz: f64) -> Result<CoefficientRow> {
        let first = self.rows.first().unwrap();
        let last = self.rows.last().unwrap();
        if frequency_ghz < first.frequency_ghz || frequency_ghz > last.frequency_ghz {
            return Err(ChannelError::invalid(format!(
                "frequency {frequency_ghz} GHz outside the coefficient table span {}..{} GHz",
                first.frequency_ghz, last.frequency_ghz
            )));
        }
        let hi = self
            .rows
            .partition_point(|r| r.frequency_ghz < frequency_ghz);
        if self.rows[hi].frequency_ghz == frequency_ghz {
            return Ok(self.rows[hi]);
        }
        let (a, b) = (&self.rows[hi - 1], &self.rows[hi]);
        let t = (frequency_ghz.ln() - a.frequency_ghz.ln())
            / (b.frequency_ghz.ln() - a.frequency_ghz.ln());
        let log_lerp = |x: f64, y: f64| (x.ln() + t * (y.ln() - x.ln())).exp();
        Ok(CoefficientRow {
            frequency_ghz,
            k_r: log_lerp(a.k_r, b.k_r),
            alpha_r: a.alpha_r + t * (b.alpha_r - a.alpha_r),
            k_l: log_lerp(a.k_l, b.k_l),
        })
    }
}
