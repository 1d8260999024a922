//! Shadowed-Rician small-scale fading.
//!
//! The line-of-sight amplitude follows a Nakagami-m distribution (shadowing),
//! the scatter component is a circularly symmetric complex Gaussian of total
//! power 2 b0, and the two superpose with independent uniform phase. For
//! integer m the confluent-hypergeometric density collapses, via the Laguerre
//! reduction, to a finite mixture of Erlang terms; everything here exploits
//! that finite-sum form.
//!
//! Power gains are linear. The conventional normalization 2 b0 + Omega = 1
//! makes the mean power unity, but the closed forms in the (b0, Omega, m)
//! parameterization hold for unnormalized parameters too. The alternative
//! (K_LoS, K_Sct) parameterization is scale-free and therefore describes the
//! unit-mean channel.

use crate::error::{ChannelError, Result};
use crate::specfun::{binomial, ln_binomial, ln_factorial};
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

// Above this m the per-term products (binomial * c^k * x^k) are formed in
// log space to avoid overflow.
const LOG_DOMAIN_M: u32 = 12;

/// Shadowed-Rician fading parameters (b0, Omega, m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShadowedRicianParams {
    /// Half the mean scatter power: E\[P_nLoS\] = 2 b0.
    pub half_scatter_power: f64,
    /// Mean line-of-sight power Omega.
    pub los_power: f64,
    /// Nakagami shadowing severity m (integer; m = 1 is the harshest).
    pub nakagami_m: u32,
}

impl ShadowedRicianParams {
    pub fn new(half_scatter_power: f64, los_power: f64, nakagami_m: u32) -> Result<Self> {
        if !(half_scatter_power > 0.0) {
            return Err(ChannelError::invalid("b0 must be positive"));
        }
        if !(los_power >= 0.0) {
            return Err(ChannelError::invalid("Omega must be non-negative"));
        }
        if nakagami_m < 1 {
            return Err(ChannelError::invalid(
                "m must be a positive integer; the closed forms use the finite \
                 Laguerre sum over k = 0..m-1",
            ));
        }
        Ok(Self {
            half_scatter_power,
            los_power,
            nakagami_m,
        })
    }

    /// Unit-mean parameters from the Rician factor K = Omega / (2 b0):
    /// 2 b0 = 1/(K+1) and Omega = K/(K+1).
    pub fn normalized(rician_k: f64, nakagami_m: u32) -> Result<Self> {
        if !(rician_k >= 0.0) {
            return Err(ChannelError::invalid("Rician K must be non-negative"));
        }
        Self::new(
            0.5 / (rician_k + 1.0),
            rician_k / (rician_k + 1.0),
            nakagami_m,
        )
    }

    /// Mean scatter power 2 b0.
    pub fn scatter_power(&self) -> f64 {
        2.0 * self.half_scatter_power
    }

    /// Mean total power, E[|h|^2] = 2 b0 + Omega.
    pub fn mean_power(&self) -> f64 {
        self.scatter_power() + self.los_power
    }

    /// Rician factor K = Omega / (2 b0).
    pub fn rician_k(&self) -> f64 {
        self.los_power / self.scatter_power()
    }

    /// Shadowed LoS factor K_LoS = Omega / ((2 b0 + Omega) m) = K/((K+1) m).
    pub fn k_los(&self) -> f64 {
        self.los_power / (self.mean_power() * self.nakagami_m as f64)
    }

    /// Isotropic scattering factor K_Sct = 2 b0 / (2 b0 + Omega) = 1/(K+1).
    pub fn k_sct(&self) -> f64 {
        self.scatter_power() / self.mean_power()
    }

    /// Density prefactor a_ST = (1/(2 b0)) (2 b0 m / (2 b0 m + Omega))^m.
    pub fn a_st(&self) -> f64 {
        let tb = self.scatter_power();
        let m = self.nakagami_m as f64;
        (tb * m / (tb * m + self.los_power)).powi(self.nakagami_m as i32) / tb
    }

    /// Scatter decay rate b_ST = 1/(2 b0). Appears only through
    /// e_ST = b_ST - c_ST but is kept for completeness.
    pub fn b_st(&self) -> f64 {
        1.0 / self.scatter_power()
    }

    /// Cross coupling c_ST = Omega / (2 b0 (2 b0 m + Omega)).
    pub fn c_st(&self) -> f64 {
        let tb = self.scatter_power();
        self.los_power / (tb * (tb * self.nakagami_m as f64 + self.los_power))
    }

    /// Effective decay rate e_ST = b_ST - c_ST = m / (2 b0 m + Omega).
    pub fn e_st(&self) -> f64 {
        let m = self.nakagami_m as f64;
        m / (self.scatter_power() * m + self.los_power)
    }

    /// Mixture weight sigma(k) = (2 b0 m)^{m-k-1} Omega^k / (2 b0 m +
    /// Omega)^{m-1}. Together with the binomial factor these weights sum to
    /// one over k = 0..m-1.
    pub fn mixture_weight(&self, k: u32) -> f64 {
        let tbm = self.scatter_power() * self.nakagami_m as f64;
        let denom = tbm + self.los_power;
        if self.nakagami_m > LOG_DOMAIN_M {
            if self.los_power == 0.0 {
                return if k == 0 { 1.0 } else { 0.0 };
            }
            let ln = (self.nakagami_m - k - 1) as f64 * tbm.ln()
                + k as f64 * self.los_power.ln()
                - (self.nakagami_m - 1) as f64 * denom.ln();
            ln.exp()
        } else {
            tbm.powi((self.nakagami_m - k - 1) as i32) * self.los_power.powi(k as i32)
                / denom.powi(self.nakagami_m as i32 - 1)
        }
    }

    /// Density of the power gain |h|^2 at `x`:
    /// a_ST sum_k C(m-1,k) c_ST^k x^k e^{-e_ST x} / k!.
    pub fn pdf_power(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return Err(ChannelError::invalid("power gain must be non-negative"));
        }
        let m = self.nakagami_m;
        let e_st = self.e_st();
        let c_st = self.c_st();
        if m > LOG_DOMAIN_M {
            // log-domain accumulation with max-shift
            let ln_a = self.a_st().ln();
            let mut ln_terms = Vec::with_capacity(m as usize);
            for k in 0..m {
                let kf = k as f64;
                let ln_t = if k == 0 {
                    ln_a - e_st * x
                } else if x == 0.0 || c_st == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    ln_a + ln_binomial(m - 1, k) + kf * c_st.ln() - ln_factorial(k)
                        + kf * x.ln()
                        - e_st * x
                };
                ln_terms.push(ln_t);
            }
            let peak = ln_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            if peak == f64::NEG_INFINITY {
                return Ok(0.0);
            }
            Ok(peak.exp() * ln_terms.iter().map(|t| (t - peak).exp()).sum::<f64>())
        } else {
            let mut sum = 0.0;
            let mut cx_pow = 1.0; // (c_ST x)^k / k!
            for k in 0..m {
                if k > 0 {
                    cx_pow *= c_st * x / k as f64;
                }
                sum += binomial(m - 1, k) * cx_pow;
            }
            Ok(self.a_st() * sum * (-e_st * x).exp())
        }
    }

    /// Distribution function of the power gain at `x`, by the finite
    /// exponential-sum form: 1 - sum_k C(m-1,k) sigma(k) sum_{p<=k}
    /// (e_ST x)^p e^{-e_ST x} / p!. Exact for unnormalized parameters.
    pub fn cdf_power(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return Err(ChannelError::invalid("power gain must be non-negative"));
        }
        Ok(erlang_mixture_survival_complement(
            self.nakagami_m,
            self.e_st() * x,
            |k| binomial(self.nakagami_m - 1, k) * self.mixture_weight(k),
        ))
    }

    /// Distribution function in the scale-free (K_LoS, K_Sct)
    /// parameterization. Describes the unit-mean channel; identical to
    /// [`Self::cdf_power`] when 2 b0 + Omega = 1.
    pub fn cdf_power_k_form(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return Err(ChannelError::invalid("power gain must be non-negative"));
        }
        Ok(cdf_from_k_factors(
            self.nakagami_m,
            self.k_los(),
            self.k_sct(),
            x,
        ))
    }

    /// Sampler for Monte-Carlo draws of |h|^2.
    pub fn sampler(&self) -> ShadowedRicianSampler {
        ShadowedRicianSampler::new(self)
    }

    /// Draw one power gain. For bulk sampling construct a [`sampler`] once.
    ///
    /// [`sampler`]: Self::sampler
    pub fn sample_power<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.sampler().sample(rng)
    }
}

/// CDF of the unit-mean Shadowed-Rician power gain from the shadowed LoS and
/// scattering factors directly.
pub fn cdf_from_k_factors(m: u32, k_los: f64, k_sct: f64, x: f64) -> f64 {
    let s = k_los + k_sct;
    let sm1 = m.saturating_sub(1) as i32;
    erlang_mixture_survival_complement(m, x / s, |k| {
        binomial(m - 1, k) * k_sct.powi(sm1 - k as i32) * k_los.powi(k as i32) / s.powi(sm1)
    })
}

// Shared CDF skeleton: 1 - sum_k w(k) * P(Poisson(xi) <= k) where xi is the
// scaled abscissa. Poisson partial sums are accumulated once across k.
fn erlang_mixture_survival_complement<W: Fn(u32) -> f64>(m: u32, xi: f64, weight: W) -> f64 {
    if xi == 0.0 {
        // sum_k w(k) = 1 by the binomial identity, so F(0) = 0 exactly.
        return 0.0;
    }
    // Poisson terms in log space when xi is large enough to overflow powers.
    let log_domain = xi > 500.0;
    let mut survival = 0.0;
    let mut poisson_partial = 0.0;
    let mut term = (-xi).exp();
    for k in 0..m {
        if log_domain {
            let ln_t = k as f64 * xi.ln() - ln_factorial(k) - xi;
            poisson_partial += ln_t.exp();
        } else {
            if k > 0 {
                term *= xi / k as f64;
            }
            poisson_partial += term;
        }
        survival += weight(k) * poisson_partial;
    }
    (1.0 - survival).clamp(0.0, 1.0)
}

/// Reusable sampler for |h|^2 draws.
///
/// Construction: LoS amplitude A = sqrt(G) with G ~ Gamma(m, Omega/m)
/// (a Nakagami-m amplitude of power Omega), uniform phase, plus a circularly
/// symmetric complex Gaussian of total power 2 b0.
#[derive(Debug, Clone, Copy)]
pub struct ShadowedRicianSampler {
    los_gamma: Option<Gamma<f64>>,
    scatter_sigma: f64,
}

impl ShadowedRicianSampler {
    pub fn new(params: &ShadowedRicianParams) -> Self {
        let los_gamma = if params.los_power > 0.0 {
            // shape >= 1 and scale > 0 guaranteed by parameter invariants
            Some(
                Gamma::new(
                    params.nakagami_m as f64,
                    params.los_power / params.nakagami_m as f64,
                )
                .expect("validated parameters"),
            )
        } else {
            None
        };
        Self {
            los_gamma,
            scatter_sigma: params.half_scatter_power.sqrt(),
        }
    }
}

impl Distribution<f64> for ShadowedRicianSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let amplitude = match &self.los_gamma {
            Some(g) => g.sample(rng).sqrt(),
            None => 0.0,
        };
        let phase = rng.random_range(0.0..std::f64::consts::TAU);
        let z_re: f64 = rng.sample(StandardNormal);
        let z_im: f64 = rng.sample(StandardNormal);
        let re = amplitude * phase.cos() + self.scatter_sigma * z_re;
        let im = amplitude * phase.sin() + self.scatter_sigma * z_im;
        re * re + im * im
    }
}
