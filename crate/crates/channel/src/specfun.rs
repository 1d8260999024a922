//! Special functions backing the closed-form performance expressions:
//! exponential integral Ei, integer-shape incomplete gamma, the Tricomi
//! confluent hypergeometric function at equal parameters, Kummer's 1F1
//! (kept as an independent oracle), and Laguerre polynomials.
//!
//! Only integer shape parameters are supported. Every closed form consumed
//! by the performance chain uses finite sums over k = 0..m-1, so the general
//! real-parameter machinery is intentionally out of scope.

use crate::error::{ChannelError, Result};
use crate::integrate::adaptive_simpson;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// n! as f64. Exact for n <= 20, correctly rounded well past that.
pub fn factorial(n: u32) -> f64 {
    let mut acc = 1.0_f64;
    for i in 2..=n as u64 {
        acc *= i as f64;
    }
    acc
}

/// ln(n!).
pub fn ln_factorial(n: u32) -> f64 {
    let mut acc = 0.0_f64;
    for i in 2..=n as u64 {
        acc += (i as f64).ln();
    }
    acc
}

/// Binomial coefficient C(n, k) as f64.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0_f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// ln C(n, k), for the log-domain accumulation paths.
pub fn ln_binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Principal-value exponential integral Ei(x), x != 0.
///
/// For x < 0 this equals -E1(-x). Evaluation: power series around zero,
/// continued fraction for E1 when the argument is large and negative (where
/// the series cancels catastrophically), asymptotic expansion for large
/// positive arguments.
pub fn exp_integral_ei(x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(ChannelError::domain(
            "Ei has a logarithmic singularity at x = 0",
        ));
    }
    if !x.is_finite() {
        return Err(ChannelError::invalid("Ei argument must be finite"));
    }
    if x > 30.0 {
        return Ok(ei_asymptotic(x));
    }
    if x >= -2.0 {
        return Ok(ei_series(x));
    }
    // x < -2: Ei(x) = -E1(-x) via continued fraction.
    Ok(-e1_continued_fraction(-x))
}

/// First exponential integral E1(x) = -Ei(-x), x > 0.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(ChannelError::domain("E1 requires x > 0"));
    }
    Ok(-exp_integral_ei(-x)?)
}

/// The scaled product e^x E1(x), x > 0, evaluated without forming e^x.
///
/// e^x overflows past x ~ 709 while e^x E1(x) ~ 1/x stays finite, and the
/// ergodic-rate closed form needs exactly this product at arguments that
/// grow like the reciprocal of the mean SNR.
pub fn exp_e1_scaled(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(ChannelError::domain("exp_e1_scaled requires x > 0"));
    }
    if x <= 2.0 {
        return Ok(x.exp() * -ei_series(-x));
    }
    // The continued fraction yields E1(x) e^x directly.
    Ok(e1_continued_fraction_scaled(x))
}

// Ei(x) = gamma + ln|x| + sum x^k / (k * k!), safe for |x| <= ~2 when x < 0
// and any moderate positive x.
fn ei_series(x: f64) -> f64 {
    let mut term = 1.0_f64;
    let mut sum = 0.0_f64;
    for k in 1..=200u32 {
        term *= x / k as f64;
        let contrib = term / k as f64;
        sum += contrib;
        if contrib.abs() < 1e-17 * sum.abs().max(1.0) {
            break;
        }
    }
    EULER_GAMMA + x.abs().ln() + sum
}

// E1(x) for x > 2 by the standard continued fraction (modified Lentz).
fn e1_continued_fraction(x: f64) -> f64 {
    e1_continued_fraction_scaled(x) * (-x).exp()
}

// e^x E1(x) for x > 2: the continued fraction before the e^{-x} factor.
fn e1_continued_fraction_scaled(x: f64) -> f64 {
    const FPMIN: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=200u64 {
        let a = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}

// Ei(x) ~ e^x/x * sum k!/x^k for large positive x; truncate at the smallest
// term.
fn ei_asymptotic(x: f64) -> f64 {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 1..=200u32 {
        let next = term * k as f64 / x;
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    x.exp() / x * sum
}

/// Lower incomplete gamma with integer shape, via the finite exponential sum
/// gamma(a, b) = (a-1)! (1 - e^{-b} sum_{p<a} b^p/p!).
///
/// For b < a the algebraically identical tail series
/// (a-1)! e^{-b} sum_{p>=a} b^p/p! is used instead, which avoids the
/// cancellation of the leading form at small arguments.
pub fn lower_incomplete_gamma_int(a: u32, b: f64) -> Result<f64> {
    if a < 1 {
        return Err(ChannelError::invalid(
            "incomplete gamma shape must be a positive integer",
        ));
    }
    if b < 0.0 {
        return Err(ChannelError::domain("incomplete gamma requires b >= 0"));
    }
    if b == 0.0 {
        return Ok(0.0);
    }
    let fact = factorial(a - 1);
    if b < a as f64 {
        // tail series: e^{-b} * sum_{p >= a} b^p / p!
        let mut term = (-b).exp();
        for p in 1..=a as u64 {
            term *= b / p as f64;
        }
        // term = e^{-b} b^a / a!
        let mut sum = 0.0;
        let mut p = a as u64;
        loop {
            sum += term;
            p += 1;
            term *= b / p as f64;
            // the second clause covers leading terms that underflow to zero
            if term < 1e-18 * sum || term == 0.0 {
                break;
            }
        }
        Ok(fact * sum)
    } else {
        let mut partial = 0.0_f64;
        let mut term = 1.0_f64;
        for p in 0..a {
            if p > 0 {
                term *= b / p as f64;
            }
            partial += term;
        }
        Ok(fact * (1.0 - (-b).exp() * partial))
    }
}

/// Upper incomplete gamma with integer shape:
/// Gamma(a, b) = (a-1)! e^{-b} sum_{p<a} b^p/p!.
pub fn upper_incomplete_gamma_int(a: u32, b: f64) -> Result<f64> {
    if a < 1 {
        return Err(ChannelError::invalid(
            "incomplete gamma shape must be a positive integer",
        ));
    }
    if b < 0.0 {
        return Err(ChannelError::domain("incomplete gamma requires b >= 0"));
    }
    if b > 500.0 {
        // e^{-b} underflows while b^p overflows; form each combined term in
        // log space instead
        let ln_fact = ln_factorial(a - 1);
        let mut ln_terms = Vec::with_capacity(a as usize);
        for p in 0..a {
            ln_terms.push(ln_fact + p as f64 * b.ln() - ln_factorial(p) - b);
        }
        let peak = ln_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if peak == f64::NEG_INFINITY || peak < -745.0 {
            return Ok(0.0);
        }
        return Ok(peak.exp() * ln_terms.iter().map(|t| (t - peak).exp()).sum::<f64>());
    }
    let mut partial = 0.0_f64;
    let mut term = 1.0_f64;
    for p in 0..a {
        if p > 0 {
            term *= b / p as f64;
        }
        partial += term;
    }
    Ok(factorial(a - 1) * (-b).exp() * partial)
}

/// Tricomi confluent hypergeometric function at equal parameters,
/// Psi(a, a; x) for integer a >= 1 and x > 0.
///
/// Evaluated through the integral representation
/// Psi(a, b; x) = (1/Gamma(a)) Int_0^inf e^{-xt} t^{a-1} (1+t)^{b-a-1} dt,
/// which at b = a reduces the last factor to 1/(1+t). The substitution
/// s = x t moves the exponential scale to unity before the adaptive pass.
pub fn tricomi_u_equal(a: u32, x: f64) -> Result<f64> {
    if a < 1 {
        return Err(ChannelError::invalid(
            "Tricomi shape must be a positive integer",
        ));
    }
    if x <= 0.0 {
        return Err(ChannelError::domain("Tricomi Psi(a,a;x) requires x > 0"));
    }
    // Psi(a,a;x) = x^{1-a}/Gamma(a) * Int_0^inf e^{-s} s^{a-1} / (x + s) ds
    let am1 = (a - 1) as f64;
    let integrand = |s: f64| {
        if s == 0.0 {
            if a == 1 {
                1.0 / x
            } else {
                0.0
            }
        } else {
            (-s + am1 * s.ln()).exp() / (x + s)
        }
    };
    let s_max = 45.0 + 12.0 * a as f64;
    // Split at the exponential knee and at the 1/(x+s) knee so the adaptive
    // pass starts from well-scaled panels.
    let mut cuts = vec![0.0, s_max];
    for c in [x.min(1.0), 1.0, am1.max(2.0)] {
        if c > 0.0 && c < s_max {
            cuts.push(c);
        }
    }
    cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    cuts.dedup();
    let mut integral = 0.0;
    for w in cuts.windows(2) {
        integral += adaptive_simpson(integrand, w[0], w[1], 1e-12)?;
    }
    Ok(x.powi(1 - a as i32) / factorial(a - 1) * integral)
}

/// Kummer confluent hypergeometric 1F1(a; 1; z) for integer a, by direct
/// series summation. Serves as the independent oracle for the Laguerre
/// reduction of the fading density.
pub fn kummer_1f1(a: u32, z: f64) -> Result<f64> {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for j in 0..10_000u32 {
        let jf = j as f64;
        term *= (a as f64 + jf) * z / ((jf + 1.0) * (jf + 1.0));
        sum += term;
        if term.abs() < 1e-14 * sum.abs().max(1.0) {
            return Ok(sum);
        }
    }
    Err(ChannelError::NonConvergence(format!(
        "1F1({a}; 1; {z}) did not converge within 10^4 terms"
    )))
}

/// Laguerre polynomial L_n(x) by its finite series.
pub fn laguerre(n: u32, x: f64) -> f64 {
    let mut sum = 0.0_f64;
    let mut x_pow = 1.0_f64;
    for k in 0..=n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += binomial(n, k) * sign * x_pow / factorial(k);
        x_pow *= x;
    }
    sum
}
