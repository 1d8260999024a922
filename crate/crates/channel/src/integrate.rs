//! Adaptive Simpson quadrature.
//!
//! Used by the Tricomi confluent hypergeometric evaluation and by the
//! self-validation suite when cross-checking closed forms against their
//! defining integrals.

use crate::error::{ChannelError, Result};

const MAX_DEPTH: u32 = 60;

/// Integrate `f` over `[a, b]` to the requested relative tolerance.
///
/// The tolerance is applied against the running magnitude of the integral, so
/// callers do not need to know the result scale in advance. Subdivision depth
/// is capped; exceeding it reports `NonConvergence` rather than returning a
/// silently inaccurate value.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(ChannelError::invalid("integration bounds must be finite"));
    }
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    // Floor the error budget so integrals that are legitimately ~0 terminate.
    let abs_tol = (rel_tol * whole.abs()).max(rel_tol * 1e-12);
    recurse(&f, a, b, fa, fm, fb, whole, abs_tol, MAX_DEPTH)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    abs_tol: f64,
    depth: u32,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * abs_tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(ChannelError::NonConvergence(format!(
            "adaptive quadrature exhausted subdivision depth on [{a}, {b}]"
        )));
    }
    let half_tol = 0.5 * abs_tol;
    Ok(recurse(f, a, m, fa, flm, fm, left, half_tol, depth - 1)?
        + recurse(f, m, b, fm, frm, fb, right, half_tol, depth - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = adaptive_simpson(|x| x * x * x - 2.0 * x, -1.0, 3.0, 1e-12).unwrap();
        // antiderivative x^4/4 - x^2 evaluated on [-1, 3]
        assert!((v - 12.0).abs() < 1e-10, "got {v}");
    }

    #[test]
    fn smooth_transcendental() {
        let v = adaptive_simpson(f64::exp, 0.0, 1.0, 1e-12).unwrap();
        assert!((v - (std::f64::consts::E - 1.0)).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn near_singular_integrand_converges() {
        // 1/(x + 1e-4) over [0, 1]: steep but integrable.
        let eps = 1e-4;
        let v = adaptive_simpson(|x| 1.0 / (x + eps), 0.0, 1.0, 1e-11).unwrap();
        let exact = ((1.0 + eps) / eps).ln();
        assert!((v - exact).abs() / exact < 1e-10, "got {v}, want {exact}");
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(adaptive_simpson(|x| x, 2.0, 2.0, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn rejects_non_finite_bounds() {
        assert!(adaptive_simpson(|x| x, 0.0, f64::INFINITY, 1e-9).is_err());
    }
}
