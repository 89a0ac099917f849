//! The extended zeta function zeta_p(alpha): the Riemann zeta function with
//! an exponential damping factor e^{-p/t} inserted into its Bose-integral
//! kernel. At p = 0 it reduces to zeta(alpha); for p > 0 it is an entire
//! function of alpha (here restricted to alpha >= 0), with zeta_p(0) = 0.
//!
//! Two independent computational routes cross-check each other:
//!
//! - [`zeta_p_integral`]: direct quadrature of
//!   (1/Gamma(alpha)) int_0^inf t^{alpha-1} e^{-p/t} / (e^t - 1) dt;
//! - [`zeta_p_kseries`]: expanding 1/(e^t - 1) termwise turns the integral
//!   into 2 p^{alpha/2}/Gamma(alpha) sum_{n>=1} K_alpha(2 sqrt(np)) / n^{alpha/2},
//!   an exponentially convergent Bessel-K sum.
//!
//! [`zeta_p`] dispatches: the Riemann route at p = 0, the K sum when its
//! arguments are large enough to converge briskly (p >= 0.05), the integral
//! otherwise, and a rescaled integral for alpha past the Bessel order cap.

use crate::error::{Error, Result};
use crate::kernels::{bessel_k_real, ln_gamma, riemann_zeta};
use crate::quad::{integrate_semi_infinite, tail_sum, IntegrandSpec, Oscillator, Weight};
use crate::types::{EvalResult, MethodKind};

/// Largest alpha accepted; set by where the rescaled-integral route keeps
/// its interior peak (near t = alpha) inside the quadrature scan window.
pub const ALPHA_MAX: f64 = 5000.0;

/// K-sum route requires the Bessel order alpha within the kernel cap.
const ALPHA_KSERIES_MAX: f64 = 50.0;

/// Below this p the K-sum arguments 2 sqrt(np) decay too slowly to be the
/// default; the integral route takes over. Tunable per call through
/// [`zeta_p_with_threshold`].
pub const P_KSERIES_MIN: f64 = 0.05;

fn validate(alpha: f64, p: f64) -> Result<()> {
    if !alpha.is_finite() || !p.is_finite() || p < 0.0 {
        return Err(Error::domain(format!(
            "zeta_p: need finite alpha and p >= 0, got alpha = {alpha}, p = {p}"
        )));
    }
    if p == 0.0 && alpha <= 1.0 {
        return Err(Error::domain(format!(
            "zeta_p: at p = 0 the series is the Riemann zeta and needs alpha > 1, got {alpha}"
        )));
    }
    if alpha < 0.0 {
        return Err(Error::domain(format!("zeta_p: alpha = {alpha} < 0 not supported")));
    }
    if alpha > ALPHA_MAX {
        return Err(Error::domain(format!("zeta_p: alpha = {alpha} exceeds cap {ALPHA_MAX}")));
    }
    Ok(())
}

/// zeta_p(alpha) by the route best suited to (alpha, p).
pub fn zeta_p(alpha: f64, p: f64, tol: f64) -> Result<EvalResult> {
    zeta_p_with_threshold(alpha, p, tol, P_KSERIES_MIN)
}

/// As [`zeta_p`] with an explicit K-series/integral dispatch threshold on p.
pub fn zeta_p_with_threshold(
    alpha: f64,
    p: f64,
    tol: f64,
    p_kseries_min: f64,
) -> Result<EvalResult> {
    validate(alpha, p)?;
    if !p_kseries_min.is_finite() || p_kseries_min <= 0.0 {
        return Err(Error::domain(format!(
            "zeta_p: dispatch threshold must be positive and finite, got {p_kseries_min}"
        )));
    }
    if p == 0.0 {
        let v = riemann_zeta(alpha)?;
        return Ok(EvalResult::new(v, 1e-15 * v, 0, MethodKind::ZetaRiemann));
    }
    if alpha == 0.0 {
        // 1/Gamma(alpha) vanishes while the integral stays finite.
        return Ok(EvalResult::new(0.0, 0.0, 0, MethodKind::ZetaIntegral));
    }
    if alpha > ALPHA_KSERIES_MAX {
        return zeta_p_large_alpha(alpha, p, tol);
    }
    if p >= p_kseries_min {
        zeta_p_kseries(alpha, p, tol)
    } else {
        zeta_p_integral(alpha, p, tol)
    }
}

/// Bose-integral route:
/// zeta_p(alpha) = (1/Gamma(alpha)) int_0^inf t^{alpha-1} e^{-p/t}/(e^t-1) dt.
///
/// Valid for p > 0 with any alpha in (0, 170] (the raw integral value stays
/// within f64 there), and for p = 0 with alpha > 1.
pub fn zeta_p_integral(alpha: f64, p: f64, tol: f64) -> Result<EvalResult> {
    validate(alpha, p)?;
    if alpha == 0.0 {
        return Ok(EvalResult::new(0.0, 0.0, 0, MethodKind::ZetaIntegral));
    }
    if alpha > 170.0 {
        return Err(Error::domain(format!(
            "zeta_p_integral: raw integral overflows past alpha = 170, got {alpha} (use zeta_p)"
        )));
    }
    let spec = IntegrandSpec {
        sigma: alpha - 1.0,
        p,
        weight: Weight::Bose,
        oscillator: Oscillator::None,
        ln_shift: 0.0,
    };
    let r = integrate_semi_infinite(&spec, tol.max(1e-14) * 0.5)?;
    let g = ln_gamma(alpha)?.exp();
    Ok(EvalResult::new(r.value / g, r.err_estimate / g + 2e-15 * (r.value / g).abs(),
        r.terms_or_nodes, MethodKind::ZetaIntegral))
}

/// Bessel-K sum route:
/// zeta_p(alpha) = (2 p^{alpha/2}/Gamma(alpha))
///                 sum_{n>=1} K_alpha(2 sqrt(np)) / n^{alpha/2}.
///
/// Terms decay like e^{-2 sqrt(np)}; the route needs p > 0 and an order
/// within the Bessel kernel cap.
pub fn zeta_p_kseries(alpha: f64, p: f64, tol: f64) -> Result<EvalResult> {
    validate(alpha, p)?;
    if p == 0.0 || alpha == 0.0 || alpha > ALPHA_KSERIES_MAX {
        return Err(Error::domain(format!(
            "zeta_p_kseries: needs p > 0 and 0 < alpha <= {ALPHA_KSERIES_MAX}, got alpha = {alpha}, p = {p}"
        )));
    }
    // ln of 2 p^{alpha/2} / Gamma(alpha); applied after summing so the raw
    // terms (which can be huge for small p and large alpha) cancel it.
    let ln_pref = std::f64::consts::LN_2 + 0.5 * alpha * p.ln() - ln_gamma(alpha)?;
    let ts = tail_sum("zeta_p_kseries", tol.max(1e-15), 200_000, |n| {
        let nf = n as f64;
        let x = 2.0 * (nf * p).sqrt();
        let k = bessel_k_real(alpha, x)?;
        let t = k / nf.powf(0.5 * alpha);
        if !t.is_finite() {
            return Err(Error::Overflow(format!(
                "zeta_p_kseries: term n = {n} overflows at alpha = {alpha}, p = {p}"
            )));
        }
        Ok((t, 1e-13 * t.abs()))
    })?;
    let pref = ln_pref.exp();
    let value = pref * ts.value;
    if !value.is_finite() {
        return Err(Error::Overflow(format!(
            "zeta_p_kseries: value overflows at alpha = {alpha}, p = {p}"
        )));
    }
    Ok(EvalResult::new(value, pref * ts.err + 1e-15 * value.abs(), ts.terms,
        MethodKind::ZetaKSeries))
}

/// Rescaled-integral route for alpha beyond the Bessel order cap.
///
/// Expanding the Bose factor, zeta_p(alpha) = sum_k k^{-alpha} E_k with
/// E_k = (1/Gamma(alpha)) int_0^inf s^{alpha-1} e^{-s - pk/s} ds, a mean of
/// e^{-pk/X} under X ~ Gamma(alpha, 1), so 0 < E_k < 1. Each E_k is one
/// quadrature, computed shifted by the integrand's interior peak so nothing
/// overflows; k^{-alpha} truncates the sum after at most a handful of terms.
fn zeta_p_large_alpha(alpha: f64, p: f64, tol: f64) -> Result<EvalResult> {
    let kmax = (10f64.powf(18.0 / alpha)).ceil().clamp(1.0, 6.0) as u32;
    let lg = ln_gamma(alpha)?;
    let am1 = alpha - 1.0;
    let mut total = 0.0f64;
    let mut err = 0.0f64;
    let mut nodes = 0u64;
    for k in 1..=kmax {
        let pk = p * k as f64;
        // Peak of (alpha-1) ln s - s - pk/s.
        let s_star = 0.5 * (am1 + (am1 * am1 + 4.0 * pk).sqrt());
        let shift = am1 * s_star.ln() - s_star - pk / s_star;
        let spec = IntegrandSpec {
            sigma: am1,
            p: pk,
            weight: Weight::Exp { q: 1.0 },
            oscillator: Oscillator::None,
            ln_shift: shift,
        };
        let r = integrate_semi_infinite(&spec, tol.max(1e-14) * 0.25)?;
        let scale = (shift - lg - alpha * (k as f64).ln()).exp();
        total += scale * r.value;
        err += scale * r.err_estimate;
        nodes += r.terms_or_nodes;
    }
    // Tail of the k sum: each E_k < 1 and alpha > 50.
    err += 2.0 * ((kmax + 1) as f64).powf(-alpha);
    Ok(EvalResult::new(total, err + 2e-15 * total.abs(), nodes, MethodKind::ZetaIntegral))
}
