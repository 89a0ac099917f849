//! The extended Mathieu series S_{mu,p}(r) in its three baseline forms.
//!
//! At p = 0 this is the classical series sum_{n>=1} 2n / (n^2 + r^2)^{mu+1}
//! (mu > 0). The extension damps the Bose kernel of its integral
//! representation by e^{-p/t}, which keeps every representation below
//! meaningful for all p >= 0 and mu >= -1/2:
//!
//! - [`s_series`]: power series in r^2 with extended-zeta coefficients,
//!   2 sum_{n>=0} (-r^2)^n binom(mu+n, n) zeta_p(2 mu + 2n + 1), |r| < 1;
//! - [`s_integral`]: sqrt(pi) / ((2r)^{mu-1/2} Gamma(mu+1)) times the
//!   Bessel-J Bose integral, any r > 0;
//! - [`s_classical`]: direct summation of the p = 0 series with an
//!   integral-bracket tail estimate, any r >= 0 (and the p = 0 oracle the
//!   other two must reproduce).
//!
//! The Schlomilch-type representations for half-integer and integer mu live
//! in the `schlomilch` module and are cross-checked against these.

use crate::error::{Error, Result};
use crate::quad::{integrate_semi_infinite, IntegrandSpec, Oscillator, Weight};
use crate::types::{EvalResult, MethodKind};
use crate::zeta_p::{zeta_p, ALPHA_MAX};

/// Parameter triple (mu, p, r) with the shared domain rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MathieuParams {
    pub mu: f64,
    pub p: f64,
    pub r: f64,
}

/// Largest mu accepted; keeps Bessel orders and binomial growth in range.
pub const MU_MAX: f64 = 50.0;

impl MathieuParams {
    pub fn new(mu: f64, p: f64, r: f64) -> Result<Self> {
        let s = MathieuParams { mu, p, r };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let MathieuParams { mu, p, r } = *self;
        if !mu.is_finite() || !p.is_finite() || !r.is_finite() {
            return Err(Error::domain(format!(
                "parameters must be finite, got mu = {mu}, p = {p}, r = {r}"
            )));
        }
        if r <= 0.0 {
            return Err(Error::domain(format!("need r > 0, got {r}")));
        }
        if p < 0.0 {
            return Err(Error::domain(format!("need p >= 0, got {p}")));
        }
        if p == 0.0 && mu <= 0.0 {
            return Err(Error::domain(format!(
                "at p = 0 the series diverges unless mu > 0, got mu = {mu}"
            )));
        }
        if p > 0.0 && mu < -0.5 {
            return Err(Error::domain(format!("need mu >= -1/2, got {mu}")));
        }
        if mu > MU_MAX {
            return Err(Error::domain(format!("mu = {mu} exceeds cap {MU_MAX}")));
        }
        Ok(())
    }
}

/// Zeta-coefficient power series; converges for |r| < 1.
///
/// The n = 0 term at mu = -1/2 involves zeta_p(0) = 0, so the series starts
/// cleanly everywhere in the domain. Terms alternate in sign with positive
/// coefficients, so once they decrease the first omitted term bounds the
/// tail.
pub fn s_series(params: &MathieuParams, tol: f64) -> Result<EvalResult> {
    s_series_observed(params, tol, |_, _| {})
}

/// Running partial sums of the series form, as (terms used, partial value)
/// pairs ending at the converged value, plus the converged result.
pub fn s_series_partials(
    params: &MathieuParams,
    tol: f64,
) -> Result<(Vec<(u64, f64)>, EvalResult)> {
    let mut partials = Vec::new();
    let res = s_series_observed(params, tol, |n, run| partials.push((n, run)))?;
    Ok((partials, res))
}

fn s_series_observed(
    params: &MathieuParams,
    tol: f64,
    mut observe: impl FnMut(u64, f64),
) -> Result<EvalResult> {
    params.validate()?;
    let MathieuParams { mu, p, r } = *params;
    if r >= 1.0 {
        return Err(Error::domain(format!(
            "series form needs |r| < 1, got r = {r} (use the integral form)"
        )));
    }
    let tol = tol.max(1e-15);
    let r2 = r * r;
    let n_cap = (((ALPHA_MAX - 1.0 - 2.0 * mu) / 2.0).floor() as u32).min(5000);

    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut binom = 1.0f64; // binom(mu + n, n), updated multiplicatively
    let mut r2n = 1.0f64; // r^{2n}
    let mut zeta_err = 0.0f64;
    let mut zeta_work = 0u64;
    let mut prev_abs = f64::INFINITY;
    let mut decreasing_run = 0u32;
    for n in 0..=n_cap {
        if n > 0 {
            let nf = n as f64;
            binom *= (mu + nf) / nf;
            r2n *= r2;
        }
        let alpha = 2.0 * mu + 2.0 * (n as f64) + 1.0;
        let z = zeta_p(alpha, p, tol * 0.1)?;
        zeta_work += z.terms_or_nodes;
        let coeff = 2.0 * r2n * binom;
        let term = if n % 2 == 0 { coeff * z.value } else { -coeff * z.value };
        zeta_err += coeff * z.err_estimate;
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        observe(n as u64 + 1, sum);

        let ta = term.abs();
        decreasing_run = if ta < prev_abs { decreasing_run + 1 } else { 0 };
        prev_abs = ta;
        // Alternating tail: the next term bounds it once decrease has set
        // in (the coefficient ratio is monotone, so decrease persists).
        if decreasing_run >= 2 && ta <= tol * sum.abs().max(1e-300) {
            return Ok(EvalResult::new(
                sum,
                ta + zeta_err + 4.0 * f64::EPSILON * sum.abs(),
                n as u64 + 1 + zeta_work,
                MethodKind::Series,
            ));
        }
    }
    Err(Error::convergence(
        format!("series at mu = {mu}, p = {p}, r = {r}: term cap reached"),
        sum,
        prev_abs + zeta_err,
    ))
}

/// Bessel-integral form:
/// S_{mu,p}(r) = sqrt(pi)/((2r)^{mu-1/2} Gamma(mu+1))
///               int_0^inf t^{mu+1/2} e^{-p/t}/(e^t-1) J_{mu-1/2}(rt) dt.
///
/// Works for any r > 0; the one representation valid beyond |r| < 1.
pub fn s_integral(params: &MathieuParams, tol: f64) -> Result<EvalResult> {
    params.validate()?;
    let MathieuParams { mu, p, r } = *params;
    let ln_pref = 0.5 * std::f64::consts::PI.ln() - (mu - 0.5) * (2.0 * r).ln()
        - crate::kernels::ln_gamma(mu + 1.0)?;
    if ln_pref.abs() > 690.0 {
        return Err(Error::domain(format!(
            "integral form prefactor overflows at mu = {mu}, r = {r} (use the series form)"
        )));
    }
    let spec = IntegrandSpec {
        sigma: mu + 0.5,
        p,
        weight: Weight::Bose,
        oscillator: Oscillator::BesselJ { nu: mu - 0.5, gamma: r },
        ln_shift: 0.0,
    };
    let q = integrate_semi_infinite(&spec, tol.max(1e-14) * 0.5)?;
    let pref = ln_pref.exp();
    let value = pref * q.value;
    Ok(EvalResult::new(
        value,
        pref * q.err_estimate + 4.0 * f64::EPSILON * value.abs(),
        q.terms_or_nodes,
        MethodKind::Integral,
    ))
}

/// Classical series S_mu(r) = sum_{n>=1} 2n/(n^2+r^2)^{mu+1} for p = 0,
/// mu > 0, summed directly with an integral-bracket tail: the remainder
/// past N lies between the integrals from N+1 and from N, whose midpoint
/// is taken and half-gap charged as error.
pub fn s_classical(mu: f64, r: f64, tol: f64) -> Result<EvalResult> {
    if !mu.is_finite() || !r.is_finite() || mu <= 0.0 || r < 0.0 {
        return Err(Error::domain(format!(
            "classical series needs mu > 0 and r >= 0, got mu = {mu}, r = {r}"
        )));
    }
    if mu > MU_MAX {
        return Err(Error::domain(format!("mu = {mu} exceeds cap {MU_MAX}")));
    }
    let tol = tol.max(1e-15);
    let r2 = r * r;
    let tail_mid = |m: f64| -> (f64, f64) {
        // Integral of 2x/(x^2+r^2)^{mu+1} from m and from m+1.
        let hi = (m * m + r2).powf(-mu) / mu;
        let lo = ((m + 1.0) * (m + 1.0) + r2).powf(-mu) / mu;
        (0.5 * (hi + lo), 0.5 * (hi - lo))
    };

    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let max_n: u64 = 50_000_000;
    let mut n: u64 = 0;
    loop {
        n += 1;
        let nf = n as f64;
        let term = 2.0 * nf * (nf * nf + r2).powf(-(mu + 1.0));
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        // Check the bracket only once past the term peak (n ~ r) and on a
        // sparse schedule to keep the powf count down.
        if nf > r && (n.is_multiple_of(16) || n < 64) {
            let (mid, half_gap) = tail_mid(nf);
            let total = sum + mid;
            if half_gap <= tol * total.abs().max(1e-300) {
                return Ok(EvalResult::new(
                    total,
                    half_gap + 4.0 * f64::EPSILON * total.abs(),
                    n,
                    MethodKind::Classical,
                ));
            }
        }
        if n >= max_n {
            let (mid, half_gap) = tail_mid(nf);
            return Err(Error::convergence(
                format!("classical series at mu = {mu}, r = {r}: term cap reached"),
                sum + mid,
                half_gap,
            ));
        }
    }
}
