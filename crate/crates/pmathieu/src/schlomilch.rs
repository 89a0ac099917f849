//! Schlomilch-type representation sums for S_{mu,p}(r) at half-integer and
//! integer mu, built from closed Laplace-kernel forms.
//!
//! Expanding the Bose factor of the integral form termwise in e^{-kt} turns
//! S_{mu,p} into a sum over k of integrals with closed forms in the pair
//!
//! ```text
//! z_-+ = sqrt(2p) [sqrt(q^2 + gamma^2) -+ q]^{1/2},   q = k,
//! ```
//!
//! either as products J(z_-) K(z_+) under q-derivatives (half-integer mu)
//! or as Bessel-K values at conjugate complex arguments (integer mu). Each
//! representation here carries a different failure surface than the series
//! and integral forms in `mathieu`, which is what makes them useful as
//! cross-checks:
//!
//! - [`repr_b2`]  mu = -1/2: first-derivative sum (and [`repr_b2_analytic`],
//!   the same sum with the derivative taken by hand);
//! - [`repr_b1`]  mu = 1/2: third-derivative sum over a two-product kernel;
//! - [`repr_thm1`] mu = n - 3/2, n in {2,3,4}: n-th derivative sums;
//! - [`repr_b3`]  mu = 0, [`repr_b4`] mu = 1, [`repr_b7`] mu = 2:
//!   conjugate-pair K sums, evaluated twin-by-twin so the imaginary
//!   residual measures implementation error;
//! - [`repr_thm1_fractional`]: experimental fractional-order extension of
//!   the derivative sums via right-sided Grunwald-Letnikov composition.
//!
//! [`repr_partials`] exposes the running partial sums of any form for
//! convergence studies.

use crate::error::{Error, Result};
use crate::gl::{gl_fractional_integral_right, nth_derivative_raw, GlConfig};
use crate::kernels::{bessel_j, bessel_k_complex, bessel_k_real, gamma_fn};
use crate::quad::{tail_sum, tail_sum_observed};
use crate::types::{EvalResult, MethodKind};
use num_complex::Complex64;

/// Conjugate-pair terms whose imaginary residual exceeds this (relative to
/// the term magnitude) indicate kernel-level inconsistency.
pub const TWIN_RESIDUE_CAP: f64 = 1e-10;

const MAX_TERMS: u32 = 5000;

/// The argument pair z_-+ at (q, gamma, p), with s = sqrt(q^2 + gamma^2).
/// z_- uses the cancellation-free form sqrt(2p) gamma / sqrt(s + q).
#[derive(Debug, Clone, Copy)]
pub struct ZPair {
    pub z_minus: f64,
    pub z_plus: f64,
    pub s: f64,
}

pub fn z_pair(q: f64, gamma: f64, p: f64) -> Result<ZPair> {
    if !(q > 0.0 && gamma > 0.0 && p > 0.0)
        || !q.is_finite()
        || !gamma.is_finite()
        || !p.is_finite()
    {
        return Err(Error::domain(format!(
            "z_pair needs positive finite (q, gamma, p), got ({q}, {gamma}, {p})"
        )));
    }
    let s = q.hypot(gamma);
    let root = (s + q).sqrt();
    let c = (2.0 * p).sqrt();
    Ok(ZPair { z_minus: c * gamma / root, z_plus: c * root, s })
}

fn check_pg(p: f64, gamma: f64) -> Result<()> {
    if !(p > 0.0 && gamma > 0.0) || !p.is_finite() || !gamma.is_finite() {
        return Err(Error::domain(format!(
            "representation sums need p > 0 and r > 0, got p = {p}, r = {gamma}"
        )));
    }
    Ok(())
}

/// Closed form of int_0^inf t^{-1} e^{-qt - p/t} J_nu(gamma t) dt.
pub fn kernel_a(nu: f64, q: f64, gamma: f64, p: f64) -> Result<f64> {
    let z = z_pair(q, gamma, p)?;
    Ok(2.0 * bessel_j(nu, z.z_minus)? * bessel_k_real(nu, z.z_plus)?)
}

/// Closed form of int_0^inf t^{-2} e^{-qt - p/t} J_0(gamma t) dt.
pub fn kernel_b(q: f64, gamma: f64, p: f64) -> Result<f64> {
    let z = z_pair(q, gamma, p)?;
    let j0 = bessel_j(0.0, z.z_minus)?;
    let j1 = bessel_j(1.0, z.z_minus)?;
    let k0 = bessel_k_real(0.0, z.z_plus)?;
    let k1 = bessel_k_real(1.0, z.z_plus)?;
    Ok(2.0 * gamma * (j1 * k0 / z.z_plus + j0 * k1 / z.z_minus))
}

/// Closed form of int_0^inf t^{nu-1} e^{-qt - p/t} cos(gamma t) dt for
/// integer nu in 1..=3, via K_nu at the conjugate-pair argument.
pub fn kernel_e(nu: u32, q: f64, gamma: f64, p: f64) -> Result<f64> {
    if !(1..=3).contains(&nu) {
        return Err(Error::domain(format!("kernel_e: nu must be 1..=3, got {nu}")));
    }
    let (wp, wm) = twin(nu, 0.5 * nu as f64, q, gamma, p, TWIN_RESIDUE_CAP)?;
    Ok(p.powf(0.5 * nu as f64) * (wp + wm).re)
}

/// Both members of the conjugate pair
/// w_-+ = K_nu(2 sqrt(p (q -+ i gamma))) / (q -+ i gamma)^pow,
/// each computed independently. Exact arithmetic would make them exact
/// conjugates; the relative size of the imaginary residual of their sum is
/// checked against `residue_cap`.
fn twin(
    nu: u32,
    pow: f64,
    q: f64,
    gamma: f64,
    p: f64,
    residue_cap: f64,
) -> Result<(Complex64, Complex64)> {
    let a_plus = Complex64::new(q, gamma);
    let a_minus = Complex64::new(q, -gamma);
    let wp = bessel_k_complex(nu, 2.0 * (p * a_plus).sqrt())? / a_plus.powf(pow);
    let wm = bessel_k_complex(nu, 2.0 * (p * a_minus).sqrt())? / a_minus.powf(pow);
    let scale = wp.norm().max(wm.norm()).max(1e-300);
    let resid = (wp + wm).im.abs() / scale;
    if resid > residue_cap {
        return Err(Error::InternalConsistency(format!(
            "conjugate pair at nu = {nu}, q = {q}, gamma = {gamma}, p = {p}: \
             imaginary residual {resid:.3e} exceeds {residue_cap:.1e}"
        )));
    }
    Ok((wp, wm))
}

/// Term-indexed identity of each representation sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumForm {
    B1,
    B2,
    B3,
    B4,
    B7,
    /// Derivative order n in {2, 3, 4}.
    Thm1(u32),
}

impl SumForm {
    /// The mu this form evaluates S at.
    pub fn mu(self) -> f64 {
        match self {
            SumForm::B2 => -0.5,
            SumForm::B3 => 0.0,
            SumForm::B1 => 0.5,
            SumForm::B4 => 1.0,
            SumForm::B7 => 2.0,
            SumForm::Thm1(n) => n as f64 - 1.5,
        }
    }

    pub fn method(self) -> MethodKind {
        match self {
            SumForm::B1 => MethodKind::B1,
            SumForm::B2 => MethodKind::B2,
            SumForm::B3 => MethodKind::B3,
            SumForm::B4 => MethodKind::B4,
            SumForm::B7 => MethodKind::B7,
            SumForm::Thm1(_) => MethodKind::Thm1Integer,
        }
    }

    fn label(self) -> &'static str {
        match self {
            SumForm::B1 => "repr b1",
            SumForm::B2 => "repr b2",
            SumForm::B3 => "repr b3",
            SumForm::B4 => "repr b4",
            SumForm::B7 => "repr b7",
            SumForm::Thm1(_) => "repr thm1",
        }
    }

    fn validate(self) -> Result<()> {
        if let SumForm::Thm1(n) = self {
            if !(2..=4).contains(&n) {
                return Err(Error::domain(format!(
                    "thm1 derivative order n must be 2..=4, got {n}"
                )));
            }
        }
        Ok(())
    }

    /// Kernel evaluations per term (stencil points or conjugate twins).
    fn evals_per_term(self) -> u64 {
        match self {
            SumForm::B2 => 12,
            SumForm::B1 | SumForm::Thm1(3) => 18,
            SumForm::Thm1(2) => 13,
            SumForm::Thm1(_) => 19,
            SumForm::B3 | SumForm::B4 => 2,
            SumForm::B7 => 2,
        }
    }
}

/// One raw term of a (non-composite) form, before the prefactor, with its
/// error contribution.
fn form_term(form: SumForm, k: u32, p: f64, r: f64) -> Result<(f64, f64)> {
    let q = k as f64;
    match form {
        SumForm::B2 => {
            let kern = |x: f64| -> Result<f64> {
                let z = z_pair(x, r, p)?;
                Ok(bessel_j(1.0, z.z_minus)? * bessel_k_real(1.0, z.z_plus)?)
            };
            nth_derivative_raw(kern, q, 1, stencil_step(1, p))
        }
        SumForm::B1 => {
            let kern = |x: f64| -> Result<f64> { Ok(kernel_b(x, r, p)? / (2.0 * r)) };
            nth_derivative_raw(kern, q, 3, stencil_step(3, p))
        }
        SumForm::Thm1(n) => {
            let ord = (n - 2) as f64;
            let kern = |x: f64| -> Result<f64> {
                let z = z_pair(x, r, p)?;
                Ok(bessel_j(ord, z.z_minus)? * bessel_k_real(ord, z.z_plus)?)
            };
            nth_derivative_raw(kern, q, n, stencil_step(n, p))
        }
        SumForm::B3 => {
            let (wp, wm) = twin(1, 0.5, q, r, p, TWIN_RESIDUE_CAP)?;
            let sum = wp + wm;
            Ok((sum.re, sum.im.abs() + 1e-11 * sum.re.abs()))
        }
        SumForm::B4 => {
            let (wp, wm) = twin(2, 1.0, q, r, p, TWIN_RESIDUE_CAP)?;
            let diff = Complex64::i() * (wp - wm);
            Ok((diff.re, diff.im.abs() + 1e-11 * diff.re.abs()))
        }
        // The mu = 2 tail sum over K_3 twins; the composite form divides
        // by (2r)^2 in drive_b7.
        SumForm::B7 => {
            let (wp, wm) = twin(3, 1.5, q, r, p, TWIN_RESIDUE_CAP)?;
            let sum = wp + wm;
            Ok((sum.re, sum.im.abs() + 1e-11 * sum.re.abs()))
        }
    }
}

/// The constant multiplying each form's term sum.
fn form_prefactor(form: SumForm, p: f64, r: f64) -> Result<f64> {
    Ok(match form {
        SumForm::B2 => 4.0 * r,
        SumForm::B1 => -4.0 * r,
        SumForm::B3 => 2.0 * p.sqrt(),
        SumForm::B4 => p / r,
        SumForm::B7 => -p.powf(1.5),
        SumForm::Thm1(n) => {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            sign * 2.0 * std::f64::consts::PI.sqrt()
                / ((2.0 * r).powi(n as i32 - 2) * gamma_fn(n as f64 - 0.5)?)
        }
    })
}

fn drive_simple(
    form: SumForm,
    p: f64,
    r: f64,
    tol: f64,
    mut observe: impl FnMut(u64, f64),
) -> Result<EvalResult> {
    check_pg(p, r)?;
    form.validate()?;
    let pref = form_prefactor(form, p, r)?;
    let ts = tail_sum_observed(
        form.label(),
        tol.max(1e-15),
        MAX_TERMS,
        |k| form_term(form, k, p, r),
        |k, run| observe(k, pref * run),
    )?;
    Ok(EvalResult::new(
        pref * ts.value,
        pref.abs() * ts.err,
        ts.terms * form.evals_per_term(),
        form.method(),
    ))
}

/// S_{-1/2,p}(r) = 4r sum_k d/dq [J_1(z_-) K_1(z_+)] at q = k.
pub fn repr_b2(p: f64, r: f64, tol: f64) -> Result<EvalResult> {
    drive_simple(SumForm::B2, p, r, tol, |_, _| {})
}

/// The q-derivative in [`repr_b2`] taken analytically:
/// d/dq [J_1(z_-) K_1(z_+)] = -[z_- J_0(z_-) K_1(z_+) + z_+ J_1(z_-) K_0(z_+)]/(2s),
/// using dz_-+/dq = -+ z_-+/(2s). The identity battery checks the stencil
/// route against this one.
pub fn b2_term_derivative_analytic(q: f64, r: f64, p: f64) -> Result<f64> {
    let z = z_pair(q, r, p)?;
    let j0 = bessel_j(0.0, z.z_minus)?;
    let j1 = bessel_j(1.0, z.z_minus)?;
    let k0 = bessel_k_real(0.0, z.z_plus)?;
    let k1 = bessel_k_real(1.0, z.z_plus)?;
    Ok(-(z.z_minus * j0 * k1 + z.z_plus * j1 * k0) / (2.0 * z.s))
}

/// [`repr_b2`] with the hand derivative: no stencil error at all.
pub fn repr_b2_analytic(p: f64, r: f64, tol: f64) -> Result<EvalResult> {
    check_pg(p, r)?;
    let ts = tail_sum("repr b2 analytic", tol.max(1e-15), MAX_TERMS, |k| {
        let d = b2_term_derivative_analytic(k as f64, r, p)?;
        Ok((d, 1e-12 * d.abs()))
    })?;
    Ok(EvalResult::new(
        4.0 * r * ts.value,
        4.0 * r * ts.err,
        ts.terms,
        MethodKind::B2,
    ))
}

/// S_{1/2,p}(r) = -4r sum_k d^3/dq^3 [J_1(z_-)K_0(z_+)/z_+ + J_0(z_-)K_1(z_+)/z_-]
/// at q = k (the kernel is [`kernel_b`]/(2r)).
pub fn repr_b1(p: f64, r: f64, tol: f64) -> Result<EvalResult> {
    drive_simple(SumForm::B1, p, r, tol, |_, _| {})
}

/// S_{n-3/2,p}(r) for n in {2,3,4}:
/// 2 (-1)^n sqrt(pi) / ((2r)^{n-2} Gamma(n - 1/2))
///     sum_k d^n/dq^n [J_{n-2}(z_-) K_{n-2}(z_+)] at q = k,
/// covering mu = 1/2, 3/2, 5/2.
pub fn repr_thm1(n: u32, p: f64, r: f64, tol: f64) -> Result<EvalResult> {
    drive_simple(SumForm::Thm1(n), p, r, tol, |_, _| {})
}

/// S_{0,p}(r) = 2 sqrt(p) sum_k [w_+ + w_-],
/// w_-+ = K_1(2 sqrt(p(k -+ i r))) / (k -+ i r)^{1/2}.
pub fn repr_b3(p: f64, r: f64, tol: f64) -> Result<EvalResult> {
    drive_simple(SumForm::B3, p, r, tol, |_, _| {})
}

/// S_{1,p}(r) = (p i / r) sum_k [w_+ - w_-],
/// w_-+ = K_2(2 sqrt(p(k -+ i r))) / (k -+ i r).
pub fn repr_b4(p: f64, r: f64, tol: f64) -> Result<EvalResult> {
    drive_simple(SumForm::B4, p, r, tol, |_, _| {})
}

/// S_{2,p}(r) = (2r)^{-2} [ S_{1,p}(r) - p^{3/2} sum_k (w_+ + w_-) ],
/// w_-+ = K_3(2 sqrt(p(k -+ i r))) / (k -+ i r)^{3/2}; the S_1 part is
/// delegated to [`repr_b4`].
pub fn repr_b7(p: f64, r: f64, tol: f64) -> Result<EvalResult> {
    let (res, _) = drive_b7(p, r, tol, false)?;
    Ok(res)
}

/// Shared engine for [`repr_b7`] and its partials: runs the K_3 tail sum and
/// the embedded mu = 1 sum, combining their running values when asked.
fn drive_b7(
    p: f64,
    r: f64,
    tol: f64,
    want_partials: bool,
) -> Result<(EvalResult, Vec<(u64, f64)>)> {
    check_pg(p, r)?;
    let mut b4_runs: Vec<f64> = Vec::new();
    let s1 = drive_simple(SumForm::B4, p, r, tol, |_, run| {
        if want_partials {
            b4_runs.push(run);
        }
    })?;
    let mut tail_runs: Vec<f64> = Vec::new();
    let pref = form_prefactor(SumForm::B7, p, r)?;
    let ts = tail_sum_observed(
        SumForm::B7.label(),
        tol.max(1e-15),
        MAX_TERMS,
        |k| form_term(SumForm::B7, k, p, r),
        |_, run| {
            if want_partials {
                tail_runs.push(pref * run);
            }
        },
    )?;
    let denom = 4.0 * r * r;
    let value = (s1.value + pref * ts.value) / denom;
    let err = (s1.err_estimate + pref.abs() * ts.err) / denom;
    let result = EvalResult::new(
        value,
        err,
        s1.terms_or_nodes + ts.terms * 2,
        MethodKind::B7,
    );
    let mut partials = Vec::new();
    if want_partials {
        // Each composite partial truncates both sums at the same k; a sum
        // that converged earlier contributes its final value from there on.
        let len = b4_runs.len().max(tail_runs.len());
        for i in 0..len {
            let a = b4_runs[i.min(b4_runs.len() - 1)];
            let b = tail_runs[i.min(tail_runs.len() - 1)];
            partials.push((i as u64 + 1, (a + b) / denom));
        }
    }
    Ok((result, partials))
}

/// Running partial values S^(K) = pref * sum_{k<=K} term_k of `form`,
/// together with the converged result. The last partial equals the result's
/// value; partial errors can be reconstructed as |partial - final|.
pub fn repr_partials(
    form: SumForm,
    p: f64,
    r: f64,
    tol: f64,
) -> Result<(Vec<(u64, f64)>, EvalResult)> {
    if form == SumForm::B7 {
        let (res, partials) = drive_b7(p, r, tol, true)?;
        return Ok((partials, res));
    }
    let mut partials = Vec::new();
    let res = drive_simple(form, p, r, tol, |k, run| partials.push((k, run)))?;
    Ok((partials, res))
}

/// Experimental: S_{nu-3/2,p}(r) for non-integer nu in (2, 4), extending
/// the derivative sums with a fractional q-derivative of Laplace type:
/// the right-sided composition (-1)^m (d/dq)^m I^{m-nu}, m = ceil(nu),
/// where I^beta is the right-sided Grunwald-Letnikov integral. On pure
/// decaying exponentials e^{-qt} this acts as multiplication by t^nu, which
/// is exactly the role (-1)^n d^n/dq^n plays at integer order.
///
/// Expect 3-4 digits, not 10: the outer stencil amplifies the GL error.
pub fn repr_thm1_fractional(nu: f64, p: f64, r: f64, tol: f64) -> Result<EvalResult> {
    check_pg(p, r)?;
    if !(nu > 2.0 && nu < 4.0) || nu.fract() == 0.0 {
        return Err(Error::domain(format!(
            "fractional order nu must lie strictly inside (2, 4) and off the integers \
             (use repr_thm1 there), got {nu}"
        )));
    }
    let m = nu.ceil() as u32;
    let beta = m as f64 - nu;
    let ord = nu - 2.0;
    let kern = move |q: f64| -> Result<f64> {
        let z = z_pair(q, r, p)?;
        Ok(bessel_j(ord, z.z_minus)? * bessel_k_real(ord, z.z_plus)?)
    };
    let glc = GlConfig { n_base: 48, n_levels: 4 };
    let h0 = stencil_step(m, p);
    let ts = tail_sum("repr thm1 fractional", tol.max(1e-15), 200, |k| {
        let q = k as f64;
        // Decay rate of the kernel in q sets the GL window.
        let s = q.hypot(r);
        let lambda = (2.0 * p).sqrt() * (1.0 + q / s) / (2.0 * (s + q).sqrt());
        let window = 30.0 / lambda;
        let smoothed = |y: f64| -> Result<f64> {
            gl_fractional_integral_right(kern, y, y + window, beta, &glc).map(|r| r.value)
        };
        let (d, e) = nth_derivative_raw(smoothed, q, m, h0)?;
        let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok((sign * d, e))
    })?;
    let pref = 2.0 * std::f64::consts::PI.sqrt()
        / ((2.0 * r).powf(nu - 2.0) * gamma_fn(nu - 0.5)?);
    Ok(EvalResult::new(
        pref * ts.value,
        pref.abs() * ts.err + 1e-4 * (pref * ts.value).abs(),
        ts.terms,
        MethodKind::Thm1Fractional,
    ))
}

/// Stencil step for derivative sums: small enough to resolve the kernel's
/// q-variation (which steepens as sqrt(p)), large enough to stay above
/// rounding noise; relaxed at order 4 where noise amplification is worst.
fn stencil_step(n: u32, p: f64) -> f64 {
    let base = if n >= 4 { 0.1 } else { 0.05 };
    base * 1.0f64.min(1.0 / p.sqrt())
}
