//! Fast cross-representation invariant suite.
//!
//! Each group pits two independent routes to the same quantity against each
//! other and reports the worst relative deviation seen. The groups cover the
//! kernel layer (symmetries, recurrences), the extended-zeta layer (dual
//! representations), the operator layer (eigen-relations), and the top-level
//! sums (series vs integral vs Schlomilch forms). The whole suite is meant
//! to run in a couple of seconds as a production smoke test.

use crate::error::Result;
use crate::gl::{gl_fractional_integral, nth_derivative_raw, GlConfig};
use crate::kernels::{bessel_j, bessel_k_complex, bessel_k_real};
use crate::mathieu::{s_classical, s_integral, s_series, MathieuParams};
use crate::schlomilch::{b2_term_derivative_analytic, repr_b2, repr_b3, repr_b4, repr_b7, z_pair};
use crate::zeta_p::{zeta_p_integral, zeta_p_kseries};
use num_complex::Complex64;

/// Knobs for the invariant suite.
///
/// `flip_k_parity` is a fault-injection hook for testing the failure path:
/// it negates the expected sign in the K conjugation symmetry so that the
/// `kernel-parity` group must fail. Production callers leave it off.
#[derive(Debug, Clone, Copy, Default)]
pub struct SelfcheckOptions {
    pub flip_k_parity: bool,
}

/// Outcome of one invariant group.
#[derive(Debug, Clone)]
pub struct GroupReport {
    pub name: &'static str,
    pub pass: bool,
    /// Worst relative deviation observed across the group's point set.
    pub worst_rel: f64,
    /// Tolerance the group is held to.
    pub tol: f64,
    /// Where the worst deviation occurred, for failure triage.
    pub detail: String,
}

type Group = (&'static str, f64, fn(&SelfcheckOptions) -> Result<(f64, String)>);

/// Runs every invariant group; never aborts early, so a broken kernel still
/// yields a full report. Errors inside a group count as failures.
pub fn run_selfcheck(opts: &SelfcheckOptions) -> Vec<GroupReport> {
    let groups: Vec<Group> = vec![
        ("kernel-parity", 1e-11, group_kernel_parity),
        ("recurrence-relations", 1e-10, group_recurrences),
        ("product-derivative", 1e-7, group_product_derivative),
        ("zeta-dual-representation", 1e-10, group_zeta_dual),
        ("gl-eigen-relation", 1e-7, group_gl_eigen),
        ("gl-fractional-composition", 5e-3, group_gl_fractional),
        ("series-vs-integral", 1e-9, group_series_vs_integral),
        ("conjugate-pair-sums", 1e-8, group_conjugate_pairs),
        ("derivative-sums", 1e-6, group_derivative_sums),
        ("p-zero-reduction", 1e-9, group_p_zero),
    ];
    groups
        .into_iter()
        .map(|(name, tol, f)| match f(opts) {
            Ok((worst, detail)) => GroupReport {
                name,
                pass: worst <= tol,
                worst_rel: worst,
                tol,
                detail,
            },
            Err(e) => GroupReport {
                name,
                pass: false,
                worst_rel: f64::INFINITY,
                tol,
                detail: format!("evaluation error: {e}"),
            },
        })
        .collect()
}

pub fn all_pass(reports: &[GroupReport]) -> bool {
    reports.iter().all(|g| g.pass)
}

struct Worst {
    rel: f64,
    detail: String,
}

impl Worst {
    fn new() -> Self {
        Worst { rel: 0.0, detail: String::from("all points agree") }
    }
    fn track(&mut self, got: f64, want: f64, where_: impl Fn() -> String) {
        let rel = (got - want).abs() / want.abs().max(1e-300);
        if rel > self.rel {
            self.rel = rel;
            self.detail = format!("{}: {got:.12e} vs {want:.12e}", where_());
        }
    }
    fn done(self) -> (f64, String) {
        (self.rel, self.detail)
    }
}

/// K_{1/2} closed form and the conjugation symmetry K_n(conj z) = conj K_n(z)
/// of the complex-argument evaluator (two independent code paths at work).
fn group_kernel_parity(opts: &SelfcheckOptions) -> Result<(f64, String)> {
    let mut w = Worst::new();
    let parity = if opts.flip_k_parity { -1.0 } else { 1.0 };
    for &x in &[0.3, 1.0, 4.0, 12.0] {
        let closed = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp();
        w.track(bessel_k_real(0.5, x)?, closed, || format!("K_1/2({x})"));
    }
    for n in 0..=3u32 {
        for &(re, im) in &[(0.8, 0.5), (2.0, 1.5), (5.0, 3.0)] {
            let z = Complex64::new(re, im);
            let kz = bessel_k_complex(n, z)?;
            let kzb = bessel_k_complex(n, z.conj())?;
            w.track(kzb.re, kz.re, || format!("Re K_{n}({re}+-{im}i)"));
            // Conjugation flips the imaginary part: kzb.im == -kz.im.
            w.track(parity * kzb.im, -kz.im, || format!("Im K_{n}({re}+-{im}i)"));
        }
    }
    Ok(w.done())
}

/// Three-term recurrences: J_{v-1} + J_{v+1} = (2v/x) J_v and
/// K_{v+1} - K_{v-1} = (2v/x) K_v.
fn group_recurrences(_: &SelfcheckOptions) -> Result<(f64, String)> {
    let mut w = Worst::new();
    for &nu in &[1.0, 2.5] {
        for &x in &[0.7, 3.0, 11.0] {
            let lhs_j = bessel_j(nu - 1.0, x)? + bessel_j(nu + 1.0, x)?;
            w.track(lhs_j, 2.0 * nu / x * bessel_j(nu, x)?, || format!("J rec nu={nu} x={x}"));
            let lhs_k = bessel_k_real(nu + 1.0, x)? - bessel_k_real(nu - 1.0, x)?;
            w.track(lhs_k, 2.0 * nu / x * bessel_k_real(nu, x)?, || {
                format!("K rec nu={nu} x={x}")
            });
        }
    }
    Ok(w.done())
}

/// Product-rule identity 2 (J_1 K_1)'(x) = (J_0 - J_2) K_1 - J_1 (K_0 + K_2),
/// left side by difference stencil, right side in closed form.
fn group_product_derivative(_: &SelfcheckOptions) -> Result<(f64, String)> {
    let mut w = Worst::new();
    for i in 0..10 {
        let x = 0.3 + 2.0 * i as f64;
        let f = |t: f64| Ok(bessel_j(1.0, t)? * bessel_k_real(1.0, t)?);
        let (d, _) = nth_derivative_raw(f, x, 1, 0.02 * x.min(5.0))?;
        let rhs = (bessel_j(0.0, x)? - bessel_j(2.0, x)?) * bessel_k_real(1.0, x)?
            - bessel_j(1.0, x)? * (bessel_k_real(0.0, x)? + bessel_k_real(2.0, x)?);
        w.track(2.0 * d, rhs, || format!("x={x}"));
    }
    Ok(w.done())
}

/// Extended zeta: Bose-integral route against the Schlomilch K-series route.
fn group_zeta_dual(_: &SelfcheckOptions) -> Result<(f64, String)> {
    let mut w = Worst::new();
    for &alpha in &[1.0, 3.0] {
        for &p in &[0.5, 2.0] {
            let a = zeta_p_integral(alpha, p, 1e-13)?.value;
            let b = zeta_p_kseries(alpha, p, 1e-13)?.value;
            w.track(b, a, || format!("alpha={alpha} p={p}"));
        }
    }
    Ok(w.done())
}

/// Difference stencils on the Laplace eigenfunction:
/// d^n/dq^n e^{-qx} = (-x)^n e^{-qx}.
fn group_gl_eigen(_: &SelfcheckOptions) -> Result<(f64, String)> {
    let mut w = Worst::new();
    for n in 1..=3u32 {
        for &(q, x) in &[(1.0, 0.8), (2.0, 1.3)] {
            let f = |t: f64| Ok((-t * x).exp());
            let (d, _) = nth_derivative_raw(f, q, n, 0.05)?;
            let want = (-x).powi(n as i32) * (-q * x).exp();
            w.track(d, want, || format!("n={n} q={q} x={x}"));
        }
    }
    Ok(w.done())
}

/// Two half-order fractional integrals compose to one whole integration.
fn group_gl_fractional(_: &SelfcheckOptions) -> Result<(f64, String)> {
    let mut w = Worst::new();
    let lambda = 1.5f64;
    let a = -12.0f64;
    let x = 0.4f64;
    let inner = GlConfig { n_base: 64, n_levels: 4 };
    let outer = GlConfig { n_base: 32, n_levels: 3 };
    let half = |y: f64| -> Result<f64> {
        if y <= a + 1e-12 {
            return Ok(0.0);
        }
        gl_fractional_integral(|t| Ok((lambda * t).exp()), a, y, 0.5, &inner).map(|r| r.value)
    };
    let composed = gl_fractional_integral(half, a, x, 0.5, &outer)?.value;
    let direct = ((lambda * x).exp() - (lambda * a).exp()) / lambda;
    w.track(composed, direct, || format!("I^1/2 twice at x={x}"));
    Ok(w.done())
}

/// The zeta-coefficient series against the Bessel integral, off anchor.
fn group_series_vs_integral(_: &SelfcheckOptions) -> Result<(f64, String)> {
    let mut w = Worst::new();
    for &(mu, p, r) in &[(0.7, 0.5, 0.4), (2.3, 1.0, 0.8), (-0.5, 1.0, 0.3)] {
        let params = MathieuParams::new(mu, p, r)?;
        let a = s_series(&params, 1e-12)?.value;
        let b = s_integral(&params, 1e-12)?.value;
        w.track(a, b, || format!("mu={mu} p={p} r={r}"));
    }
    Ok(w.done())
}

/// Conjugate-pair K sums (mu = 0, 1, 2) against the integral form.
fn group_conjugate_pairs(_: &SelfcheckOptions) -> Result<(f64, String)> {
    let mut w = Worst::new();
    for &(p, r) in &[(1.0, 0.5), (0.25, 1.5)] {
        for &(mu, f) in &[
            (0.0, repr_b3 as fn(f64, f64, f64) -> Result<crate::EvalResult>),
            (1.0, repr_b4),
            (2.0, repr_b7),
        ] {
            let want = s_integral(&MathieuParams::new(mu, p, r)?, 1e-12)?.value;
            w.track(f(p, r, 1e-12)?.value, want, || format!("mu={mu} p={p} r={r}"));
        }
    }
    Ok(w.done())
}

/// Derivative sums: stencil route vs hand-derivative route vs integral form
/// at mu = -1/2, plus the kernel-level derivative identity they rest on.
fn group_derivative_sums(_: &SelfcheckOptions) -> Result<(f64, String)> {
    let mut w = Worst::new();
    let (p, r) = (1.0, 0.5);
    let stencil = repr_b2(p, r, 1e-12)?.value;
    let kern = |q: f64| {
        let z = z_pair(q, r, p)?;
        Ok(bessel_j(1.0, z.z_minus)? * bessel_k_real(1.0, z.z_plus)?)
    };
    let (d_num, _) = nth_derivative_raw(kern, 2.0, 1, 0.05)?;
    w.track(d_num, b2_term_derivative_analytic(2.0, r, p)?, || String::from("kernel dq at q=2"));
    let want = s_integral(&MathieuParams::new(-0.5, p, r)?, 1e-12)?.value;
    w.track(stencil, want, || String::from("b2 vs integral"));
    Ok(w.done())
}

/// At p = 0 both general forms collapse to the classical series.
fn group_p_zero(_: &SelfcheckOptions) -> Result<(f64, String)> {
    let mut w = Worst::new();
    for &(mu, r) in &[(1.0, 0.5), (2.0, 0.3)] {
        let want = s_classical(mu, r, 1e-12)?.value;
        let params = MathieuParams::new(mu, 0.0, r)?;
        w.track(s_series(&params, 1e-12)?.value, want, || format!("series mu={mu} r={r}"));
        w.track(s_integral(&params, 1e-11)?.value, want, || format!("integral mu={mu} r={r}"));
    }
    Ok(w.done())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_build_passes_every_group() {
        let reports = run_selfcheck(&SelfcheckOptions::default());
        assert!(reports.len() >= 6, "need at least 6 named groups");
        for g in &reports {
            assert!(g.pass, "{}: worst {:.3e} > tol {:.1e} ({})", g.name, g.worst_rel, g.tol, g.detail);
        }
        assert!(all_pass(&reports));
    }

    #[test]
    fn injected_parity_flip_is_caught() {
        let reports = run_selfcheck(&SelfcheckOptions { flip_k_parity: true });
        let parity = reports.iter().find(|g| g.name == "kernel-parity").unwrap();
        assert!(!parity.pass, "fault injection must trip the parity group");
        // Only the targeted group reacts.
        assert!(reports.iter().filter(|g| !g.pass).count() == 1);
    }

    #[test]
    fn group_names_are_unique() {
        let reports = run_selfcheck(&SelfcheckOptions::default());
        let mut names: Vec<_> = reports.iter().map(|g| g.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), reports.len());
    }
}
