//! Adaptive quadrature for semi-infinite integrands of the form
//! t^sigma e^{-p/t} w(t) g(t), with w a Bose or exponential damping factor
//! and g an optional oscillator (Bessel J, cos, sin).
//!
//! The machinery: a log substitution t = e^u absorbs the essential
//! singularity of e^{-p/t} at the origin, oscillator zeros define panel
//! boundaries, and Gauss-Kronrod 15-point rules refine panels globally
//! until the summed error estimate meets tolerance. Panels are summed in
//! ascending position order so results are bit-reproducible.

use crate::error::{Error, Result};
use crate::kernels::{bessel_j, gamma_fn};
use crate::types::{EvalResult, MethodKind};

/// Damping factor applied to the power-law core.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight {
    /// 1/(e^t - 1).
    Bose,
    /// e^{-q t}, q > 0.
    Exp { q: f64 },
}

/// Oscillating factor, if any.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Oscillator {
    None,
    /// J_nu(gamma t).
    BesselJ { nu: f64, gamma: f64 },
    /// cos(gamma t).
    Cos { gamma: f64 },
    /// sin(gamma t).
    Sin { gamma: f64 },
}

/// Full integrand description for [`integrate_semi_infinite`]:
/// f(t) = e^{-ln_shift} t^sigma e^{-p/t} w(t) g(t) on (0, inf).
///
/// `ln_shift` rescales in log space so integrals whose raw peak overflows
/// f64 (large sigma) can be computed shifted and reassembled by the caller
/// as `exp(ln_shift) * value`. Zero for directly representable integrands.
#[derive(Debug, Clone, Copy)]
pub struct IntegrandSpec {
    pub sigma: f64,
    pub p: f64,
    pub weight: Weight,
    pub oscillator: Oscillator,
    pub ln_shift: f64,
}

impl IntegrandSpec {
    /// Power of t controlling integrability at the origin when p = 0:
    /// sigma, plus nu (J) or 1 (sin), minus 1 for the Bose pole.
    fn small_t_power(&self) -> f64 {
        let osc = match self.oscillator {
            Oscillator::None | Oscillator::Cos { .. } => 0.0,
            Oscillator::Sin { .. } => 1.0,
            Oscillator::BesselJ { nu, .. } => nu,
        };
        let bose = match self.weight {
            Weight::Bose => 1.0,
            Weight::Exp { .. } => 0.0,
        };
        self.sigma + osc - bose
    }

    pub fn validate(&self) -> Result<()> {
        if !self.sigma.is_finite() || !self.p.is_finite() || self.p < 0.0 || !self.ln_shift.is_finite()
        {
            return Err(Error::domain(format!(
                "integrand: need finite sigma, ln_shift and p >= 0, got sigma = {}, p = {}, ln_shift = {}",
                self.sigma, self.p, self.ln_shift
            )));
        }
        if let Weight::Exp { q } = self.weight {
            if !(q > 0.0 && q.is_finite()) {
                return Err(Error::domain(format!("integrand: EXP weight needs q > 0, got {q}")));
            }
        }
        match self.oscillator {
            Oscillator::None => {}
            Oscillator::BesselJ { nu, gamma } => {
                if !(gamma > 0.0 && gamma.is_finite()) || nu.abs() > 50.0 {
                    return Err(Error::domain(format!(
                        "integrand: BesselJ oscillator needs gamma > 0 and |nu| <= 50, got nu = {nu}, gamma = {gamma}"
                    )));
                }
            }
            Oscillator::Cos { gamma } | Oscillator::Sin { gamma } => {
                if !(gamma > 0.0 && gamma.is_finite()) {
                    return Err(Error::domain(format!(
                        "integrand: trig oscillator needs gamma > 0, got {gamma}"
                    )));
                }
            }
        }
        if self.p == 0.0 && self.small_t_power() <= -1.0 {
            return Err(Error::domain(format!(
                "integrand: divergent at t = 0 (effective power {} <= -1 with p = 0)",
                self.small_t_power()
            )));
        }
        Ok(())
    }

    /// ln of the positive non-oscillating part. Safe against overflow:
    /// everything is assembled in log space before a single exp.
    fn ln_core(&self, t: f64) -> f64 {
        let damp = match self.weight {
            Weight::Bose => ln_expm1(t),
            Weight::Exp { q } => q * t,
        };
        self.sigma * t.ln() - self.p / t - damp - self.ln_shift
    }

    /// Integrand value. t must be strictly positive.
    fn eval(&self, t: f64) -> Result<f64> {
        let core = self.ln_core(t);
        if core < -745.0 {
            return Ok(0.0);
        }
        let osc = match self.oscillator {
            Oscillator::None => 1.0,
            Oscillator::BesselJ { nu, gamma } => bessel_j(nu, gamma * t)?,
            Oscillator::Cos { gamma } => (gamma * t).cos(),
            Oscillator::Sin { gamma } => (gamma * t).sin(),
        };
        Ok(core.exp() * osc)
    }

    /// Upper bound on |oscillator| used for envelope scans.
    fn osc_envelope(&self, t: f64) -> f64 {
        match self.oscillator {
            Oscillator::None | Oscillator::Cos { .. } => 1.0,
            Oscillator::Sin { gamma } => (gamma * t).min(1.0),
            Oscillator::BesselJ { nu, gamma } => {
                let x = gamma * t;
                let asym = 1.3 * (2.0 / (std::f64::consts::PI * x)).sqrt();
                if nu >= 0.0 {
                    asym.min(1.0)
                } else if x < 1.0 {
                    // (x/2)^nu / |Gamma(nu+1)|, nu in (-1, 0): grows at 0.
                    let g = gamma_fn(nu + 1.0).map(f64::abs).unwrap_or(1.0);
                    (x / 2.0).powf(nu) / g
                } else {
                    2.0 * asym
                }
            }
        }
    }

    fn ln_envelope(&self, t: f64) -> f64 {
        self.ln_core(t) + self.osc_envelope(t).ln()
    }
}

/// ln(e^t - 1), stable at both ends.
fn ln_expm1(t: f64) -> f64 {
    if t < 1e-8 {
        t.ln() + 0.5 * t + t * t / 24.0
    } else {
        t + (-(-t).exp()).ln_1p()
    }
}

/// Tuning knobs; the defaults serve all library call sites. `tail_scale`
/// stretches the truncation point (tests double it to bound tail bias).
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub tail_scale: f64,
    pub max_nodes: u64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            tail_scale: 1.0,
            max_nodes: 2_000_000,
        }
    }
}

/// Integrates the spec over (0, inf) to relative tolerance `tol`.
pub fn integrate_semi_infinite(spec: &IntegrandSpec, tol: f64) -> Result<EvalResult> {
    integrate_semi_infinite_opts(spec, tol, &QuadOptions::default())
}

pub fn integrate_semi_infinite_opts(
    spec: &IntegrandSpec,
    tol: f64,
    opts: &QuadOptions,
) -> Result<EvalResult> {
    spec.validate()?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::domain(format!("tol = {tol} must be positive")));
    }
    let tol = tol.max(1e-14);

    // Envelope peak over a log grid; drives cutoff and floor decisions.
    let mut ln_peak = f64::NEG_INFINITY;
    let mut t_peak = 1.0;
    for i in 0..=240 {
        let t = 10f64.powf(-8.0 + 12.0 * i as f64 / 240.0);
        let v = spec.ln_envelope(t);
        if v > ln_peak {
            ln_peak = v;
            t_peak = t;
        }
    }
    if ln_peak == f64::NEG_INFINITY || ln_peak < -740.0 {
        // Integrand underflows everywhere (e.g. enormous p).
        return Ok(EvalResult::new(0.0, 1e-300, 241, MethodKind::Quadrature));
    }

    let decay = match spec.weight {
        Weight::Bose => 1.0,
        Weight::Exp { q } => q,
    };
    // Truncation point: envelope down by e^-42 from the peak and past the
    // slow power-law region, then a tail bound charged into the estimate.
    let mut cutoff = (2.0 * t_peak).max(t_peak + 8.0 / decay).max(1.0);
    while spec.ln_envelope(cutoff) > ln_peak - 42.0 && cutoff < 2e4 {
        cutoff *= 1.25;
    }
    cutoff *= opts.tail_scale.max(1.0);
    let tail_bound = (spec.ln_envelope(cutoff).min(ln_peak - 42.0)).exp() * 2.0 / decay
        * (1.0 + cutoff.abs());

    // Panel boundaries: oscillator zeros, else geometric spacing.
    let t0 = first_breakpoint(spec, cutoff);
    let mut edges = vec![t0];
    match spec.oscillator {
        Oscillator::None => {
            let mut t = t0;
            while t * 2.0 < cutoff {
                t *= 2.0;
                edges.push(t);
            }
        }
        Oscillator::Cos { gamma } | Oscillator::Sin { gamma } => {
            let off = if matches!(spec.oscillator, Oscillator::Cos { .. }) {
                0.5
            } else {
                1.0
            };
            let mut k = 1u64;
            loop {
                let z = (k as f64 - 1.0 + off) * std::f64::consts::PI / gamma;
                if z >= cutoff {
                    break;
                }
                if z > t0 {
                    edges.push(z);
                }
                k += 1;
                if k > 2_000_000 {
                    return Err(Error::convergence("quadrature: oscillator too fast", 0.0, 1.0));
                }
            }
        }
        Oscillator::BesselJ { nu, gamma } => {
            let mut k = 1u64;
            let mut prev = t0;
            loop {
                let z = mcmahon_zero(nu, k) / gamma;
                if z >= cutoff {
                    break;
                }
                // Early McMahon terms can misorder for small k; keep the
                // sequence strictly increasing with a minimum gap.
                if z > prev + 0.25 * std::f64::consts::PI / gamma {
                    edges.push(z);
                    prev = z;
                }
                k += 1;
                if k > 2_000_000 {
                    return Err(Error::convergence("quadrature: oscillator too fast", 0.0, 1.0));
                }
            }
        }
    }
    edges.push(cutoff);
    edges.dedup_by(|a, b| *a <= *b);

    // All finite panels, plus the log-space panel covering (0, t0].
    let mut panels: Vec<Panel> = Vec::with_capacity(edges.len() + 8);
    let mut nodes: u64 = 241;
    let eval_t = |t: f64| spec.eval(t);
    for w in edges.windows(2) {
        panels.push(gk15(&eval_t, w[0], w[1])?);
        nodes += 15;
    }
    {
        // u = ln t lower limit: walk down until the envelope is dead.
        let u0 = t0.ln();
        let mut u_min = u0 - 2.0;
        let mut best = spec.ln_envelope(t0) + u0;
        while u_min > -600.0 {
            let v = spec.ln_envelope(u_min.exp()) + u_min;
            best = best.max(v);
            if v < best - 45.0 {
                break;
            }
            u_min -= 2.0;
        }
        let eval_u = |u: f64| {
            let t = u.exp();
            spec.eval(t).map(|v| v * t)
        };
        // Split the u range so the adaptive loop starts with structure.
        let mut u = u_min;
        while u < u0 {
            let next = (u + 4.0).min(u0);
            panels.push(gk15(&eval_u, u, next)?);
            nodes += 15;
            u = next;
        }
    }

    for p in &panels {
        if !p.val.is_finite() {
            return Err(Error::Overflow(format!(
                "quadrature: integrand overflow near [{}, {}]",
                p.a, p.b
            )));
        }
    }

    // Global refinement: split the worst panel until the error target.
    // u panels and t panels never share coordinates (ln t0 < t0), so the
    // panel's own position says which integrand it carries.
    let u_limit = t0.ln() + 1e-12;
    loop {
        let (mut sum, mut err, mut resabs_total) = (0.0f64, 0.0f64, 0.0f64);
        for p in &panels {
            sum += p.val;
            err += p.err;
            resabs_total += p.resabs;
        }
        // Splitting cannot push the total error below the aggregate
        // roundoff floor of 50 eps per unit of int |f|; chasing a target
        // under it would refine forever.
        let floor = 1.05 * 50.0 * f64::EPSILON * resabs_total;
        let target = (tol * sum.abs().max(ln_peak.min(700.0).exp() * 1e-14)).max(floor);
        if err <= target {
            break;
        }
        if nodes >= opts.max_nodes {
            let (val, err) = panel_total(&mut panels);
            return Err(Error::convergence(
                "quadrature: node budget exhausted",
                val,
                err + tail_bound,
            ));
        }
        let mut worst = 0usize;
        for i in 1..panels.len() {
            if panels[i].err > panels[worst].err
                || (panels[i].err == panels[worst].err && panels[i].a < panels[worst].a)
            {
                worst = i;
            }
        }
        let Panel { a, b, .. } = panels[worst];
        if (b - a).abs() < 1e-15 * (a.abs() + b.abs()) {
            // Cannot split further; accept what the panel reports.
            let (val, err) = panel_total(&mut panels);
            return Err(Error::convergence(
                "quadrature: panel width exhausted",
                val,
                err + tail_bound,
            ));
        }
        let mid = 0.5 * (a + b);
        let (left, right) = if b <= u_limit {
            let eval_u = |u: f64| {
                let t = u.exp();
                spec.eval(t).map(|v| v * t)
            };
            (gk15(&eval_u, a, mid)?, gk15(&eval_u, mid, b)?)
        } else {
            (gk15(&eval_t, a, mid)?, gk15(&eval_t, mid, b)?)
        };
        if !left.val.is_finite() || !right.val.is_finite() {
            return Err(Error::Overflow(format!(
                "quadrature: integrand overflow near [{a}, {b}]"
            )));
        }
        panels[worst] = left;
        panels.push(right);
        nodes += 30;
    }

    let (val, err) = panel_total(&mut panels);
    Ok(EvalResult::new(val, err + tail_bound, nodes, MethodKind::Quadrature))
}

fn first_breakpoint(spec: &IntegrandSpec, cutoff: f64) -> f64 {
    let gamma_first = match spec.oscillator {
        Oscillator::None => f64::INFINITY,
        Oscillator::Cos { gamma } => 0.5 * std::f64::consts::PI / gamma,
        Oscillator::Sin { gamma } => std::f64::consts::PI / gamma,
        Oscillator::BesselJ { nu, gamma } => mcmahon_zero(nu, 1) / gamma,
    };
    1.0f64.min(0.5 * cutoff).min(0.75 * gamma_first)
}

/// McMahon's expansion for the k-th positive zero of J_nu; two correction
/// terms, adequate for panel placement (not for root finding).
fn mcmahon_zero(nu: f64, k: u64) -> f64 {
    let m = 4.0 * nu * nu;
    let beta = (k as f64 + 0.5 * nu - 0.25) * std::f64::consts::PI;
    let b8 = 8.0 * beta;
    if beta <= 0.5 {
        return (k as f64) * std::f64::consts::PI;
    }
    beta - (m - 1.0) / b8 - 4.0 * (m - 1.0) * (7.0 * m - 31.0) / (3.0 * b8.powi(3))
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    val: f64,
    err: f64,
    resabs: f64,
}

/// Deterministic total: ascending left edge, compensated summation.
fn panel_total(panels: &mut [Panel]) -> (f64, f64) {
    panels.sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap_or(std::cmp::Ordering::Equal));
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut err = 0.0f64;
    for p in panels.iter() {
        let y = p.val - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        err += p.err;
    }
    (sum, err)
}

// 15-point Kronrod / 7-point Gauss abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_46,
    0.0,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

fn gk15(f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64) -> Result<Panel> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut resg = WG[3] * fc;
    let mut resk = WGK[7] * fc;
    let mut resabs = WGK[7] * fc.abs();
    let mut f1s = [0.0f64; 7];
    let mut f2s = [0.0f64; 7];
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = f(c - x)?;
        let f2 = f(c + x)?;
        f1s[j] = f1;
        f2s[j] = f2;
        let fsum = f1 + f2;
        resk += WGK[j] * fsum;
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * fsum;
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((f1s[j] - reskh).abs() + (f2s[j] - reskh).abs());
    }
    let val = resk * h;
    let resabs = resabs * h.abs();
    let resasc = resasc * h.abs();
    let err = rescale_error((resk - resg) * h, resabs, resasc);
    Ok(Panel { a, b, val, err, resabs })
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut err = err.abs();
    if resasc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / resasc).powf(1.5);
        err = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    err
}

/// Outcome of the exponential-tail sum driver.
pub(crate) struct TailSum {
    pub value: f64,
    pub err: f64,
    pub terms: u64,
}

/// Sums `term(k)` for k = 1.. where terms decay (asymptotically)
/// geometrically. Each term carries its own error contribution. Stops once
/// the projected tail (3-term ratio estimate with a safety factor) and the
/// accumulated term errors are below `tol` relative to the running sum.
pub(crate) fn tail_sum(
    label: &str,
    tol: f64,
    max_terms: u32,
    term: impl FnMut(u32) -> Result<(f64, f64)>,
) -> Result<TailSum> {
    tail_sum_observed(label, tol, max_terms, term, |_, _| {})
}

/// [`tail_sum`] with a per-term observer receiving (k, running sum after
/// term k); convergence-report emitters hook in here.
pub(crate) fn tail_sum_observed(
    label: &str,
    tol: f64,
    max_terms: u32,
    mut term: impl FnMut(u32) -> Result<(f64, f64)>,
    mut observe: impl FnMut(u64, f64),
) -> Result<TailSum> {
    let tol = tol.max(1e-15);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut term_err = 0.0f64;
    let mut hist = [f64::NAN; 4];
    for k in 1..=max_terms {
        let (t, e) = term(k)?;
        term_err += e;
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        observe(k as u64, sum);
        hist.rotate_left(1);
        hist[3] = t.abs();
        if k >= 4 {
            // A single zero term (a derivative sign crossing, say) must not
            // end the sum; only a dead neighborhood does.
            if hist[3] == 0.0 {
                if hist[2] == 0.0 || hist[2] < 1e-280 {
                    return Ok(TailSum { value: sum, err: term_err, terms: k as u64 });
                }
                continue;
            }
            let mut ratio = 0.0f64;
            let mut usable = true;
            for w in hist.windows(2) {
                if w[0] == 0.0 {
                    usable = false;
                    break;
                }
                ratio = ratio.max(w[1] / w[0]);
            }
            // The bound stays meaningful for slowly decaying tails too
            // (ratio near 1 only inflates it), so the cap is generous.
            if usable && ratio < 0.99999 {
                // Safety factor 2: the local ratio of e^{-2 sqrt(pk)} terms
                // understates the true tail by ~sqrt(k) growth in ratio.
                let tail = 2.0 * hist[3] * ratio / (1.0 - ratio);
                let scale = sum.abs().max(1e-300);
                if tail + hist[3] <= tol * scale {
                    return Ok(TailSum { value: sum, err: tail + term_err, terms: k as u64 });
                }
            }
        }
    }
    Err(Error::convergence(
        format!("{label}: term cap {max_terms} reached"),
        sum,
        hist[3].max(term_err),
    ))
}

/// Public face of the tail-sum driver: sums closed-form values of a
/// Laplace-type integral family at integer parameters k = 1, 2, ...
pub fn laplace_term_sum(
    closed_form: impl FnMut(u32) -> Result<f64>,
    tol: f64,
    max_terms: u32,
) -> Result<EvalResult> {
    let mut cf = closed_form;
    let ts = tail_sum("laplace_term_sum", tol, max_terms, |k| {
        cf(k).map(|v| (v, 1e-15 * v.abs()))
    })?;
    Ok(EvalResult::new(ts.value, ts.err, ts.terms, MethodKind::TermSum))
}
