//! Modified Bessel K of real order: Temme's series for x <= 2, a
//! Thompson-Barnett continued fraction beyond, upward recurrence in order.

use crate::error::{Error, Result};
use crate::kernels::gamma::temme_gammas;

const EPS: f64 = 1e-16;
const MAXIT: usize = 100_000;
const PI: f64 = std::f64::consts::PI;

/// K_nu(x) for real nu with |nu| <= 50 and x > 0. K_{-nu} = K_nu holds
/// exactly because only |nu| enters. Underflow to 0 for large x is normal;
/// overflow (tiny x at high order) is an error.
pub fn bessel_k_real(nu: f64, x: f64) -> Result<f64> {
    if !x.is_finite() || !nu.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!(
            "bessel_k_real: need finite nu and x > 0, got nu = {nu}, x = {x}"
        )));
    }
    let nu = nu.abs();
    if nu > 50.0 {
        return Err(Error::domain(format!(
            "bessel_k_real: order {nu} beyond supported 50"
        )));
    }
    let nl = (nu + 0.5) as i64;
    let xmu = nu - nl as f64;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    let (mut rkmu, mut rk1) = if x <= 2.0 {
        temme_k_series(xmu, x)?
    } else {
        steed_k_cf2(xmu, x)?
    };
    for i in 0..nl {
        let rktemp = (xmu + (i + 1) as f64) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    if !rkmu.is_finite() {
        return Err(Error::Overflow(format!(
            "bessel_k_real({nu}, {x}) exceeds f64 range"
        )));
    }
    Ok(rkmu)
}

/// Temme's series: returns (K_mu, K_{mu+1}) for |mu| <= 1/2, 0 < x <= 2.
fn temme_k_series(xmu: f64, x: f64) -> Result<(f64, f64)> {
    let xmu2 = xmu * xmu;
    let x2 = 0.5 * x;
    let pimu = PI * xmu;
    let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
    let d = -x2.ln();
    let e = xmu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let e = e.exp();
    let mut p = 0.5 * e / gampl;
    let mut q = 0.5 / (e * gammi);
    let mut c = 1.0;
    let d = x2 * x2;
    let mut sum1 = p;
    for i in 1..=MAXIT {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - xmu2);
        c *= d / fi;
        p /= fi - xmu;
        q /= fi + xmu;
        let del = c * ff;
        sum += del;
        let del1 = c * (p - fi * ff);
        sum1 += del1;
        if del.abs() < sum.abs() * EPS {
            return Ok((sum, sum1 * 2.0 / x));
        }
    }
    Err(Error::convergence(format!("K series at mu={xmu}, x={x}"), sum, sum.abs()))
}

/// Thompson-Barnett CF2: returns (K_mu, K_{mu+1}) for |mu| <= 1/2, x > 2.
fn steed_k_cf2(xmu: f64, x: f64) -> Result<(f64, f64)> {
    let xmu2 = xmu * xmu;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = delh;
    let mut q1 = 0.0f64;
    let mut q2 = 1.0f64;
    let a1 = 0.25 - xmu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut ok = false;
    for i in 2..=MAXIT {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            ok = true;
            break;
        }
    }
    if !ok {
        return Err(Error::convergence(format!("K CF2 at mu={xmu}, x={x}"), 0.0, 1.0));
    }
    let h = a1 * h;
    // e^-x underflows to 0 for x > ~745; K underflows with it.
    let rkmu = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let rk1 = rkmu * (xmu + x + 0.5 - h) / x;
    Ok((rkmu, rk1))
}
