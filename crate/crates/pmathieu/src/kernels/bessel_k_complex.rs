//! Modified Bessel K of integer order for complex argument in the right
//! half-plane. Same Temme-series / continued-fraction split as the real
//! routine, carried out in complex arithmetic.

use crate::error::{Error, Result};
use crate::kernels::gamma::EULER_GAMMA;
use num_complex::Complex64;

const EPS: f64 = 1e-17;
const MAXIT: usize = 400_000;
const PI: f64 = std::f64::consts::PI;

/// K_n(z) for n in 0..=8 and Re(z) > 0.
///
/// Designed for the conjugate-pair sums, whose arguments satisfy
/// |arg z| <= pi/4; accuracy degrades slowly as arg z approaches pi/2.
/// Underflow to 0 deep in the right half-plane is normal.
pub fn bessel_k_complex(n: u32, z: Complex64) -> Result<Complex64> {
    if n > 8 {
        return Err(Error::domain(format!(
            "bessel_k_complex: order {n} beyond supported 8"
        )));
    }
    if !z.re.is_finite() || !z.im.is_finite() || z.re <= 0.0 {
        return Err(Error::domain(format!(
            "bessel_k_complex: need Re(z) > 0, got {z}"
        )));
    }
    let (mut k0, mut k1) = if z.norm() < 2.0 {
        series_k01(z)?
    } else {
        cf2_k01(z)?
    };
    for m in 1..=n.saturating_sub(1) {
        let k2 = k0 + (2.0 * m as f64 / z) * k1;
        k0 = k1;
        k1 = k2;
    }
    let v = if n == 0 { k0 } else { k1 };
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Overflow(format!(
            "bessel_k_complex({n}, {z}) lost finiteness"
        )));
    }
    Ok(v)
}

/// Ascending series for K_0, K_1 (Temme's recurrence at order 0, which
/// carries the digamma terms implicitly). Converges fast for |z| < 2.
fn series_k01(z: Complex64) -> Result<(Complex64, Complex64)> {
    let x2 = 0.5 * z;
    let mut ff = -EULER_GAMMA - x2.ln();
    let mut p = Complex64::new(0.5, 0.0);
    let mut q = Complex64::new(0.5, 0.0);
    let mut c = Complex64::new(1.0, 0.0);
    let d = x2 * x2;
    let mut sum = ff;
    let mut sum1 = p;
    for i in 1..=MAXIT {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi);
        c *= d / fi;
        p /= fi;
        q /= fi;
        let del = c * ff;
        sum += del;
        let del1 = c * (p - fi * ff);
        sum1 += del1;
        if del.norm() < sum.norm() * EPS {
            return Ok((sum, sum1 * 2.0 / z));
        }
    }
    Err(Error::convergence(format!("complex K series at z={z}"), sum.re, sum.norm()))
}

/// Thompson-Barnett CF2 for K_0, K_1, complex form. Converges for
/// Re(z) > 0; fastest away from the imaginary axis.
fn cf2_k01(z: Complex64) -> Result<(Complex64, Complex64)> {
    let one = Complex64::new(1.0, 0.0);
    let mut b = 2.0 * (one + z);
    let mut d = one / b;
    let mut delh = d;
    let mut h = delh;
    let mut q1 = Complex64::new(0.0, 0.0);
    let mut q2 = one;
    let a1 = 0.25f64;
    let mut q = Complex64::new(a1, 0.0);
    let mut c = a1;
    let mut a = -a1;
    let mut s = one + q * delh;
    for i in 2..=MAXIT {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = one / (b + a * d);
        delh = (b * d - one) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).norm() < EPS {
            let h = a1 * h;
            let k0 = (PI / (2.0 * z)).sqrt() * (-z).exp() / s;
            let k1 = k0 * (z + 0.5 - h) / z;
            return Ok((k0, k1));
        }
    }
    Err(Error::convergence(format!("complex K CF2 at z={z}"), 0.0, 1.0))
}
