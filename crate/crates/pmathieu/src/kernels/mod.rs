//! Scalar special-function kernels everything else is built on: gamma,
//! Riemann zeta, Bessel J (real order), Bessel K (real order and complex
//! argument), and the generalized binomial coefficient.
//!
//! All routines validate their domain and return errors instead of NaN or
//! infinity; underflow to zero is not an error.

mod bessel_j;
mod bessel_k;
mod bessel_k_complex;
mod gamma;
mod zeta;

pub use bessel_j::bessel_j;
pub use bessel_k::bessel_k_real;
pub use bessel_k_complex::bessel_k_complex;
pub use gamma::{gamma_fn, ln_gamma, EULER_GAMMA};
pub use zeta::riemann_zeta;

use crate::error::{Error, Result};

/// Generalized binomial coefficient C(mu + n, n) for real mu, computed as
/// the product of (mu + j)/j for j = 1..n. No gamma-function cancellation,
/// so it stays accurate when mu + n - j crosses negative values.
pub fn gen_binomial(mu: f64, n: u32) -> Result<f64> {
    if !mu.is_finite() {
        return Err(Error::domain(format!("gen_binomial: mu = {mu} not finite")));
    }
    let mut prod = 1.0f64;
    for j in 1..=n {
        prod *= (mu + j as f64) / j as f64;
    }
    if !prod.is_finite() {
        return Err(Error::Overflow(format!(
            "gen_binomial({mu}, {n}) exceeds f64 range"
        )));
    }
    Ok(prod)
}
