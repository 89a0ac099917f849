//! Numerical evaluation of the extended Mathieu series S_{mu,p}(r): the
//! classical series S_mu(r) = sum_{n>=1} 2n / (n^2 + r^2)^{mu+1} with an
//! exponential damping factor e^{-p/t} inserted in its integral kernel
//! (p = 0 recovers the classical series exactly). Several independent
//! representations cross-check each other:
//!
//! - a power series in r^2 whose coefficients are values of an extended
//!   zeta function ([`mathieu::s_series`]),
//! - a semi-infinite Bessel integral ([`mathieu::s_integral`]),
//! - Schlomilch-type sums over Bessel-K kernels, as conjugate-pair sums and
//!   derivative sums ([`schlomilch`]).
//!
//! Every public evaluation returns an [`EvalResult`] carrying a forward
//! error estimate and the work performed, so disagreement between routes is
//! detectable and quantifiable. The [`selfcheck`] module bundles the
//! identity battery the CLI exposes, and [`cli`] implements the `pmathieu`
//! binary (compute, compare, convergence, zeta-p, gl-check, selfcheck).

// Reference constants keep every digit of the oracle values they were frozen
// from, beyond what f64 can hold; the extra digits document the target.
#![allow(clippy::excessive_precision)]

pub mod cli;
pub mod error;
pub mod gl;
pub mod kernels;
pub mod mathieu;
pub mod quad;
pub mod report;
pub mod schlomilch;
pub mod selfcheck;
pub mod types;
pub mod zeta_p;

pub use error::{Error, Result};
pub use types::{EvalResult, MethodKind};

pub use num_complex::Complex64;
